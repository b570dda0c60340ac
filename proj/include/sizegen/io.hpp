#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sizegen/graph.hpp"
#include "sizegen/instance.hpp"

namespace sizegen {

// Floats are printed with 9 significant digits everywhere so that identical
// runs produce byte-identical files.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

struct PointsFile {
  ClusteringInstance instance;
  std::optional<std::vector<Index>> labels;
  Index k = 0;  // max label + 1 when labels are present
};

// CSV with header x0,...,x{d-1}[,label]; label column is an integer >= 0.
inline void write_points_csv(std::ostream& out, const ClusteringInstance& x,
                             const std::vector<Index>* labels = nullptr) {
  for (Index c = 0; c < x.dimension(); ++c) {
    if (c) out << ',';
    out << 'x' << c;
  }
  if (labels) out << ",label";
  out << '\n';
  for (Index i = 0; i < x.size(); ++i) {
    auto p = x.point(i);
    for (Index c = 0; c < x.dimension(); ++c) {
      if (c) out << ',';
      out << format_double(p[c]);
    }
    if (labels) out << ',' << (*labels)[i];
    out << '\n';
  }
}

inline void write_points_csv(const std::string& path, const ClusteringInstance& x,
                             const std::vector<Index>* labels = nullptr) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_points_csv(out, x, labels);
}

inline PointsFile read_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("points csv: empty file");
  bool has_label = line.size() >= 5 && line.substr(line.size() - 5) == "label";
  Index d = 0;
  for (char ch : line)
    if (ch == ',') ++d;
  d = has_label ? d : d + 1;
  if (d == 0) throw std::runtime_error("points csv: no coordinate columns");

  std::vector<double> coords;
  std::vector<Index> labels;
  Index n = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    for (Index c = 0; c < d; ++c) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("points csv: short row");
      coords.push_back(std::stod(cell));
    }
    if (has_label) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("points csv: missing label");
      labels.push_back(static_cast<Index>(std::stoul(cell)));
    }
    ++n;
  }
  PointsFile f{ClusteringInstance(std::move(coords), n, d), std::nullopt, 0};
  if (has_label) {
    Index k = 0;
    for (Index l : labels) k = std::max(k, l + 1);
    f.labels = std::move(labels);
    f.k = k;
  }
  return f;
}

inline PointsFile read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_points_csv(in);
}

// Whitespace-separated "u v w" lines, 0-indexed; "u v" alone means weight 1.
// Lines starting with '#' are comments; we emit "# n <count>" so isolated
// trailing vertices survive a round trip, and honor it when reading.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# n " << g.n << '\n';
  for (const auto& e : g.edges)
    out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
}

inline void write_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_edge_list(out, g);
}

inline Graph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  Index n = 0;
  bool n_from_header = false;
  std::string line;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (tok[0] == '#') {
      std::string key;
      unsigned long long declared;
      if (ss >> key >> declared && key == "n") {
        n = static_cast<Index>(declared);
        n_from_header = true;
      }
      continue;
    }
    Edge e;
    e.u = static_cast<Index>(std::stoul(tok));
    if (!(ss >> e.v)) throw std::runtime_error("edge list: missing endpoint");
    if (!(ss >> e.w)) e.w = 1.0;
    if (!n_from_header) n = std::max(n, std::max(e.u, e.v) + 1);
    edges.push_back(e);
  }
  Graph g(n);
  for (const auto& e : edges) g.add_edge(e.u, e.v, e.w);
  return g;
}

inline Graph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_edge_list(in);
}

}  // namespace sizegen
