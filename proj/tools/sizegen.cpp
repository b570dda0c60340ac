// Command-line runner: instance generation, subsample experiments for
// clustering and max-cut, relaxation solves, adaptive algorithm selection and
// empirical-risk selection. Every run is deterministic given --seed; CSV
// output is byte-identical across repeats apart from the wall_time_s column.

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sizegen/sizegen.hpp"

namespace sg = sizegen;

namespace {

struct Row {
  sg::Index trial;
  sg::Index size;
  std::string algorithm;
  std::string metric;
  double value;
  std::uint64_t qd = 0, qgt = 0;
  double wall = 0.0;
  std::string extra;  // appended verbatim when a task declares extra columns
};

class CsvSink {
 public:
  CsvSink(const std::string& path, const std::string& extra_header = "") {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open for writing: " + path);
    }
    out() << "trial,size,algorithm,metric,value,queries_distance,queries_ground_truth,wall_time_s";
    if (!extra_header.empty()) out() << ',' << extra_header;
    out() << '\n';
  }

  void write(const Row& r) {
    out() << r.trial << ',' << r.size << ',' << r.algorithm << ',' << r.metric << ','
          << sg::format_double(r.value) << ',' << r.qd << ',' << r.qgt << ','
          << sg::format_double(r.wall);
    if (!r.extra.empty()) out() << ',' << r.extra;
    out() << '\n';
  }

 private:
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }
  std::ofstream file_;
};

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--param expects key=value: " + kv);
    out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return out;
}

double param_or(const std::map<std::string, double>& p, const std::string& key, double dflt) {
  const auto it = p.find(key);
  return it == p.end() ? dflt : it->second;
}

bool is_point_family(const std::string& f) {
  return f == "gm" || f == "circles" || f == "bridge" || f == "outlier";
}

sg::LabeledInstance make_labeled(const std::string& family, sg::Index n,
                                 const std::map<std::string, double>& p, sg::RandomStream& rng) {
  if (family == "gm") return sg::gen_gaussian_mixture(n, rng);
  if (family == "circles") return sg::gen_noisy_circles(n, rng);
  if (family == "bridge")
    return sg::gen_bridge_instance(n, param_or(p, "alpha", 1.0), param_or(p, "beta", 1.5));
  if (family == "outlier") return sg::gen_outlier_instance(n, param_or(p, "alpha", 0.25));
  throw std::invalid_argument("unknown point family: " + family);
}

sg::Graph make_graph(const std::string& family, sg::Index n,
                     const std::map<std::string, double>& p, sg::RandomStream& rng) {
  sg::GraphSpec spec;
  spec.family = sg::parse_graph_family(family);
  spec.n = n;
  spec.p = param_or(p, "p", 0.5);
  spec.radius = param_or(p, "radius", 0.5);
  spec.inter = static_cast<sg::Index>(param_or(p, "inter", 1));
  spec.m = static_cast<sg::Index>(param_or(p, "m", 1));
  return sg::gen_graph(spec, rng);
}

template <typename Fn>
void run_trials(sg::Index trials, unsigned jobs, Fn&& fn) {
  if (jobs <= 1) {
    for (sg::Index t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<sg::Index> next{0};
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs && j < trials; ++j)
    pool.emplace_back([&] {
      for (sg::Index t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) fn(t);
    });
  for (auto& th : pool) th.join();
}

std::vector<sg::Index> parse_sizes(const std::vector<std::string>& sizes,
                                   const std::vector<std::string>& fractions, sg::Index n) {
  std::vector<sg::Index> out;
  for (const auto& s : sizes) out.push_back(static_cast<sg::Index>(std::stoul(s)));
  for (const auto& f : fractions)
    out.push_back(static_cast<sg::Index>(std::lround(std::stod(f) * n)));
  for (sg::Index s : out)
    if (s < 1 || s > n) throw std::invalid_argument("subsample size outside [1, n]");
  return out;
}

// --- task: gen -------------------------------------------------------------

struct GenArgs {
  std::string family;
  sg::Index n = 50;
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& a) {
  const auto params = parse_params(a.params);
  sg::RandomStream rng(a.seed, 0);
  if (is_point_family(a.family)) {
    const auto inst = make_labeled(a.family, a.n, params, rng);
    if (a.out.empty())
      sg::write_points_csv(std::cout, inst.x, &inst.labels);
    else
      sg::write_points_csv(a.out, inst.x, &inst.labels);
  } else {
    const auto g = make_graph(a.family, a.n, params, rng);
    if (a.out.empty())
      sg::write_edge_list(std::cout, g);
    else
      sg::write_edge_list(a.out, g);
  }
  return 0;
}

// --- task: cluster -----------------------------------------------------------

struct ClusterArgs {
  std::string points_file;
  std::string family = "gm";
  sg::Index n = 500;
  std::vector<std::string> params;
  sg::Index k = 2;
  std::vector<std::string> algos{"sl", "kmeanspp", "softmax"};
  std::vector<std::string> sizes;
  std::vector<std::string> fractions;
  sg::Index trials = 100;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  double beta = 1.0;
  double sample_constant = 1.0;
  std::string out;
  bool no_full = false;
};

int run_cluster(const ClusterArgs& a) {
  sg::RandomStream root(a.seed, 0);
  sg::LabeledInstance inst;
  if (!a.points_file.empty()) {
    auto f = sg::read_points_csv(a.points_file);
    if (!f.labels) throw std::runtime_error("points file has no label column");
    inst = {std::move(f.instance), std::move(*f.labels), f.k};
  } else {
    sg::RandomStream gen_rng = root.split(0xDA7A);
    inst = make_labeled(a.family, a.n, parse_params(a.params), gen_rng);
  }
  const sg::Index n = inst.x.size();
  auto sizes = parse_sizes(a.sizes, a.fractions, n);
  if (sizes.empty()) sizes = {n / 8, n / 4, n / 2, n};

  sg::ClusterEstimateOptions opts;
  opts.softmax_beta = a.beta;
  opts.sample_constant = a.sample_constant;

  CsvSink sink(a.out);
  for (std::size_t ai = 0; ai < a.algos.size(); ++ai) {
    const sg::ClusterAlgo algo = sg::parse_cluster_algo(a.algos[ai]);
    const std::string name = sg::cluster_algo_name(algo);
    for (std::size_t si = 0; si < sizes.size(); ++si) {
      const sg::Index m = sizes[si];
      std::vector<Row> rows(a.trials);
      run_trials(a.trials, a.jobs, [&](sg::Index t) {
        sg::RandomStream trial_rng = root.split(1 + ai).split(si).split(t);
        const auto watch_start = std::chrono::steady_clock::now();
        const auto r =
            sg::clustering_proxy_trial(inst.x, inst.labels, inst.k, algo, a.k, m, trial_rng, opts);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - watch_start).count();
        rows[t] = {t, m, name, "proxy_accuracy", r.value, r.queries_distance,
                   r.queries_ground_truth, wall};
      });
      for (const auto& r : rows) sink.write(r);
    }
    if (!a.no_full) {
      std::vector<Row> rows(a.trials);
      run_trials(a.trials, a.jobs, [&](sg::Index t) {
        sg::RandomStream trial_rng = root.split(1 + ai).split(0xF0LL).split(t);
        const auto watch_start = std::chrono::steady_clock::now();
        const auto r =
            sg::clustering_full_trial(inst.x, inst.labels, inst.k, algo, a.k, trial_rng, opts);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - watch_start).count();
        rows[t] = {t, n, name, "full_accuracy", r.value, r.queries_distance,
                   r.queries_ground_truth, wall};
      });
      for (const auto& r : rows) sink.write(r);
    }
  }
  return 0;
}

// --- task: maxcut ------------------------------------------------------------

struct MaxcutArgs {
  std::string graph_file;
  std::string family = "er";
  sg::Index n = 50;
  std::vector<std::string> params;
  std::vector<std::string> algos{"greedy", "gw"};
  std::vector<std::string> sizes;
  std::vector<std::string> fractions;
  sg::Index trials = 50;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  double tol = 1e-7;
  sg::Index max_sweeps = 10000;
  std::string out;
  bool no_full = false;
};

int run_maxcut(const MaxcutArgs& a) {
  sg::RandomStream root(a.seed, 0);
  sg::Graph g;
  if (!a.graph_file.empty()) {
    g = sg::read_edge_list(a.graph_file);
  } else {
    sg::RandomStream gen_rng = root.split(0xDA7A);
    g = make_graph(a.family, a.n, parse_params(a.params), gen_rng);
  }
  auto sizes = parse_sizes(a.sizes, a.fractions, g.n);
  if (sizes.empty()) sizes = {g.n / 4, g.n / 2, (3 * g.n) / 4, g.n};
  const sg::SdpSolveOptions sopts{a.tol, a.max_sweeps};

  std::vector<std::pair<std::string, sg::GraphAlgo>> algos;
  for (const auto& name : a.algos) {
    if (name == "greedy")
      algos.emplace_back(name, sg::make_greedy_algo());
    else if (name == "gw")
      algos.emplace_back(name, sg::make_gw_algo(sopts));
    else
      throw std::invalid_argument("unknown max-cut algorithm: " + name);
  }

  CsvSink sink(a.out);
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const sg::Index t_size = sizes[si];
    std::vector<std::vector<Row>> rows(a.trials);
    run_trials(a.trials, a.jobs, [&](sg::Index t) {
      sg::RandomStream draw_rng = root.split(1 + si).split(t);
      const auto sub =
          sg::induced_subgraph(g, sg::sample_without_replacement(g.n, t_size, draw_rng));
      for (std::size_t ai = 0; ai < algos.size(); ++ai) {
        sg::RandomStream algo_rng = draw_rng.split(ai + 1);
        const auto watch_start = std::chrono::steady_clock::now();
        const double value = algos[ai].second(sub.graph, algo_rng);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - watch_start).count();
        rows[t].push_back({t, t_size, algos[ai].first, "density",
                           value / (double(t_size) * t_size), 0, 0, wall});
      }
    });
    for (const auto& per_trial : rows)
      for (const auto& r : per_trial) sink.write(r);
  }
  if (!a.no_full) {
    std::vector<std::vector<Row>> rows(a.trials);
    run_trials(a.trials, a.jobs, [&](sg::Index t) {
      for (std::size_t ai = 0; ai < algos.size(); ++ai) {
        sg::RandomStream algo_rng = root.split(0xF0LL).split(t).split(ai + 1);
        const auto watch_start = std::chrono::steady_clock::now();
        const double value = algos[ai].second(g, algo_rng);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - watch_start).count();
        rows[t].push_back({t, g.n, algos[ai].first, "full_density",
                           value / (double(g.n) * g.n), 0, 0, wall});
      }
    });
    for (const auto& per_trial : rows)
      for (const auto& r : per_trial) sink.write(r);
  }
  return 0;
}

// --- task: sdp ---------------------------------------------------------------

struct SdpArgs {
  std::string graph_file;
  double tol = 1e-7;
  sg::Index max_sweeps = 10000;
  std::uint64_t seed = 0;
};

int run_sdp(const SdpArgs& a) {
  const sg::Graph g = sg::read_edge_list(a.graph_file);
  sg::RandomStream rng(a.seed, 0);
  const auto sol = sg::sdp_solve(g, a.tol, a.max_sweeps, rng);
  std::cout << "primal=" << sg::format_double(sol.primal_value)
            << " dual=" << sg::format_double(sol.dual_value)
            << " gap=" << sg::format_double(sol.gap)
            << " converged=" << (sol.converged ? "true" : "false") << " sweeps=" << sol.sweeps
            << '\n';
  return 0;
}

// --- task: adaptive ----------------------------------------------------------

struct AdaptiveArgs {
  std::string graph_file;
  std::string family = "er";
  sg::Index n = 100;
  std::vector<std::string> params;
  std::vector<std::string> sizes{"2", "4", "8", "16", "32", "64"};
  sg::Index trials = 10;
  sg::Index window = 2;
  std::uint64_t seed = 0;
  double tol = 1e-5;
  sg::Index max_sweeps = 4000;
  std::string out;
};

int run_adaptive(const AdaptiveArgs& a) {
  sg::RandomStream root(a.seed, 0);
  sg::Graph g;
  if (!a.graph_file.empty()) {
    g = sg::read_edge_list(a.graph_file);
  } else {
    sg::RandomStream gen_rng = root.split(0xDA7A);
    g = make_graph(a.family, a.n, parse_params(a.params), gen_rng);
  }
  const auto sizes = parse_sizes(a.sizes, {}, g.n);
  std::vector<std::pair<std::string, sg::GraphAlgo>> algos{
      {"greedy", sg::make_greedy_algo()},
      {"gw", sg::make_gw_algo({a.tol, a.max_sweeps})},
  };
  sg::RandomStream run_rng = root.split(1);
  const auto res = sg::adaptive_select(g, algos, sizes, a.trials, a.window, run_rng);

  const std::string unstable = res.stable ? "false" : "true";
  CsvSink sink(a.out, "unstable");
  for (const auto& row : res.table) {
    for (std::size_t c = 0; c < algos.size(); ++c) {
      Row r{0, row.size, algos[c].first, "mean_value", row.mean[c], 0, 0, 0.0, unstable};
      sink.write(r);
      r.metric = "stderr";
      r.value = row.se[c];
      sink.write(r);
    }
  }
  const std::string winner = res.winner < 0 ? "both" : algos[res.winner].first;
  sink.write({0, res.stop_size, winner, "selected", 1.0, 0, 0, 0.0, unstable});
  std::cerr << "selected=" << winner << " stable=" << (res.stable ? "true" : "false")
            << " stop_size=" << res.stop_size << '\n';
  return 0;
}

// --- task: select ------------------------------------------------------------

struct SelectArgs {
  std::string values_file;
};

int run_select(const SelectArgs& a) {
  std::ifstream in(a.values_file);
  if (!in) throw std::runtime_error("cannot open: " + a.values_file);
  std::vector<std::vector<double>> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    values.push_back(std::move(row));
  }
  try {
    std::cout << sg::erm_select(values) << '\n';
  } catch (const std::invalid_argument& e) {
    // malformed data file, not a usage problem
    throw std::runtime_error(e.what());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subsample-based performance estimation for clustering and max-cut"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config with one section per task");

  GenArgs gen;
  auto* cgen = app.add_subcommand("gen", "generate an instance and write it to disk");
  cgen->add_option("family", gen.family,
                   "gm|circles|bridge|outlier|er|geometric|barbell|ba|complete|cycle|path")
      ->required();
  cgen->add_option("--n", gen.n, "instance size");
  cgen->add_option("--param", gen.params, "family parameter key=value (repeatable)");
  cgen->add_option("--seed", gen.seed, "rng seed");
  cgen->add_option("--out", gen.out, "output path (stdout when omitted)");

  ClusterArgs cl;
  auto* ccl = app.add_subcommand("cluster", "subsample accuracy curves for clustering algorithms");
  ccl->add_option("--points", cl.points_file, "labeled points csv");
  ccl->add_option("--family", cl.family, "gm|circles|bridge|outlier");
  ccl->add_option("--n", cl.n, "generated instance size");
  ccl->add_option("--param", cl.params, "generator parameter key=value");
  ccl->add_option("--k", cl.k, "number of clusters");
  ccl->add_option("--algos", cl.algos, "sl|kmeanspp|softmax|gonzalez")->delimiter(',');
  ccl->add_option("--sizes", cl.sizes, "subsample sizes m")->delimiter(',');
  ccl->add_option("--fractions", cl.fractions, "subsample fractions of n")->delimiter(',');
  ccl->add_option("--trials", cl.trials, "trials per size");
  ccl->add_option("--seed", cl.seed, "rng seed");
  ccl->add_option("--jobs", cl.jobs, "worker threads");
  ccl->add_option("--beta", cl.beta, "softmax temperature");
  ccl->add_option("--sample-constant", cl.sample_constant, "constant in the m = O(zeta log k/eps) schedule");
  ccl->add_option("--out", cl.out, "output csv (stdout when omitted)");
  ccl->add_flag("--no-full", cl.no_full, "skip full-instance reference rows");

  MaxcutArgs mc;
  auto* cmc = app.add_subcommand("maxcut", "subsample density curves for max-cut algorithms");
  cmc->add_option("--graph", mc.graph_file, "edge list file");
  cmc->add_option("--family", mc.family, "er|geometric|barbell|ba|complete|cycle|path");
  cmc->add_option("--n", mc.n, "generated graph size");
  cmc->add_option("--param", mc.params, "generator parameter key=value");
  cmc->add_option("--algos", mc.algos, "greedy|gw")->delimiter(',');
  cmc->add_option("--sizes", mc.sizes, "subsample vertex counts")->delimiter(',');
  cmc->add_option("--fractions", mc.fractions, "subsample fractions of n")->delimiter(',');
  cmc->add_option("--trials", mc.trials, "trials per size");
  cmc->add_option("--seed", mc.seed, "rng seed");
  cmc->add_option("--jobs", mc.jobs, "worker threads");
  cmc->add_option("--tol", mc.tol, "solver tolerance");
  cmc->add_option("--max-sweeps", mc.max_sweeps, "solver sweep cap");
  cmc->add_option("--out", mc.out, "output csv (stdout when omitted)");
  cmc->add_flag("--no-full", mc.no_full, "skip full-graph reference rows");

  SdpArgs sd;
  auto* csd = app.add_subcommand("sdp", "solve the max-cut relaxation with a dual certificate");
  csd->add_option("--graph", sd.graph_file, "edge list file")->required();
  csd->add_option("--tol", sd.tol, "relative objective tolerance");
  csd->add_option("--max-sweeps", sd.max_sweeps, "sweep cap");
  csd->add_option("--seed", sd.seed, "rng seed");

  AdaptiveArgs ad;
  auto* cad = app.add_subcommand("adaptive", "doubling-schedule algorithm selection");
  cad->add_option("--graph", ad.graph_file, "edge list file");
  cad->add_option("--family", ad.family, "graph family");
  cad->add_option("--n", ad.n, "generated graph size");
  cad->add_option("--param", ad.params, "generator parameter key=value");
  cad->add_option("--sizes", ad.sizes, "subset size schedule")->delimiter(',');
  cad->add_option("--trials", ad.trials, "trials per size");
  cad->add_option("--window", ad.window, "consecutive sizes required for stability");
  cad->add_option("--seed", ad.seed, "rng seed");
  cad->add_option("--tol", ad.tol, "solver tolerance");
  cad->add_option("--max-sweeps", ad.max_sweeps, "solver sweep cap");
  cad->add_option("--out", ad.out, "output csv (stdout when omitted)");

  SelectArgs se;
  auto* cse = app.add_subcommand("select", "empirical-risk pick over a value matrix");
  cse->add_option("--values", se.values_file, "csv matrix, one row per algorithm")->required();

  // let --config (and any global flag) appear after the subcommand name
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cgen->parsed()) return run_gen(gen);
    if (ccl->parsed()) return run_cluster(cl);
    if (cmc->parsed()) return run_maxcut(mc);
    if (csd->parsed()) return run_sdp(sd);
    if (cad->parsed()) return run_adaptive(ad);
    if (cse->parsed()) return run_select(se);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
