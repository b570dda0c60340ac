#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sizegen {

enum class SelectionKind { kmeanspp, softmax, gonzalez, uniform };

// Selection criterion f(z) used when sampling the next center at distance z
// from the current center set. gonzalez is an indicator of the farthest point
// and is evaluated by the callers that know the candidate pool; weight() only
// covers the pointwise kinds.
struct SelectionFn {
  SelectionKind kind = SelectionKind::kmeanspp;
  double beta = 1.0;  // softmax temperature
  double R = 1.0;     // softmax normalizer, the instance diameter

  double weight(double z) const {
    switch (kind) {
      case SelectionKind::kmeanspp:
        return z * z;
      case SelectionKind::softmax:
        return std::exp(beta * z / R);
      case SelectionKind::uniform:
        return 1.0;
      case SelectionKind::gonzalez:
        throw std::logic_error("gonzalez weight is an indicator; handled by callers");
    }
    throw std::logic_error("unreachable");
  }

  static SelectionFn kmeanspp() { return {SelectionKind::kmeanspp, 0.0, 1.0}; }
  static SelectionFn uniform() { return {SelectionKind::uniform, 0.0, 1.0}; }
  static SelectionFn gonzalez() { return {SelectionKind::gonzalez, 0.0, 1.0}; }
  static SelectionFn softmax(double beta, double R) {
    if (beta <= 0.0 || R <= 0.0) throw std::invalid_argument("softmax needs beta > 0 and R > 0");
    return {SelectionKind::softmax, beta, R};
  }
};

inline SelectionKind parse_selection_kind(const std::string& s) {
  if (s == "kmeanspp" || s == "kmeans++") return SelectionKind::kmeanspp;
  if (s == "softmax") return SelectionKind::softmax;
  if (s == "gonzalez") return SelectionKind::gonzalez;
  if (s == "uniform") return SelectionKind::uniform;
  throw std::invalid_argument("unknown selection function: " + s);
}

}  // namespace sizegen
