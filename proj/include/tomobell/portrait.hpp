#pragma once

#include "tomobell/prob.hpp"
#include "tomobell/quantum.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace tomobell {

/// The three two-outcome distributions obtained from a three-outcome one.
struct PortraitTriple {
  std::array<ProbVector, 3> pairs;
};

/// (p1, p2+p3), (p1+p2, p3), (p1+p3, p2). Pairs 0 and 1 suffice to invert.
inline PortraitTriple qutrit_portraits(const ProbVector& p) {
  if (p.size() != 3)
    throw std::invalid_argument("qutrit_portraits: need 3 entries");
  return PortraitTriple{{ProbVector{{p[0], p[1] + p[2]}},
                         ProbVector{{p[0] + p[1], p[2]}},
                         ProbVector{{p[0] + p[2], p[1]}}}};
}

/// Reconstructs (p1, p2, p3) from portrait pairs 0 and 1.
inline ProbVector portrait_invert(const ProbVector& p1, const ProbVector& p2) {
  if (p1.size() != 2 || p2.size() != 2)
    throw std::invalid_argument("portrait_invert: need 2-entry pairs");
  if (p2[0] < p1[0] - kSimplexTol)
    throw std::invalid_argument(
        "portrait_invert: inconsistent pair (negative middle entry)");
  return ProbVector{{p1[0], p2[0] - p1[0], p2[1]}};
}

/// Which outcome indices form the first bin of a two-bin coarse-graining.
struct OutcomeSplit {
  std::vector<int> first_bin{0};

  static OutcomeSplit top() { return {}; }

  bool in_first(int idx) const {
    for (int k : first_bin)
      if (k == idx) return true;
    return false;
  }
};

/// All admissible splits for a subsystem: the single top-vs-rest split, except
/// for three outcomes where all three portrait pairs are available.
inline std::vector<OutcomeSplit> portrait_splits(int dim) {
  if (dim == 3) return {OutcomeSplit{{0}}, OutcomeSplit{{0, 1}}, OutcomeSplit{{0, 2}}};
  return {OutcomeSplit{{0}}};
}

/// Four-outcome coarse-graining of a bipartite tomogram.
struct ReducedTomogram {
  ProbVector probabilities;  // (bin0,bin0), (bin0,bin1), (bin1,bin0), (bin1,bin1)
  Direction d1, d2;
};

inline ReducedTomogram reduce_bipartite(const Tomogram& t, const OutcomeSplit& sa,
                                        const OutcomeSplit& sb) {
  const int da = t.outcome_dims.at(0), db = t.outcome_dims.at(1);
  if (da < 2 || db < 2)
    throw std::invalid_argument("reduce_bipartite: subsystem dims must be >= 2");
  for (const auto* s : {&sa, &sb}) {
    if (s->first_bin.empty())
      throw std::invalid_argument("reduce_bipartite: empty bin");
  }
  Eigen::VectorXd r = Eigen::VectorXd::Zero(4);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) {
      const int bin = (sa.in_first(a) ? 0 : 2) + (sb.in_first(b) ? 0 : 1);
      r[bin] += t.probabilities[a * db + b];
    }
  return ReducedTomogram{ProbVector{std::move(r)}, t.directions.at(0),
                         t.directions.at(1)};
}

/// Default reduction: highest projection against the rest on both sides.
inline ReducedTomogram reduce_bipartite(const Tomogram& t) {
  return reduce_bipartite(t, OutcomeSplit::top(), OutcomeSplit::top());
}

}  // namespace tomobell
