#pragma once

#include "tomobell/portrait.hpp"
#include "tomobell/prob.hpp"
#include "tomobell/quantum.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tomobell {

/// Classical bound plus numerical headroom; a value must exceed this to count
/// as a witness.
inline constexpr double kWitnessThreshold = 2.0 + 1e-9;

/// Fixed sign pattern paired with the (a,b),(a,c),(d,b),(d,c) column order.
inline Eigen::Matrix4d chsh_sign_matrix() {
  Eigen::Matrix4d i4;
  i4 << 1, -1, -1, 1,
        1, -1, -1, 1,
        1, -1, -1, 1,
       -1, 1, 1, -1;
  return i4;
}

struct DirectionQuad {
  Direction a, b, c, d;
};

/// 4x4 stochastic matrix whose columns are (reduced) tomogram 4-vectors at the
/// direction pairs (a,b), (a,c), (d,b), (d,c).
struct ChshMatrix {
  StochasticMatrix matrix;
  DirectionQuad angles;
};

inline ChshMatrix build_chsh_matrix(const DensityMatrix& state,
                                    std::pair<int, int> dims,
                                    const DirectionQuad& q,
                                    const OutcomeSplit& sa,
                                    const OutcomeSplit& sb) {
  Eigen::MatrixXd m(4, 4);
  const std::pair<const Direction&, const Direction&> pairs[4] = {
      {q.a, q.b}, {q.a, q.c}, {q.d, q.b}, {q.d, q.c}};
  for (int j = 0; j < 4; ++j) {
    const auto t =
        bipartite_tomogram(state, pairs[j].first, pairs[j].second, dims);
    m.col(j) = reduce_bipartite(t, sa, sb).probabilities.values();
  }
  return ChshMatrix{StochasticMatrix{std::move(m)}, q};
}

inline ChshMatrix build_chsh_matrix(const DensityMatrix& state,
                                    std::pair<int, int> dims,
                                    const DirectionQuad& q) {
  return build_chsh_matrix(state, dims, q, OutcomeSplit::top(),
                           OutcomeSplit::top());
}

inline double chsh_value(const StochasticMatrix& m) {
  if (m.dim() != 4) throw std::invalid_argument("chsh_value: matrix must be 4x4");
  return std::abs((m.values() * chsh_sign_matrix()).trace());
}

inline double chsh_value(const ChshMatrix& m) { return chsh_value(m.matrix); }

/// Transformed functional |Tr(M I C)| with C = c1 (x) c2 for caller-supplied
/// 2x2 stochastic matrices; c1 = c2 = identity recovers chsh_value.
inline double chsh_value_transformed(const StochasticMatrix& m,
                                     const StochasticMatrix& c1,
                                     const StochasticMatrix& c2) {
  if (m.dim() != 4 || c1.dim() != 2 || c2.dim() != 2)
    throw std::invalid_argument("chsh_value_transformed: bad dimensions");
  Eigen::Matrix4d c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c.block<2, 2>(2 * i, 2 * j) = c1(i, j) * c2.values();
  return std::abs((m.values() * chsh_sign_matrix() * c).trace());
}

/// Analytic functional for the qubit-qutrit pair state, as a function of the
/// four polar angles and the four combined azimuthal phases.
inline double qubit_qutrit_B(double theta_a, double theta_b, double theta_c,
                             double theta_d, double phi_ab, double phi_ac,
                             double phi_db, double phi_dc) {
  using std::sin;
  const double sb2 = sin(theta_b) * sin(theta_b);
  const double sc2 = sin(theta_c) * sin(theta_c);
  return std::abs(sin(theta_a) * (sb2 * sin(phi_ab) + sc2 * sin(phi_ac)) +
                  sin(theta_d) * (sb2 * sin(phi_db) - sc2 * sin(phi_dc)));
}

/// Analytic functional for the two-qutrit pair state, evaluated literally with
/// combined phases phi_xy = phi_x + 2*phi_y. Known to disagree with the
/// tomogram pipeline (see tests); kept as the published shortcut.
inline double two_qutrit_B(double theta_a, double theta_b, double theta_c,
                           double theta_d, double phi_a, double phi_b,
                           double phi_c, double phi_d) {
  using std::cos, std::sin;
  const double fab = phi_a + 2 * phi_b, fac = phi_a + 2 * phi_c;
  const double fdb = phi_d + 2 * phi_b, fdc = phi_d + 2 * phi_c;
  const double gb = (cos(theta_b) + 1) * (cos(theta_b) + 1) - 2;
  const double gc = (cos(theta_c) + 1) * (cos(theta_c) + 1) - 2;
  const double sb2 = sin(theta_b) * sin(theta_b);
  const double sc2 = sin(theta_c) * sin(theta_c);
  return 0.5 * std::abs(gb * (cos(theta_a) + cos(theta_d)) +
                        gc * (cos(theta_a) - cos(theta_d)) -
                        sb2 * (sin(fab) * sin(theta_a) + sin(fdb) * sin(theta_d)) -
                        sc2 * (sin(fac) * sin(theta_a) + sin(fdc) * sin(theta_d)));
}

enum class Verdict { kConsistentWithSeparable, kEntanglementWitnessed };

inline const char* to_string(Verdict v) {
  return v == Verdict::kEntanglementWitnessed ? "entanglement-witnessed"
                                              : "consistent-with-separable";
}

struct BellReport {
  double value = 0.0;
  DirectionQuad angles;
  Verdict verdict = Verdict::kConsistentWithSeparable;
  ChshMatrix matrix;
  // Set when value lies in (2, 2 + 1e-9]: above the classical bound but within
  // round-off headroom, reported as consistent-with-separable.
  bool near_threshold = false;
};

inline BellReport evaluate_chsh(const DensityMatrix& state,
                                std::pair<int, int> dims, const DirectionQuad& q,
                                const OutcomeSplit& sa, const OutcomeSplit& sb) {
  ChshMatrix m = build_chsh_matrix(state, dims, q, sa, sb);
  const double v = chsh_value(m);
  BellReport r{v, q,
               v > kWitnessThreshold ? Verdict::kEntanglementWitnessed
                                     : Verdict::kConsistentWithSeparable,
               std::move(m), v > 2.0 && v <= kWitnessThreshold};
  return r;
}

inline BellReport evaluate_chsh(const DensityMatrix& state,
                                std::pair<int, int> dims,
                                const DirectionQuad& q) {
  return evaluate_chsh(state, dims, q, OutcomeSplit::top(), OutcomeSplit::top());
}

/// Verdict for the product of two tomogram-derived matrices; a violating
/// product also witnesses entanglement.
struct ProductCheck {
  std::size_t i = 0, j = 0;
  double value = 0.0;
  Verdict verdict = Verdict::kConsistentWithSeparable;
};

struct SemigroupCheckReport {
  std::vector<BellReport> singles;
  std::vector<ProductCheck> products;
  Verdict overall = Verdict::kConsistentWithSeparable;
};

/// Evaluates the functional on each quadruple's matrix and on every ordered
/// pairwise product of those matrices.
inline SemigroupCheckReport semigroup_separability_check(
    const DensityMatrix& state, std::pair<int, int> dims,
    const std::vector<DirectionQuad>& quads,
    const OutcomeSplit& sa = OutcomeSplit::top(),
    const OutcomeSplit& sb = OutcomeSplit::top()) {
  if (quads.size() < 2)
    throw std::invalid_argument(
        "semigroup_separability_check: need at least 2 quadruples");
  SemigroupCheckReport report;
  for (const auto& q : quads)
    report.singles.push_back(evaluate_chsh(state, dims, q, sa, sb));
  for (std::size_t i = 0; i < quads.size(); ++i)
    for (std::size_t j = 0; j < quads.size(); ++j) {
      if (i == j) continue;
      const double v = chsh_value(compose(report.singles[i].matrix.matrix,
                                          report.singles[j].matrix.matrix));
      report.products.push_back(
          {i, j, v,
           v > kWitnessThreshold ? Verdict::kEntanglementWitnessed
                                 : Verdict::kConsistentWithSeparable});
    }
  for (const auto& s : report.singles)
    if (s.verdict == Verdict::kEntanglementWitnessed)
      report.overall = Verdict::kEntanglementWitnessed;
  for (const auto& p : report.products)
    if (p.verdict == Verdict::kEntanglementWitnessed)
      report.overall = Verdict::kEntanglementWitnessed;
  return report;
}

}  // namespace tomobell
