#pragma once

#include "tomobell/prob.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tomobell {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdFloor = -1e-10;

/// Measurement axis on the sphere, (theta, phi) in radians. psi is carried for
/// the Euler-angle parameterization but never affects a tomogram.
struct Direction {
  double theta = 0.0;
  double phi = 0.0;
  double psi = 0.0;

  Eigen::Vector3d unit() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
  }
};

/// Hermitian, unit-trace, positive-semidefinite complex matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd entries) : rho_(std::move(entries)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0)
      throw std::invalid_argument("DensityMatrix: must be square");
    if (!rho_.isApprox(rho_.adjoint(), 0) &&
        (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
      throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > kHermitianTol ||
        std::abs(rho_.trace().imag()) > kHermitianTol)
      throw std::invalid_argument("DensityMatrix: trace not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kPsdFloor)
      throw std::invalid_argument("DensityMatrix: eigenvalue below tolerance");
  }

  /// Pure state |psi><psi| from a normalized amplitude vector.
  static DensityMatrix pure(const Eigen::VectorXcd& psi) {
    const double n = psi.norm();
    if (std::abs(n - 1.0) > 1e-9)
      throw std::invalid_argument("DensityMatrix: amplitudes not normalized");
    return DensityMatrix{psi * psi.adjoint() / (n * n)};
  }

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Eigen::MatrixXcd& values() const { return rho_; }

 private:
  Eigen::MatrixXcd rho_;
};

/// Euler-angle 2x2 unitary; the standard convention for two-qubit tomograms.
inline Eigen::Matrix2cd qubit_unitary(const Direction& d) {
  using std::cos, std::sin;
  const std::complex<double> i(0.0, 1.0);
  const double c = cos(d.theta / 2), s = sin(d.theta / 2);
  Eigen::Matrix2cd u;
  u << c * std::exp(i * (d.phi + d.psi) / 2.0),
       s * std::exp(i * (d.phi - d.psi) / 2.0),
      -s * std::exp(-i * (d.phi - d.psi) / 2.0),
       c * std::exp(-i * (d.phi + d.psi) / 2.0);
  return u;
}

/// 2x2 rotation in the phase convention shared with qutrit_unitary below;
/// equals qubit_unitary at phi + pi/2 up to column phases. Used whenever a
/// qubit is measured alongside a qutrit.
inline Eigen::Matrix2cd qubit_axis_unitary(const Direction& d) {
  const std::complex<double> i(0.0, 1.0);
  const double c = std::cos(d.theta / 2), s = std::sin(d.theta / 2);
  Eigen::Matrix2cd u;
  u << std::exp(i * d.phi / 2.0) * c, i * std::exp(i * d.phi / 2.0) * s,
       i * std::exp(-i * d.phi / 2.0) * s, std::exp(-i * d.phi / 2.0) * c;
  return u;
}

/// 3x3 rotation for spin-1 measurements (psi unused).
inline Eigen::Matrix3cd qutrit_unitary(const Direction& d) {
  const std::complex<double> i(0.0, 1.0);
  const double c2 = std::cos(d.theta / 2) * std::cos(d.theta / 2);
  const double s2 = std::sin(d.theta / 2) * std::sin(d.theta / 2);
  const double t = std::sin(d.theta) / std::numbers::sqrt2;
  const std::complex<double> e = std::exp(i * d.phi);
  Eigen::Matrix3cd u;
  u << e * c2, i * e * t, -e * s2,
       i * t, std::cos(d.theta), i * t,
       -std::conj(e) * s2, i * std::conj(e) * t, std::conj(e) * c2;
  return u;
}

/// Diagonal of U^dag rho U as a probability vector.
inline ProbVector tomogram(const DensityMatrix& rho, const Eigen::MatrixXcd& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim())
    throw std::invalid_argument("tomogram: dimension mismatch");
  if (!(u.adjoint() * u).isApprox(
          Eigen::MatrixXcd::Identity(u.rows(), u.cols()), 1e-10))
    throw std::invalid_argument("tomogram: matrix not unitary");
  const Eigen::MatrixXcd rotated = u.adjoint() * rho.values() * u;
  Eigen::VectorXd diag(rho.dim());
  for (int m = 0; m < rho.dim(); ++m) {
    if (std::abs(rotated(m, m).imag()) > kHermitianTol)
      throw std::invalid_argument("tomogram: diagonal not real");
    diag[m] = rotated(m, m).real();
  }
  return ProbVector{std::move(diag)};
}

/// Joint spin tomogram of a bipartite state at a pair of directions.
struct Tomogram {
  std::vector<int> outcome_dims;
  std::vector<Direction> directions;
  ProbVector probabilities;

  /// Marginal distribution of subsystem 0 or 1.
  ProbVector marginal(int subsystem) const {
    const int da = outcome_dims.at(0), db = outcome_dims.at(1);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(subsystem == 0 ? da : db);
    for (int a = 0; a < da; ++a)
      for (int b = 0; b < db; ++b)
        out[subsystem == 0 ? a : b] += probabilities[a * db + b];
    return ProbVector{std::move(out)};
  }
};

namespace detail {
inline Eigen::MatrixXcd measurement_unitary(int dim, const Direction& d,
                                            bool two_qubit_context) {
  switch (dim) {
    case 2:
      return two_qubit_context ? Eigen::MatrixXcd(qubit_unitary(d))
                               : Eigen::MatrixXcd(qubit_axis_unitary(d));
    case 3:
      return qutrit_unitary(d);
    default:
      throw std::invalid_argument(
          "bipartite_tomogram: no built-in unitary for dimension " +
          std::to_string(dim) + "; supply unitaries explicitly");
  }
}
}  // namespace detail

/// Tomogram with caller-supplied local unitaries.
inline Tomogram bipartite_tomogram(const DensityMatrix& rho, const Direction& d1,
                                   const Direction& d2, std::pair<int, int> dims,
                                   const Eigen::MatrixXcd& u1,
                                   const Eigen::MatrixXcd& u2) {
  if (dims.first * dims.second != rho.dim())
    throw std::invalid_argument("bipartite_tomogram: dims do not factor state");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
  for (int i = 0; i < dims.first; ++i)
    for (int j = 0; j < dims.first; ++j)
      u.block(i * dims.second, j * dims.second, dims.second, dims.second) =
          u1(i, j) * u2;
  return Tomogram{{dims.first, dims.second}, {d1, d2}, tomogram(rho, u)};
}

/// Tomogram with the built-in direction-parameterized unitaries (dims 2 and 3).
/// A 2x2 subsystem pair uses the Euler-angle convention; mixed or qutrit pairs
/// use the axis convention.
inline Tomogram bipartite_tomogram(const DensityMatrix& rho, const Direction& d1,
                                   const Direction& d2, std::pair<int, int> dims) {
  const bool two_qubits = dims.first == 2 && dims.second == 2;
  return bipartite_tomogram(
      rho, d1, d2, dims, detail::measurement_unitary(dims.first, d1, two_qubits),
      detail::measurement_unitary(dims.second, d2, two_qubits));
}

/// Maximally correlated two-qubit state (|00> + |11>)/sqrt(2).
inline DensityMatrix bell_pair_state() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi[0] = psi[3] = 1.0 / std::numbers::sqrt2;
  return DensityMatrix::pure(psi);
}

/// (|1/2,+1> + |-1/2,-1>)/sqrt(2) in the 6-dimensional qubit-qutrit basis.
inline DensityMatrix qubit_qutrit_pair_state() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(6);
  psi[0] = psi[5] = 1.0 / std::numbers::sqrt2;
  return DensityMatrix::pure(psi);
}

/// (|+1,+1> + |0,0> + |-1,-1>)/sqrt(3) for two qutrits.
inline DensityMatrix two_qutrit_pair_state() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(9);
  psi[0] = psi[4] = psi[8] = 1.0 / std::sqrt(3.0);
  return DensityMatrix::pure(psi);
}

/// Closed-form tomogram of the maximally correlated two-qubit state.
/// Cross-checked against the generic diag(U^dag rho U) path in tests; the
/// generic path is authoritative.
inline ProbVector bell_state_tomogram_closed_form(const Direction& d1,
                                                  const Direction& d2) {
  const double c1 = std::cos(d1.theta / 2) * std::cos(d1.theta / 2);
  const double s1 = 1.0 - c1;
  const double c2 = std::cos(d2.theta / 2) * std::cos(d2.theta / 2);
  const double s2 = 1.0 - c2;
  const double cross = 0.25 * std::sin(d1.theta) * std::sin(d2.theta) *
                       std::cos(d1.phi + d2.phi);
  const double same = 0.5 * (c1 * c2 + s1 * s2) + cross;
  const double diff = 0.5 * (c1 * s2 + s1 * c2) - cross;
  return ProbVector{{same, diff, diff, same}};
}

/// Closed-form 6-entry tomogram of the qubit-qutrit pair state (axis
/// convention); cross-check only.
inline ProbVector qubit_qutrit_tomogram_closed_form(const Direction& d1,
                                                    const Direction& d2) {
  const Eigen::Matrix2cd u = qubit_axis_unitary(d1);
  const Eigen::Matrix3cd v = qutrit_unitary(d2);
  Eigen::VectorXd w(6);
  for (int m1 = 0; m1 < 2; ++m1)
    for (int m2 = 0; m2 < 3; ++m2)
      w[m1 * 3 + m2] =
          0.5 * std::norm(u(0, m1) * v(0, m2) + u(1, m1) * v(2, m2));
  return ProbVector{std::move(w)};
}

/// Closed-form 9-entry tomogram of the two-qutrit pair state; cross-check only.
inline ProbVector two_qutrit_tomogram_closed_form(const Direction& d1,
                                                  const Direction& d2) {
  const Eigen::Matrix3cd u = qutrit_unitary(d1);
  const Eigen::Matrix3cd v = qutrit_unitary(d2);
  Eigen::VectorXd w(9);
  for (int m1 = 0; m1 < 3; ++m1)
    for (int m2 = 0; m2 < 3; ++m2) {
      std::complex<double> amp = 0.0;
      for (int j = 0; j < 3; ++j) amp += u(j, m1) * v(j, m2);
      w[m1 * 3 + m2] = std::norm(amp) / 3.0;
    }
  return ProbVector{std::move(w)};
}

}  // namespace tomobell
