#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tomobell {

inline constexpr double kSimplexTol = 1e-12;
inline constexpr double kSpectralTol = 1e-10;

/// Point on the probability simplex: nonnegative entries summing to 1.
class ProbVector {
 public:
  explicit ProbVector(Eigen::VectorXd entries) : v_(std::move(entries)) {
    if (v_.size() == 0) throw std::invalid_argument("ProbVector: empty");
    for (Eigen::Index i = 0; i < v_.size(); ++i) {
      if (v_[i] < -kSimplexTol || v_[i] > 1.0 + kSimplexTol)
        throw std::invalid_argument("ProbVector: entry outside [0,1]: " +
                                    std::to_string(v_[i]));
    }
    if (std::abs(v_.sum() - 1.0) > kSimplexTol * static_cast<double>(v_.size()))
      throw std::invalid_argument("ProbVector: entries do not sum to 1 (sum=" +
                                  std::to_string(v_.sum()) + ")");
  }

  ProbVector(std::initializer_list<double> entries)
      : ProbVector(Eigen::Map<const Eigen::VectorXd>(entries.begin(),
                   static_cast<Eigen::Index>(entries.size()))) {}

  int size() const { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[i]; }
  const Eigen::VectorXd& values() const { return v_; }

 private:
  Eigen::VectorXd v_;
};

namespace detail {

inline void check_columns_stochastic(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("StochasticMatrix: must be square");
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    ProbVector{Eigen::VectorXd(m.col(j))};  // throws if not a simplex point
}

inline double max_eigenvalue_modulus(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Square matrix whose columns are probability vectors. Semigroup element:
/// maps the simplex into itself.
class StochasticMatrix {
 public:
  explicit StochasticMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    detail::check_columns_stochastic(m_);
    if (detail::max_eigenvalue_modulus(m_) > 1.0 + kSpectralTol)
      throw std::invalid_argument("StochasticMatrix: eigenvalue modulus above 1");
    if (m_.trace() > static_cast<double>(m_.rows()) + kSimplexTol)
      throw std::invalid_argument("StochasticMatrix: trace above dimension");
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  ProbVector column(int j) const { return ProbVector{Eigen::VectorXd(m_.col(j))}; }
  const Eigen::MatrixXd& values() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

 private:
  Eigen::MatrixXd m_;
};

/// Stochastic matrix whose rows also sum to 1; fixes the uniform distribution.
class BistochasticMatrix : public StochasticMatrix {
 public:
  explicit BistochasticMatrix(Eigen::MatrixXd m) : StochasticMatrix(std::move(m)) {
    const auto& v = values();
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      if (std::abs(v.row(i).sum() - 1.0) >
          kSimplexTol * static_cast<double>(v.cols()))
        throw std::invalid_argument("BistochasticMatrix: row does not sum to 1");
  }
};

inline StochasticMatrix compose(const StochasticMatrix& a, const StochasticMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("compose: dimension mismatch");
  return StochasticMatrix{a.values() * b.values()};
}

inline BistochasticMatrix compose(const BistochasticMatrix& a,
                                  const BistochasticMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("compose: dimension mismatch");
  return BistochasticMatrix{a.values() * b.values()};
}

/// Circulant bistochastic embedding of a distribution: column j is w shifted
/// down by j. For N=2 this is [[w1,w2],[w2,w1]].
inline BistochasticMatrix circulant_embedding(const ProbVector& w) {
  const int n = w.size();
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = w[((i - j) % n + n) % n];
  return BistochasticMatrix{std::move(m)};
}

/// Associative product of distributions: cyclic convolution, equivalently the
/// first column of the product of the circulant embeddings.
inline ProbVector star_product(const ProbVector& w, const ProbVector& big_w) {
  if (w.size() != big_w.size())
    throw std::invalid_argument("star_product: length mismatch");
  const int n = w.size();
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) p[m] += w[((m - k) % n + n) % n] * big_w[k];
  return ProbVector{std::move(p)};
}

/// Entrywise squared moduli of a unitary matrix.
inline BistochasticMatrix unistochastic(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols())
    throw std::invalid_argument("unistochastic: matrix not square");
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  if (!gram.isApprox(Eigen::MatrixXcd::Identity(u.rows(), u.cols()), 1e-10))
    throw std::invalid_argument("unistochastic: input not unitary");
  return BistochasticMatrix{u.cwiseAbs2()};
}

struct Eigensystem2x2 {
  std::array<double, 2> eigenvalues;  // {1, p - q}
  Eigen::Matrix2d eigenvectors;       // columns; M v = lambda v to 1e-10
};

/// Spectrum of a 2x2 stochastic matrix [[p, q], [1-p, 1-q]]. The second
/// eigenvector is (1, -1) for any p, q; the first is the stationary
/// distribution (proportional to (q, 1-p)), so no division by p - q occurs
/// and the degenerate case p = q is fine.
inline Eigensystem2x2 eigensystem_2x2(const StochasticMatrix& m) {
  if (m.dim() != 2)
    throw std::invalid_argument("eigensystem_2x2: dimension must be 2");
  const double p = m(0, 0), q = m(0, 1);
  Eigensystem2x2 out;
  out.eigenvalues = {1.0, p - q};
  const double s = q + (1.0 - p);
  Eigen::Vector2d fixed = s > kSimplexTol
                              ? Eigen::Vector2d(q / s, (1.0 - p) / s)
                              : Eigen::Vector2d(1.0, 0.0);  // identity-like
  out.eigenvectors.col(0) = fixed;
  out.eigenvectors.col(1) = Eigen::Vector2d(1.0, -1.0);
  return out;
}

/// Stationary distribution of a 2x2 stochastic matrix, from the eigenproblem.
inline ProbVector stationary_2x2(const StochasticMatrix& m) {
  const auto es = eigensystem_2x2(m);
  return ProbVector{Eigen::VectorXd(es.eigenvectors.col(0))};
}

/// n-th power by repeated composition; n = 0 gives the identity.
inline StochasticMatrix power(const StochasticMatrix& m, unsigned n) {
  if (m.dim() != 2) throw std::invalid_argument("power: dimension must be 2");
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(2, 2);
  for (unsigned i = 0; i < n; ++i) acc = acc * m.values();
  return StochasticMatrix{std::move(acc)};
}

/// Row-major flattening: [[a,b],[c,d]] -> (a, b, c, d).
inline Eigen::VectorXd vectorize(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd t = m.transpose();
  return Eigen::Map<Eigen::VectorXd>(t.data(), t.size());
}

/// Frobenius inner product Tr(m1^T m2), equal to the dot product of the
/// flattened vectors.
inline double dot(const Eigen::MatrixXd& m1, const Eigen::MatrixXd& m2) {
  if (m1.rows() != m2.rows() || m1.cols() != m2.cols())
    throw std::invalid_argument("dot: shape mismatch");
  return (m1.transpose() * m2).trace();
}

namespace detail {
inline void check_permutation(std::span<const int> sigma, int n) {
  if (static_cast<int>(sigma.size()) != n)
    throw std::invalid_argument("permutation: wrong length");
  std::vector<bool> seen(n, false);
  for (int s : sigma) {
    if (s < 0 || s >= n || seen[s])
      throw std::invalid_argument("permutation: not a permutation of 0..N-1");
    seen[s] = true;
  }
}
}  // namespace detail

inline StochasticMatrix permute_columns(const StochasticMatrix& m,
                                        std::span<const int> sigma) {
  detail::check_permutation(sigma, m.dim());
  Eigen::MatrixXd out(m.dim(), m.dim());
  for (int j = 0; j < m.dim(); ++j) out.col(j) = m.values().col(sigma[j]);
  return StochasticMatrix{std::move(out)};
}

inline StochasticMatrix permute_rows(const StochasticMatrix& m,
                                     std::span<const int> sigma) {
  detail::check_permutation(sigma, m.dim());
  Eigen::MatrixXd out(m.dim(), m.dim());
  for (int i = 0; i < m.dim(); ++i) out.row(i) = m.values().row(sigma[i]);
  return StochasticMatrix{std::move(out)};
}

}  // namespace tomobell
