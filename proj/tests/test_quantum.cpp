#include "tomobell/quantum.hpp"

#include "support/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

using namespace tomobell;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double kHalfPi = std::numbers::pi / 2;
}

TEST_CASE("Direction unit vector") {
  const Direction z{0.0, 0.0};
  CHECK((z.unit() - Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);
  const Direction x{kHalfPi, 0.0};
  CHECK((x.unit() - Eigen::Vector3d(1, 0, 0)).norm() < 1e-15);
  const Direction y{kHalfPi, kHalfPi};
  CHECK((y.unit() - Eigen::Vector3d(0, 1, 0)).norm() < 1e-12);
}

TEST_CASE("DensityMatrix validation") {
  SECTION("accepts the maximally mixed state") {
    CHECK_NOTHROW(DensityMatrix{Eigen::MatrixXcd::Identity(3, 3) / 3.0});
  }

  SECTION("rejects non-Hermitian input") {
    Eigen::Matrix2cd m;
    m << 0.5, std::complex<double>(0.1, 0.2), 0.3, 0.5;
    CHECK_THROWS_AS(DensityMatrix{Eigen::MatrixXcd(m)}, std::invalid_argument);
  }

  SECTION("rejects wrong trace") {
    CHECK_THROWS_AS(DensityMatrix{Eigen::MatrixXcd::Identity(2, 2)},
                    std::invalid_argument);
  }

  SECTION("rejects a negative eigenvalue") {
    Eigen::Matrix2cd m;
    m << 1.2, 0.0, 0.0, -0.2;
    CHECK_THROWS_AS(DensityMatrix{Eigen::MatrixXcd(m)}, std::invalid_argument);
  }

  SECTION("pure() requires normalized amplitudes") {
    Eigen::Vector2cd psi(1.0, 1.0);
    CHECK_THROWS_AS(DensityMatrix::pure(psi), std::invalid_argument);
    CHECK_NOTHROW(DensityMatrix::pure(psi.normalized()));
  }
}

TEST_CASE("measurement unitaries") {
  SECTION("qubit Euler unitary at the pole is the identity") {
    CHECK(qubit_unitary({0.0, 0.0}).isApprox(Eigen::Matrix2cd::Identity(), 1e-15));
  }

  SECTION("all three families are unitary at random angles") {
    tomotest::Rng rng(1);
    for (int rep = 0; rep < 200; ++rep) {
      auto d = tomotest::random_direction(rng);
      d.psi = 2.0 * std::numbers::pi * (rng() % 1000) / 1000.0;
      for (const Eigen::MatrixXcd& u :
           {Eigen::MatrixXcd(qubit_unitary(d)),
            Eigen::MatrixXcd(qubit_axis_unitary(d)),
            Eigen::MatrixXcd(qutrit_unitary(d))}) {
        CHECK((u.adjoint() * u -
               Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-14);
      }
    }
  }

  SECTION("axis convention equals the Euler convention at phi + pi/2") {
    tomotest::Rng rng(2);
    for (int rep = 0; rep < 200; ++rep) {
      const auto d = tomotest::random_direction(rng);
      const auto rho = tomotest::random_density(rng, 2);
      const auto w1 = tomogram(rho, qubit_axis_unitary(d));
      const auto w2 = tomogram(rho, qubit_unitary({d.theta, d.phi + kHalfPi}));
      CHECK((w1.values() - w2.values()).cwiseAbs().maxCoeff() < 1e-13);
    }
  }

  SECTION("qutrit unitary at theta = 0 is a diagonal phase matrix") {
    const auto u = qutrit_unitary({0.0, 0.7});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) CHECK(std::abs(u(i, j)) < 1e-15);
    CHECK_THAT(std::abs(u(0, 0)), WithinAbs(1.0, 1e-15));
  }
}

TEST_CASE("single tomogram") {
  SECTION("identity unitary reads off the diagonal") {
    tomotest::Rng rng(3);
    const auto rho = tomotest::random_density(rng, 3);
    const auto w = tomogram(rho, Eigen::MatrixXcd::Identity(3, 3));
    for (int m = 0; m < 3; ++m)
      CHECK_THAT(w[m], WithinAbs(rho.values()(m, m).real(), 1e-15));
  }

  SECTION("basis-state tomograms are rows of the unistochastic matrix") {
    tomotest::Rng rng(4);
    const auto u = tomotest::random_unitary(rng, 3);
    const auto b = unistochastic(u);
    for (int k = 0; k < 3; ++k) {
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(3);
      psi[k] = 1.0;
      const auto w = tomogram(DensityMatrix::pure(psi), u);
      for (int m = 0; m < 3; ++m) CHECK_THAT(w[m], WithinAbs(b(k, m), 1e-14));
    }
  }

  SECTION("rejects a non-unitary matrix") {
    tomotest::Rng rng(5);
    const auto rho = tomotest::random_density(rng, 2);
    CHECK_THROWS_AS(tomogram(rho, Eigen::MatrixXcd::Ones(2, 2)),
                    std::invalid_argument);
  }

  SECTION("rejects a dimension mismatch") {
    tomotest::Rng rng(6);
    const auto rho = tomotest::random_density(rng, 2);
    CHECK_THROWS_AS(tomogram(rho, Eigen::MatrixXcd::Identity(3, 3)),
                    std::invalid_argument);
  }
}

TEST_CASE("bipartite tomogram") {
  SECTION("maximally correlated qubits along x on both sides") {
    const auto t = bipartite_tomogram(bell_pair_state(), {kHalfPi, 0.0},
                                      {kHalfPi, 0.0}, {2, 2});
    CHECK_THAT(t.probabilities[0], WithinAbs(0.5, 1e-12));
    CHECK_THAT(t.probabilities[1], WithinAbs(0.0, 1e-12));
    CHECK_THAT(t.probabilities[2], WithinAbs(0.0, 1e-12));
    CHECK_THAT(t.probabilities[3], WithinAbs(0.5, 1e-12));
  }

  SECTION("pole directions read off the diagonal") {
    tomotest::Rng rng(7);
    const auto rho = tomotest::random_density(rng, 6);
    const auto t = bipartite_tomogram(rho, {0.0, 0.0}, {0.0, 0.0}, {2, 3});
    for (int k = 0; k < 6; ++k)
      CHECK_THAT(t.probabilities[k], WithinAbs(rho.values()(k, k).real(), 1e-13));
  }

  SECTION("product states factor into marginal tomograms") {
    tomotest::Rng rng(8);
    for (int rep = 0; rep < 50; ++rep) {
      const auto pa = tomotest::random_pure(rng, 2);
      const auto pb = tomotest::random_pure(rng, 3);
      Eigen::VectorXcd prod(6);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) prod[3 * i + j] = pa[i] * pb[j];
      const auto d1 = tomotest::random_direction(rng);
      const auto d2 = tomotest::random_direction(rng);
      const auto t =
          bipartite_tomogram(DensityMatrix::pure(prod), d1, d2, {2, 3});
      const auto wa = tomogram(DensityMatrix::pure(pa), qubit_axis_unitary(d1));
      const auto wb = tomogram(DensityMatrix::pure(pb), qutrit_unitary(d2));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK_THAT(t.probabilities[3 * i + j], WithinAbs(wa[i] * wb[j], 1e-12));
    }
  }

  SECTION("marginals sum the joint distribution") {
    tomotest::Rng rng(9);
    const auto rho = tomotest::random_density(rng, 9);
    const auto t = bipartite_tomogram(rho, tomotest::random_direction(rng),
                                      tomotest::random_direction(rng), {3, 3});
    const auto m0 = t.marginal(0);
    const auto m1 = t.marginal(1);
    CHECK_THAT(m0.values().sum(), WithinAbs(1.0, 1e-12));
    CHECK_THAT(m1.values().sum(), WithinAbs(1.0, 1e-12));
    CHECK_THAT(m0[0],
               WithinAbs(t.probabilities[0] + t.probabilities[1] +
                             t.probabilities[2],
                         1e-15));
  }

  SECTION("rejects dims that do not factor the state") {
    tomotest::Rng rng(10);
    const auto rho = tomotest::random_density(rng, 6);
    CHECK_THROWS_AS(bipartite_tomogram(rho, {}, {}, {2, 2}),
                    std::invalid_argument);
  }
}

TEST_CASE("closed-form pair-state tomograms agree with the generic path") {
  tomotest::Rng rng(11);

  SECTION("two qubits") {
    const auto state = bell_pair_state();
    for (int rep = 0; rep < 200; ++rep) {
      const auto d1 = tomotest::random_direction(rng);
      const auto d2 = tomotest::random_direction(rng);
      const auto t = bipartite_tomogram(state, d1, d2, {2, 2});
      const auto cf = bell_state_tomogram_closed_form(d1, d2);
      CHECK((t.probabilities.values() - cf.values()).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }

  SECTION("qubit and qutrit") {
    const auto state = qubit_qutrit_pair_state();
    for (int rep = 0; rep < 200; ++rep) {
      const auto d1 = tomotest::random_direction(rng);
      const auto d2 = tomotest::random_direction(rng);
      const auto t = bipartite_tomogram(state, d1, d2, {2, 3});
      const auto cf = qubit_qutrit_tomogram_closed_form(d1, d2);
      CHECK((t.probabilities.values() - cf.values()).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }

  SECTION("two qutrits") {
    const auto state = two_qutrit_pair_state();
    for (int rep = 0; rep < 200; ++rep) {
      const auto d1 = tomotest::random_direction(rng);
      const auto d2 = tomotest::random_direction(rng);
      const auto t = bipartite_tomogram(state, d1, d2, {3, 3});
      const auto cf = two_qutrit_tomogram_closed_form(d1, d2);
      CHECK((t.probabilities.values() - cf.values()).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }
}

TEST_CASE("tomograms do not depend on the third Euler angle") {
  tomotest::Rng rng(12);
  std::uniform_real_distribution<double> ps(0.0, 2.0 * std::numbers::pi);
  for (int rep = 0; rep < 200; ++rep) {
    const auto rho = tomotest::random_density(rng, 4);
    auto d1 = tomotest::random_direction(rng);
    auto d2 = tomotest::random_direction(rng);
    const auto base = bipartite_tomogram(rho, d1, d2, {2, 2});
    d1.psi = ps(rng);
    d2.psi = ps(rng);
    const auto tilted = bipartite_tomogram(rho, d1, d2, {2, 2});
    CHECK((base.probabilities.values() - tilted.probabilities.values())
              .cwiseAbs()
              .maxCoeff() < 1e-13);
  }
}

TEST_CASE("tomogram normalization across dimension pairs") {
  tomotest::Rng rng(13);
  for (const auto dims :
       {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
    for (int rep = 0; rep < 100; ++rep) {
      const auto rho = tomotest::random_density(rng, dims.first * dims.second);
      const auto t = bipartite_tomogram(rho, tomotest::random_direction(rng),
                                        tomotest::random_direction(rng), dims);
      CHECK_THAT(t.probabilities.values().sum(), WithinAbs(1.0, 1e-12));
      CHECK(t.probabilities.values().minCoeff() > -kSimplexTol);
    }
  }
}
