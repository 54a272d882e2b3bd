#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "anomint/errors.hpp"
#include "anomint/fock.hpp"
#include "anomint/linalg.hpp"
#include "anomint/operators.hpp"

using namespace anomint;

namespace {
using cd = std::complex<double>;
}

TEST_CASE("truncation indexing") {
  TruncationConfig c{2, 3, 1};
  CHECK(c.dim() == 16);
  CHECK(c.occupation(7) == std::vector<std::size_t>{1, 3});
  CHECK(c.is_interior(5));
  CHECK_FALSE(c.is_interior(7));
  CHECK(c.interior_indices().size() == 9);
  CHECK_THROWS_AS((TruncationConfig{1, 3, 3}.validate()), InvalidArgument);
  CHECK_THROWS_AS((TruncationConfig{0, 3, 1}.validate()), InvalidArgument);
}

TEST_CASE("ladder operators") {
  TruncationConfig c{1, 4, 1};
  const auto ladders = ladder_matrices(c);
  const auto& a = ladders.lower[0];
  CHECK(std::abs(a(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(a(2, 3) - std::sqrt(3.0)) < 1e-15);
  CHECK(ladders.raise[0].isApprox(a.adjoint()));
  const Eigen::MatrixXcd comm = a * ladders.raise[0] - ladders.raise[0] * a;
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(std::abs(comm(k, k) - 1.0) < 1e-14);
  // The truncation edge breaks [a, a^dagger] = 1.
  CHECK(std::abs(comm(4, 4) + 4.0) < 1e-14);

  TruncationConfig two{2, 2, 1};
  const auto l2 = ladder_matrices(two);
  // Mode 0 is the most significant index: a_0 |1,0> = |0,0>.
  CHECK(std::abs(l2.lower[0](0, 3) - 1.0) < 1e-15);
  CHECK(std::abs(l2.lower[1](0, 1) - 1.0) < 1e-15);
}

TEST_CASE("canonical commutation on the interior") {
  TruncationConfig c{2, 8, 2};
  const auto q1 = assemble(WeylPolynomial::q(2, 0), c);
  const auto p1 = assemble(WeylPolynomial::p(2, 0), c);
  const auto q2 = assemble(WeylPolynomial::q(2, 1), c);
  const Eigen::MatrixXcd minus_i = cd(0, -1) * Eigen::MatrixXcd::Identity(c.dim(), c.dim());
  CHECK(interior_residual(p1, q1, minus_i, c) < 1e-13);
  CHECK(interior_residual(p1, q2, c) < 1e-13);
  CHECK(hermiticity_defect(q1) == 0.0);
  CHECK(hermiticity_defect(p1) == 0.0);
  CHECK_THROWS_AS(assemble(WeylPolynomial::q(3, 0), c), DimensionMismatch);
}

TEST_CASE("assembly matches products of generator matrices") {
  TruncationConfig c{1, 10, 3};
  const auto poly = parse_polynomial("P1 Q1^2 P1 + 3/2i * Q1", 1);
  const auto q = assemble(WeylPolynomial::q(1, 0), c).matrix;
  const auto p = assemble(WeylPolynomial::p(1, 0), c).matrix;
  const Eigen::MatrixXcd direct = p * q * q * p + cd(0, 1.5) * q;
  const auto assembled = assemble(poly, c).matrix;
  double worst = 0.0;
  for (auto r : c.interior_indices()) {
    for (auto s : c.interior_indices()) worst = std::max(worst, std::abs(direct(r, s) - assembled(r, s)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("Hermitian eigensolver against Eigen") {
  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  for (int n : {1, 2, 5, 40}) {
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = cd(g(rng), g(rng));
    }
    const Eigen::MatrixXcd h = m + m.adjoint();
    const auto ours = hermitian_eigen(h, true);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(h);
    CHECK((ours.values - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    const Eigen::MatrixXcd resid = h * ours.vectors - ours.vectors * ours.values.asDiagonal();
    CHECK(max_abs(resid) < 1e-10);
    CHECK((ours.vectors.adjoint() * ours.vectors).isIdentity(1e-10));
  }
  Eigen::MatrixXcd bad(2, 2);
  bad << 1, cd(0, 1), cd(0, 1), 1;
  CHECK_THROWS_AS(hermitian_eigen(bad, false), NonHermitian);
}

TEST_CASE("single-mode canonical Hamiltonian has odd integer spectrum") {
  TruncationConfig c{1, 30, 2};
  const auto values = diagonalize(canonical_hamiltonian({1.0}, c), 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(values[k] - (2.0 * k + 1.0)) < 1e-8);
  const auto scaled = diagonalize(canonical_hamiltonian({2.5}, c), 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(scaled[k] - 2.5 * (2.0 * k + 1.0)) < 1e-8);
}

TEST_CASE("two-mode canonical Hamiltonian") {
  TruncationConfig c{2, 14, 2};
  const auto values = diagonalize(canonical_hamiltonian({1.0, 1.0}, c), 6);
  const std::vector<double> expected{2, 4, 4, 6, 6, 6};
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(values[k] - expected[k]) < 1e-6);
}

TEST_CASE("commutant checks for H_alpha") {
  const auto charges = CentralCharges::planar(Rational(1));
  const auto report = commutant_multiplicity_check(charges, TruncationConfig{2, 12, 4}, 2);
  CHECK(report.conservation_residual < 1e-10);
  CHECK(report.algebra_residual < 1e-12);
  CHECK(report.hermiticity_defect == 0.0);
  CHECK(report.f_fprime_difference > 0.1);
  REQUIRE(report.levels.size() == 2);
  CHECK(report.levels[0].energy == doctest::Approx(1.0));
  CHECK(report.levels[1].energy == doctest::Approx(3.0));

  const auto zero = commutant_multiplicity_check(CentralCharges::zero(2), TruncationConfig{2, 6, 2});
  CHECK(zero.f_fprime_difference == 0.0);
  CHECK(zero.levels.empty());
}

TEST_CASE("ground multiplicity grows with the cutoff") {
  const auto charges = CentralCharges::planar(Rational(1));
  std::size_t previous = 0;
  for (std::size_t n_max : {10u, 14u, 18u}) {
    const auto report = commutant_multiplicity_check(charges, TruncationConfig{2, n_max, 4}, 1);
    REQUIRE(report.levels.size() == 1);
    CHECK(report.levels[0].multiplicity >= previous);
    previous = report.levels[0].multiplicity;
  }
  CHECK(previous >= 3);
}

TEST_CASE("small ladder examples and linearity") {
  TruncationConfig c{1, 2, 1};
  const auto a = ladder_matrices(c).lower[0];
  CHECK(std::abs(a(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(a(1, 2) - std::sqrt(2.0)) < 1e-15);
  const Eigen::MatrixXcd number = ladder_matrices(c).raise[0] * a;
  for (Eigen::Index k = 0; k < 3; ++k) CHECK(std::abs(number(k, k) - double(k)) < 1e-15);

  TruncationConfig big{1, 12, 2};
  const auto half = ladder_matrices(big);
  OperatorMatrix shifted{half.raise[0] * half.lower[0] +
                             0.5 * Eigen::MatrixXcd::Identity(big.dim(), big.dim()),
                         "number + 1/2"};
  const auto values = diagonalize(shifted, 13);
  for (std::size_t k = 0; k < 13; ++k) CHECK(std::abs(values[k] - (k + 0.5)) < 1e-12);

  TruncationConfig two{2, 6, 2};
  const Rational b(3, 2);
  const auto f1 = assemble(build_F_alpha(CentralCharges::planar(b), 0), two).matrix;
  const Eigen::MatrixXcd sum =
      assemble(WeylPolynomial::p(2, 0), two).matrix + 0.75 * assemble(WeylPolynomial::q(2, 1), two).matrix;
  CHECK(max_abs(Eigen::MatrixXcd(f1 - sum)) < 1e-14);
  const auto x = assemble(WeylPolynomial::q(2, 0), two);
  CHECK(interior_residual(x, x, two) == 0.0);
}

TEST_CASE("truncation convergence of the canonical form") {
  const auto coarse = diagonalize(canonical_hamiltonian({1.0}, TruncationConfig{1, 15, 2}), 5);
  const auto fine = diagonalize(canonical_hamiltonian({1.0}, TruncationConfig{1, 30, 2}), 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(coarse[k] - fine[k]) < 1e-8);
}

TEST_CASE("H_alpha and its canonical form share the low levels") {
  const auto charges = CentralCharges::planar(Rational(1));
  TruncationConfig config{2, 30, 4};
  const auto h = assemble(build_H(charges, HamiltonianVariant::kAnomalous), config);
  const auto values = hermitian_eigen(h.matrix, false).values;
  const auto canonical = diagonalize(canonical_hamiltonian({1.0}, TruncationConfig{1, 30, 2}), 5);
  for (double level : canonical) {
    double nearest = INFINITY;
    for (Eigen::Index k = 0; k < values.size(); ++k) nearest = std::min(nearest, std::abs(values(k) - level));
    CHECK(nearest < 1e-6);
  }
}
