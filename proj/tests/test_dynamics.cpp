#include <doctest.h>

#include <cmath>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "anomint/dynamics.hpp"
#include "anomint/errors.hpp"
#include "anomint/linalg.hpp"
#include "anomint/operators.hpp"

using namespace anomint;

namespace {

Eigen::MatrixXd planar(double b) {
  Eigen::MatrixXd a(2, 2);
  a << 0, b, -b, 0;
  return a;
}

Eigen::MatrixXd random_antisymmetric(std::mt19937& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      a(i, j) = u(rng);
      a(j, i) = -a(i, j);
    }
  }
  return a;
}

}  // namespace

TEST_CASE("half-period rotation") {
  const double beta = 1.5;
  const auto s = exact_flow(planar(beta), M_PI / (2 * beta));
  CHECK((s.fprime_coeffs + Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("exact flow matches the matrix exponential") {
  std::mt19937 rng(8);
  for (Eigen::Index n : {2, 4, 6}) {
    const auto a = random_antisymmetric(rng, n);
    const double t = 0.7;
    const auto s = exact_flow(a, t);
    const Eigen::MatrixXd ref = Eigen::MatrixXd(-2.0 * t * a).exp();
    CHECK(max_abs(Eigen::MatrixXd(s.fprime_coeffs - ref)) < 1e-12);
    CHECK(max_abs(Eigen::MatrixXd(expm(Eigen::MatrixXd(-2.0 * t * a)) - ref)) < 1e-12);
    // q offsets: integral of 2 exp(-2As) ds = A^{-1} (I - exp(-2At)).
    const Eigen::MatrixXd q_ref = a.inverse() * (Eigen::MatrixXd::Identity(n, n) - ref);
    CHECK(max_abs(Eigen::MatrixXd(s.q_offsets - q_ref)) < 1e-10);
  }
}

TEST_CASE("one-parameter group and orthogonality") {
  std::mt19937 rng(9);
  const auto a = random_antisymmetric(rng, 4);
  const auto s1 = exact_flow(a, 0.3);
  const auto s2 = exact_flow(a, 1.1);
  const auto s12 = exact_flow(a, 1.4);
  CHECK(max_abs(Eigen::MatrixXd(s12.fprime_coeffs - s1.fprime_coeffs * s2.fprime_coeffs)) < 1e-12);
  for (double t : {-100.0, -3.0, 10.0, 100.0}) {
    const auto s = exact_flow(a, t);
    CHECK(max_abs(Eigen::MatrixXd(s.fprime_coeffs * s.fprime_coeffs.transpose() -
                                  Eigen::MatrixXd::Identity(4, 4))) < 1e-12);
  }
}

TEST_CASE("RK4 is fourth order") {
  const auto a = planar(1.0);
  const auto exact = exact_flow(a, 1.0);
  const double e1 = max_abs(Eigen::MatrixXd(rk4_flow(a, 1.0, 20).fprime_coeffs - exact.fprime_coeffs));
  const double e2 = max_abs(Eigen::MatrixXd(rk4_flow(a, 1.0, 80).fprime_coeffs - exact.fprime_coeffs));
  const double ratio = e1 / e2;
  CHECK(ratio > 200);
  CHECK(ratio < 320);
  CHECK_THROWS_AS(rk4_flow(a, 1.0, 0), InvalidArgument);
}

TEST_CASE("symbolic generator") {
  std::vector<Rational> entries{Rational(0), Rational(1), Rational(-1, 2), Rational(0),
                                Rational(-1), Rational(0), Rational(0), Rational(2),
                                Rational(1, 2), Rational(0), Rational(0), Rational(3, 4),
                                Rational(0), Rational(-2), Rational(-3, 4), Rational(0)};
  const CentralCharges charges(4, entries);
  const Eigen::MatrixXd a = charges.to_matrix();
  CHECK(max_abs(Eigen::MatrixXd(symbolic_fprime_generator(charges) + 2.0 * a)) < 1e-15);

  // Central differences of the closed form reproduce the generator.
  const double h = 1e-5;
  const Eigen::MatrixXd fd =
      (exact_flow(a, h).fprime_coeffs - exact_flow(a, -h).fprime_coeffs) / (2 * h);
  CHECK(max_abs(Eigen::MatrixXd(fd + 2.0 * a)) / max_abs(Eigen::MatrixXd(2.0 * a)) < 1e-6);
}

TEST_CASE("Heisenberg generator of a single oscillator") {
  const auto h = build_canonical_hamiltonian({Rational(1)});
  const Eigen::MatrixXd l = heisenberg_generator(h);
  // dQ/dt = 2P, dP/dt = -2Q
  Eigen::MatrixXd expected(2, 2);
  expected << 0, 2, -2, 0;
  CHECK(max_abs(Eigen::MatrixXd(l - expected)) == 0.0);
  CHECK_THROWS_AS(linear_coefficients(parse_polynomial("Q1^2", 1)), InvalidArgument);
  CHECK_THROWS_AS(linear_coefficients(parse_polynomial("Q1 + 1", 1)), InvalidArgument);
}

TEST_CASE("anomaly demonstration") {
  const auto charges = CentralCharges::planar(Rational(2));
  const auto report = anomaly_demo(charges, 0.8);
  CHECK(report.anomalous_drift < 1e-13);
  CHECK(report.naive_drift > 0.1);
  // Row i of the naive rate is alpha_ij P_j over (Q1, Q2, P1, P2).
  Eigen::MatrixXd rate(2, 4);
  rate << 0, 0, 0, 2, 0, 0, -2, 0;
  CHECK(max_abs(Eigen::MatrixXd(report.naive_rate - rate)) < 1e-15);

  const auto trivial = anomaly_demo(CentralCharges::zero(2), 0.8);
  CHECK(max_abs(Eigen::MatrixXd(trivial.naive_final - trivial.anomalous_final)) < 1e-15);
}
