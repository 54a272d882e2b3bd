#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>

#include "anomint/errors.hpp"
#include "anomint/linalg.hpp"
#include "anomint/skew_canonical.hpp"

using namespace anomint;

namespace {

Eigen::MatrixXd random_antisymmetric(std::mt19937& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      a(i, j) = u(rng);
      a(j, i) = -a(i, j);
    }
  }
  return a;
}

// Positive eigenvalues of the Hermitian matrix iA, descending.
std::vector<double> oracle_beta(const Eigen::MatrixXd& a) {
  const Eigen::MatrixXcd ia = std::complex<double>(0, 1) * a.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(ia);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    if (solver.eigenvalues()(k) > 0) out.push_back(solver.eigenvalues()(k));
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace

TEST_CASE("worked two-dimensional examples") {
  Eigen::MatrixXd a(2, 2);
  a << 0, 3, -3, 0;
  auto form = canonicalize(a);
  CHECK(form.beta == std::vector<double>{3.0});
  CHECK(form.detM == 1);
  CHECK(max_abs(Eigen::MatrixXd(form.M - Eigen::MatrixXd::Identity(2, 2))) < 1e-15);

  a << 0, -2, 2, 0;
  form = canonicalize(a);
  CHECK(form.beta[0] == doctest::Approx(2.0));
  CHECK(form.detM == -1);
  CHECK(max_abs(Eigen::MatrixXd(form.M * a * form.M.transpose() - cartan_matrix({2.0}))) < 1e-14);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(canonicalize(Eigen::MatrixXd::Zero(2, 2)), SingularCharges);
  CHECK_THROWS_AS(canonicalize(Eigen::MatrixXd::Zero(3, 3)), OddDimension);
  Eigen::MatrixXd s(2, 2);
  s << 0, 1, 1, 0;
  CHECK_THROWS_AS(canonicalize(s), NotAntisymmetric);
  Eigen::MatrixXd half = Eigen::MatrixXd::Zero(4, 4);
  half(0, 1) = 1;
  half(1, 0) = -1;
  CHECK_THROWS_AS(canonicalize(half), SingularCharges);
}

TEST_CASE("random matrices against the Hermitian oracle") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index n = 2 * (1 + trial % 6);
    const Eigen::MatrixXd a = random_antisymmetric(rng, n);
    const auto form = canonicalize(a);
    const auto expected = oracle_beta(a);
    REQUIRE(form.beta.size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
      CHECK(std::abs(form.beta[k] - expected[k]) < 1e-9);
    }
    CHECK(max_abs(Eigen::MatrixXd(form.M * form.M.transpose() -
                                  Eigen::MatrixXd::Identity(n, n))) < 1e-10);
    CHECK(max_abs(Eigen::MatrixXd(form.M * a * form.M.transpose() - form.C)) <
          1e-10 * max_abs(a));
    CHECK(assert_cartan_form(form.C, 0.0));
    CHECK(std::abs(form.M.determinant() - form.detM) < 1e-9);
  }
}

TEST_CASE("degenerate frequencies") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  a(0, 1) = 1;
  a(1, 0) = -1;
  a(2, 3) = 1;
  a(3, 2) = -1;
  std::mt19937 rng(3);
  const Eigen::MatrixXd r = canonicalize(random_antisymmetric(rng, 4)).M;
  const Eigen::MatrixXd rotated = r.transpose() * a * r;
  const auto form = canonicalize(rotated);
  CHECK(form.beta[0] == doctest::Approx(1.0));
  CHECK(form.beta[1] == doctest::Approx(1.0));
  CHECK(max_abs(Eigen::MatrixXd(form.M * rotated * form.M.transpose() - form.C)) < 1e-12);
}

TEST_CASE("scale equivariance and determinism") {
  std::mt19937 rng(77);
  const Eigen::MatrixXd a = random_antisymmetric(rng, 6);
  const auto f1 = canonicalize(a);
  const auto f2 = canonicalize(Eigen::MatrixXd(2.5 * a));
  for (std::size_t k = 0; k < f1.beta.size(); ++k) {
    CHECK(f2.beta[k] == doctest::Approx(2.5 * f1.beta[k]).epsilon(1e-12));
  }
  const auto again = canonicalize(a);
  CHECK(again.M == f1.M);
  CHECK(again.beta == f1.beta);
}

TEST_CASE("cartan helpers") {
  const auto c = cartan_matrix({3.0, 1.0});
  CHECK(c(0, 2) == 3.0);
  CHECK(c(3, 1) == -1.0);
  CHECK(cartan_beta(c) == std::vector<double>{3.0, 1.0});
  CHECK(assert_cartan_form(c, 0.0));
  Eigen::MatrixXd bad = c;
  bad(0, 1) = 0.5;
  CHECK_FALSE(assert_cartan_form(bad, 1e-12));
}

TEST_CASE("cartan form recognition") {
  CHECK(assert_cartan_form(Eigen::MatrixXd::Zero(4, 4), 0.0));
  Eigen::MatrixXd chain(4, 4);
  chain << 0, 1, 0, 0, -1, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0;
  CHECK_FALSE(assert_cartan_form(chain, 1e-12));
  CHECK_FALSE(assert_cartan_form(Eigen::MatrixXd::Zero(3, 3), 0.0));
}
