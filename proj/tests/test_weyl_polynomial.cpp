#include <doctest.h>

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "anomint/errors.hpp"
#include "anomint/weyl_polynomial.hpp"

using namespace anomint;

namespace {

// Independent normal ordering by repeated rewriting of words: a letter is (is_p, index),
// and the rule P_i Q_j -> Q_j P_i - i delta_ij is applied at the leftmost P-before-Q
// position until none is left.
using Letter = std::pair<bool, std::size_t>;
using Word = std::vector<Letter>;

void rewrite(const Word& word, const Scalar& coeff, std::size_t n, WeylPolynomial& out) {
  for (std::size_t k = 0; k + 1 < word.size(); ++k) {
    if (word[k].first && !word[k + 1].first) {
      Word swapped = word;
      std::swap(swapped[k], swapped[k + 1]);
      rewrite(swapped, coeff, n, out);
      if (word[k].second == word[k + 1].second) {
        Word contracted(word.begin(), word.begin() + static_cast<long>(k));
        contracted.insert(contracted.end(), word.begin() + static_cast<long>(k) + 2, word.end());
        rewrite(contracted, coeff * -Scalar::imaginary_unit(), n, out);
      }
      return;
    }
  }
  Monomial m(n);
  for (const auto& [is_p, i] : word) {
    if (is_p) ++m.p_exp(i);
    else ++m.q_exp(i);
  }
  out.add_term(m, coeff);
}

Word word_of(const Monomial& m) {
  Word w;
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (unsigned k = 0; k < m.q_exp(i); ++k) w.emplace_back(false, i);
  }
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (unsigned k = 0; k < m.p_exp(i); ++k) w.emplace_back(true, i);
  }
  return w;
}

WeylPolynomial oracle_product(const WeylPolynomial& a, const WeylPolynomial& b) {
  WeylPolynomial out(a.n());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Word w = word_of(ma);
      const Word wb = word_of(mb);
      w.insert(w.end(), wb.begin(), wb.end());
      rewrite(w, ca * cb, a.n(), out);
    }
  }
  return out;
}

WeylPolynomial random_polynomial(std::mt19937& rng, std::size_t n, unsigned max_degree,
                                 int terms) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> slot(0, 2 * n - 1);
  WeylPolynomial p(n);
  for (int t = 0; t < terms; ++t) {
    Monomial m(n);
    const unsigned d = deg(rng);
    for (unsigned k = 0; k < d; ++k) {
      const std::size_t s = slot(rng);
      if (s < n) ++m.q_exp(s);
      else ++m.p_exp(s - n);
    }
    p.add_term(m, Scalar(Rational(coef(rng), 1 + (t % 3)), Rational(coef(rng))));
  }
  return p;
}

}  // namespace

TEST_CASE("canonical commutation relation") {
  const auto q = WeylPolynomial::q(1, 0);
  const auto p = WeylPolynomial::p(1, 0);
  CHECK(commutator(p, q) == WeylPolynomial::constant(1, -Scalar::imaginary_unit()));
  CHECK((p * q).to_string() == "Q1 P1 - i");
  const auto q2 = WeylPolynomial::q(2, 1);
  const auto p1 = WeylPolynomial::p(2, 0);
  CHECK(commutator(p1, q2).is_zero());
}

TEST_CASE("P1 + iQ1 times P1 - iQ1") {
  const auto q = WeylPolynomial::q(1, 0);
  const auto p = WeylPolynomial::p(1, 0);
  const Scalar i = Scalar::imaginary_unit();
  const auto prod = (p + i * q) * (p - i * q);
  CHECK(prod == q * q + p * p - WeylPolynomial::constant(1, 1));
  CHECK(prod.to_string() == "Q1^2 + P1^2 - 1");
}

TEST_CASE("P1^2 Q1^2 normal form") {
  const auto q = WeylPolynomial::q(1, 0);
  const auto p = WeylPolynomial::p(1, 0);
  // P^2 Q^2 = Q^2 P^2 - 4i Q P - 2
  CHECK((p * p * q * q).to_string() == "Q1^2 P1^2 - 4i * Q1 P1 - 2");
}

TEST_CASE("product agrees with word rewriting") {
  std::mt19937 rng(20260101);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
    const auto a = random_polynomial(rng, n, 3, 4);
    const auto b = random_polynomial(rng, n, 3, 4);
    CHECK(product(a, b) == oracle_product(a, b));
  }
}

TEST_CASE("associativity, Jacobi identity and degree bound") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 2);
    const auto a = random_polynomial(rng, n, 2, 3);
    const auto b = random_polynomial(rng, n, 2, 3);
    const auto c = random_polynomial(rng, n, 2, 3);
    CHECK((a * b) * c == a * (b * c));
    const auto jacobi = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                        commutator(c, commutator(a, b));
    CHECK(jacobi.is_zero());
    if (!a.is_zero() && !b.is_zero()) {
      CHECK((a * b).degree() <= a.degree() + b.degree());
      const auto comm = commutator(a, b);
      if (!comm.is_zero()) CHECK(comm.degree() <= a.degree() + b.degree() - 2);
    }
  }
}

TEST_CASE("adjoint") {
  const auto q = WeylPolynomial::q(1, 0);
  const auto p = WeylPolynomial::p(1, 0);
  CHECK((q * p).adjoint() == p * q);
  CHECK((q * p + p * q).is_self_adjoint());
  CHECK_FALSE((q * p).is_self_adjoint());
}

TEST_CASE("render and parse round trip") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
    const auto a = random_polynomial(rng, n, 3, 5);
    CHECK(parse_polynomial(a.to_string(), n) == a);
  }
  CHECK(parse_polynomial("P1 Q1", 1).to_string() == "Q1 P1 - i");
  CHECK(parse_polynomial("(Q1 + 3/2i)^2", 1) ==
        parse_polynomial("Q1^2 + 3i * Q1 - 9/4", 1));
  CHECK(parse_polynomial("0", 2).is_zero());
  CHECK_THROWS_AS(parse_polynomial("Q3", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("Q1 +", 1), ParseError);
}

TEST_CASE("mismatched generator counts") {
  CHECK_THROWS_AS(product(WeylPolynomial::q(1, 0), WeylPolynomial::q(2, 0)), DimensionMismatch);
}
