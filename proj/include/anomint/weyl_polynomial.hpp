#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "anomint/scalar.hpp"

namespace anomint {

/// Normal-ordered monomial Q_1^{a_1} ... Q_n^{a_n} P_1^{b_1} ... P_n^{b_n}.
/// Indices are 0-based in the API and rendered 1-based ("Q1").
class Monomial {
 public:
  explicit Monomial(std::size_t n) : n_(n), exps_(2 * n, 0) {}
  Monomial(std::vector<unsigned> q_exponents, std::vector<unsigned> p_exponents);

  static Monomial q(std::size_t n, std::size_t i, unsigned power = 1);
  static Monomial p(std::size_t n, std::size_t i, unsigned power = 1);

  std::size_t n() const { return n_; }
  unsigned q_exp(std::size_t i) const { return exps_[i]; }
  unsigned p_exp(std::size_t i) const { return exps_[n_ + i]; }
  unsigned& q_exp(std::size_t i) { return exps_[i]; }
  unsigned& p_exp(std::size_t i) { return exps_[n_ + i]; }

  unsigned degree() const;
  bool is_constant() const { return degree() == 0; }

  /// "Q1^2 P3"; the constant monomial renders as "1".
  std::string to_string() const;

  const std::vector<unsigned>& exponents() const { return exps_; }

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::size_t n_;
  std::vector<unsigned> exps_;
};

/// Total degree ascending, then Q1 before Q2 before ... before P1 ...
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse polynomial in the canonical generators with [P_i, Q_j] = -i delta_ij,
/// stored in normal order (all Q factors left of all P factors). Zero coefficients
/// are never stored.
class WeylPolynomial {
 public:
  using Terms = std::map<Monomial, Scalar, MonomialOrder>;

  explicit WeylPolynomial(std::size_t n) : n_(n) {}
  WeylPolynomial(Monomial m, Scalar c);

  static WeylPolynomial constant(std::size_t n, Scalar c);
  static WeylPolynomial q(std::size_t n, std::size_t i);
  static WeylPolynomial p(std::size_t n, std::size_t i);

  std::size_t n() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;

  Scalar coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Scalar& c);

  WeylPolynomial& operator+=(const WeylPolynomial& o);
  WeylPolynomial& operator-=(const WeylPolynomial& o);
  WeylPolynomial& operator*=(const Scalar& c);

  friend WeylPolynomial operator+(WeylPolynomial a, const WeylPolynomial& b) { return a += b; }
  friend WeylPolynomial operator-(WeylPolynomial a, const WeylPolynomial& b) { return a -= b; }
  friend WeylPolynomial operator-(WeylPolynomial a) { return a *= Scalar(-1); }
  friend WeylPolynomial operator*(const Scalar& c, WeylPolynomial a) { return a *= c; }
  friend WeylPolynomial operator*(WeylPolynomial a, const Scalar& c) { return a *= c; }

  friend bool operator==(const WeylPolynomial& a, const WeylPolynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Formal adjoint (Q_i, P_i self-adjoint, coefficients conjugated), renormal-ordered.
  WeylPolynomial adjoint() const;
  bool is_self_adjoint() const { return adjoint() == *this; }

  /// Highest degree first, e.g. "Q1 P2 - 3/2 * P1^2 + i"; the zero polynomial renders as "0".
  std::string to_string() const;

 private:
  std::size_t n_;
  Terms terms_;
};

/// Normal-ordered product; throws DimensionMismatch on differing generator counts.
WeylPolynomial product(const WeylPolynomial& a, const WeylPolynomial& b);
WeylPolynomial commutator(const WeylPolynomial& a, const WeylPolynomial& b);

inline WeylPolynomial operator*(const WeylPolynomial& a, const WeylPolynomial& b) {
  return product(a, b);
}

/// Parses the text rendering produced by WeylPolynomial::to_string, and more generally
/// any sum of products of rationals, `i`, generators `Qk`/`Pk`, powers `^k` and
/// parenthesised sub-expressions. Products are taken in the written order and
/// normal-ordered, so "P1 Q1" parses to "Q1 P1 - i".
WeylPolynomial parse_polynomial(std::string_view text, std::size_t n);

}  // namespace anomint
