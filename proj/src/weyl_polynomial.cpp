#include "anomint/weyl_polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <utility>

#include "anomint/errors.hpp"

namespace anomint {

namespace {

void require_same_n(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionMismatch("generator count mismatch: " + std::to_string(a) + " vs " +
                            std::to_string(b));
  }
}

void require_index(std::size_t n, std::size_t i) {
  if (i >= n) {
    throw IndexOutOfRange("generator index " + std::to_string(i) + " out of range for n = " +
                          std::to_string(n));
  }
}

// (-i)^k
Scalar minus_i_power(unsigned k) {
  switch (k % 4) {
    case 0: return Scalar(1);
    case 1: return Scalar(Rational(0), Rational(-1));
    case 2: return Scalar(-1);
    default: return Scalar(Rational(0), Rational(1));
  }
}

// One reordering channel for a single index: P^b Q^c -> coeff * Q^{c-k} P^{b-k}.
struct Contraction {
  unsigned k;
  mpz_class weight;  // C(b,k) C(c,k) k!
};

std::vector<Contraction> contractions(unsigned b, unsigned c) {
  std::vector<Contraction> out;
  const unsigned kmax = std::min(b, c);
  out.reserve(kmax + 1);
  for (unsigned k = 0; k <= kmax; ++k) {
    mpz_class bin_b, bin_c, fact;
    mpz_bin_uiui(bin_b.get_mpz_t(), b, k);
    mpz_bin_uiui(bin_c.get_mpz_t(), c, k);
    mpz_fac_ui(fact.get_mpz_t(), k);
    out.push_back({k, bin_b * bin_c * fact});
  }
  return out;
}

void multiply_monomials(const Monomial& left, const Monomial& right, const Scalar& coeff,
                        WeylPolynomial& out) {
  const std::size_t n = left.n();
  // Indices where P_i^b from the left meets Q_i^c from the right need reordering.
  std::vector<std::size_t> active;
  std::vector<std::vector<Contraction>> channels;
  for (std::size_t i = 0; i < n; ++i) {
    if (left.p_exp(i) > 0 && right.q_exp(i) > 0) {
      active.push_back(i);
      channels.push_back(contractions(left.p_exp(i), right.q_exp(i)));
    }
  }

  Monomial base(n);
  for (std::size_t i = 0; i < n; ++i) {
    base.q_exp(i) = left.q_exp(i) + right.q_exp(i);
    base.p_exp(i) = left.p_exp(i) + right.p_exp(i);
  }

  std::vector<std::size_t> choice(active.size(), 0);
  while (true) {
    Monomial m = base;
    mpz_class weight = 1;
    unsigned total_k = 0;
    for (std::size_t a = 0; a < active.size(); ++a) {
      const auto& ch = channels[a][choice[a]];
      m.q_exp(active[a]) -= ch.k;
      m.p_exp(active[a]) -= ch.k;
      weight *= ch.weight;
      total_k += ch.k;
    }
    out.add_term(m, coeff * Scalar(Rational(weight)) * minus_i_power(total_k));

    std::size_t a = 0;
    for (; a < active.size(); ++a) {
      if (++choice[a] < channels[a].size()) break;
      choice[a] = 0;
    }
    if (a == active.size()) break;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<unsigned> q_exponents, std::vector<unsigned> p_exponents)
    : n_(q_exponents.size()) {
  require_same_n(q_exponents.size(), p_exponents.size());
  exps_ = std::move(q_exponents);
  exps_.insert(exps_.end(), p_exponents.begin(), p_exponents.end());
}

Monomial Monomial::q(std::size_t n, std::size_t i, unsigned power) {
  require_index(n, i);
  Monomial m(n);
  m.q_exp(i) = power;
  return m;
}

Monomial Monomial::p(std::size_t n, std::size_t i, unsigned power) {
  require_index(n, i);
  Monomial m(n);
  m.p_exp(i) = power;
  return m;
}

unsigned Monomial::degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0u); }

std::string Monomial::to_string() const {
  std::string out;
  auto emit = [&out](char name, std::size_t index, unsigned power) {
    if (power == 0) return;
    if (!out.empty()) out += ' ';
    out += name;
    out += std::to_string(index + 1);
    if (power > 1) out += "^" + std::to_string(power);
  };
  for (std::size_t i = 0; i < n_; ++i) emit('Q', i, q_exp(i));
  for (std::size_t i = 0; i < n_; ++i) emit('P', i, p_exp(i));
  return out.empty() ? "1" : out;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da < db;
  // Larger leading exponent first, so Q1 sorts before Q2 and Q before P.
  return std::lexicographical_compare(b.exponents().begin(), b.exponents().end(),
                                      a.exponents().begin(), a.exponents().end());
}

// ---------------------------------------------------------------------------
// WeylPolynomial

WeylPolynomial::WeylPolynomial(Monomial m, Scalar c) : n_(m.n()) { add_term(m, c); }

WeylPolynomial WeylPolynomial::constant(std::size_t n, Scalar c) {
  return WeylPolynomial(Monomial(n), std::move(c));
}

WeylPolynomial WeylPolynomial::q(std::size_t n, std::size_t i) {
  return WeylPolynomial(Monomial::q(n, i), Scalar(1));
}

WeylPolynomial WeylPolynomial::p(std::size_t n, std::size_t i) {
  return WeylPolynomial(Monomial::p(n, i), Scalar(1));
}

int WeylPolynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
  return d;
}

Scalar WeylPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

void WeylPolynomial::add_term(const Monomial& m, const Scalar& c) {
  require_same_n(n_, m.n());
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

WeylPolynomial& WeylPolynomial::operator+=(const WeylPolynomial& o) {
  require_same_n(n_, o.n_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

WeylPolynomial& WeylPolynomial::operator-=(const WeylPolynomial& o) {
  require_same_n(n_, o.n_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

WeylPolynomial& WeylPolynomial::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

WeylPolynomial WeylPolynomial::adjoint() const {
  WeylPolynomial out(n_);
  for (const auto& [m, c] : terms_) {
    // (c Q^a P^b)^dagger = conj(c) P^b Q^a
    Monomial p_part(n_);
    Monomial q_part(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      p_part.p_exp(i) = m.p_exp(i);
      q_part.q_exp(i) = m.q_exp(i);
    }
    multiply_monomials(p_part, q_part, c.conj(), out);
  }
  return out;
}

std::string WeylPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  // Highest degree first; the map order is kept within a degree.
  std::vector<std::pair<const Monomial*, const Scalar*>> ordered;
  for (const auto& [m, c] : terms_) ordered.emplace_back(&m, &c);
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return a.first->degree() > b.first->degree();
  });
  std::string out;
  for (const auto& [m, c] : ordered) {
    const bool negative = c->is_real() ? sgn(c->re()) < 0 : sgn(c->re()) == 0 && sgn(c->im()) < 0;
    const Scalar magnitude = negative ? -*c : *c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (m->is_constant()) {
      out += magnitude.to_string();
    } else if (magnitude == Scalar(1)) {
      out += m->to_string();
    } else {
      out += magnitude.to_string() + " * " + m->to_string();
    }
  }
  return out;
}

WeylPolynomial product(const WeylPolynomial& a, const WeylPolynomial& b) {
  require_same_n(a.n(), b.n());
  WeylPolynomial out(a.n());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) multiply_monomials(ma, mb, ca * cb, out);
  }
  return out;
}

WeylPolynomial commutator(const WeylPolynomial& a, const WeylPolynomial& b) {
  return product(a, b) - product(b, a);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

  WeylPolynomial parse() {
    WeylPolynomial out = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  WeylPolynomial sum() {
    WeylPolynomial out(n_);
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    while (true) {
      WeylPolynomial t = term();
      if (negate) t *= Scalar(-1);
      out += t;
      const char c = peek();
      if (c == '+' || c == '-') {
        negate = c == '-';
        ++pos_;
        continue;
      }
      return out;
    }
  }

  bool starts_factor(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'i' || c == 'Q' || c == 'P' ||
           c == '(' || c == '.';
  }

  WeylPolynomial term() {
    WeylPolynomial out = factor();
    while (true) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        out = product(out, factor());
      } else if (starts_factor(c)) {
        out = product(out, factor());
      } else {
        return out;
      }
    }
  }

  WeylPolynomial factor() {
    if (peek() == '-') {
      ++pos_;
      return -factor();
    }
    WeylPolynomial base = atom();
    if (peek() == '^') {
      ++pos_;
      const unsigned power = integer();
      WeylPolynomial acc = WeylPolynomial::constant(n_, Scalar(1));
      for (unsigned k = 0; k < power; ++k) acc = product(acc, base);
      return acc;
    }
    return base;
  }

  unsigned integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
  }

  WeylPolynomial atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      WeylPolynomial inner = sum();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'i') {
      ++pos_;
      return WeylPolynomial::constant(n_, Scalar::imaginary_unit());
    }
    if (c == 'Q' || c == 'P') {
      ++pos_;
      const unsigned index = integer();
      if (index == 0 || index > n_) fail("generator index out of range");
      return c == 'Q' ? WeylPolynomial::q(n_, index - 1) : WeylPolynomial::p(n_, index - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/' ||
              text_[pos_] == '.')) {
        ++pos_;
      }
      Scalar value(parse_rational(text_.substr(start, pos_ - start)));
      // "3/2i" binds the unit to the number.
      if (pos_ < text_.size() && text_[pos_] == 'i') {
        ++pos_;
        value *= Scalar::imaginary_unit();
      }
      return WeylPolynomial::constant(n_, value);
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

WeylPolynomial parse_polynomial(std::string_view text, std::size_t n) {
  return Parser(text, n).parse();
}

}  // namespace anomint
