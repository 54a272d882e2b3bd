#include "anomint/operators.hpp"

#include <algorithm>

#include "anomint/errors.hpp"

namespace anomint {

namespace {

void require_index(const CentralCharges& charges, std::size_t i) {
  if (i >= charges.n()) {
    throw IndexOutOfRange("index " + std::to_string(i) + " out of range for n = " +
                          std::to_string(charges.n()));
  }
}

WeylPolynomial build_F(const CentralCharges& charges, std::size_t i, const Rational& sign) {
  require_index(charges, i);
  const std::size_t n = charges.n();
  WeylPolynomial out = WeylPolynomial::p(n, i);
  for (std::size_t j = 0; j < n; ++j) {
    const Rational c = sign * charges(i, j) / 2;
    out.add_term(Monomial::q(n, j), Scalar(c));
  }
  return out;
}

const Scalar kI = Scalar::imaginary_unit();

}  // namespace

WeylPolynomial build_F_alpha(const CentralCharges& charges, std::size_t i) {
  return build_F(charges, i, Rational(1));
}

WeylPolynomial build_F_prime_alpha(const CentralCharges& charges, std::size_t i) {
  return build_F(charges, i, Rational(-1));
}

WeylPolynomial build_H(const CentralCharges& charges, HamiltonianVariant variant) {
  const std::size_t n = charges.n();
  WeylPolynomial h(n);
  for (std::size_t i = 0; i < n; ++i) {
    const WeylPolynomial f = variant == HamiltonianVariant::kAnomalous
                                 ? build_F_prime_alpha(charges, i)
                                 : WeylPolynomial::p(n, i);
    h += product(f, f);
  }
  return h;
}

WeylPolynomial build_canonical_hamiltonian(const std::vector<Rational>& beta) {
  const std::size_t l = beta.size();
  if (l == 0) throw InvalidArgument("canonical Hamiltonian needs at least one mode");
  WeylPolynomial h(l);
  for (std::size_t k = 0; k < l; ++k) {
    h.add_term(Monomial::q(l, k, 2), Scalar(beta[k]));
    h.add_term(Monomial::p(l, k, 2), Scalar(beta[k]));
  }
  return h;
}

WeylPolynomial anomaly_term(const CentralCharges& charges, std::size_t i) {
  require_index(charges, i);
  const std::size_t n = charges.n();
  WeylPolynomial out(n);
  for (std::size_t j = 0; j < n; ++j) out.add_term(Monomial::p(n, j), Scalar(charges(i, j)));
  return out;
}

bool IdentityReport::all_zero() const {
  return std::all_of(residuals.begin(), residuals.end(),
                     [](const IdentityResidual& r) { return r.value.is_zero(); });
}

std::size_t IdentityReport::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(residuals.begin(), residuals.end(),
                    [](const IdentityResidual& r) { return !r.value.is_zero(); }));
}

std::vector<std::string> IdentityReport::families() const {
  std::vector<std::string> out;
  for (const auto& r : residuals) {
    if (std::find(out.begin(), out.end(), r.family) == out.end()) out.push_back(r.family);
  }
  return out;
}

IdentityReport verify_identity_suite(const CentralCharges& charges) {
  const std::size_t n = charges.n();
  std::vector<WeylPolynomial> f, fp, q;
  for (std::size_t i = 0; i < n; ++i) {
    f.push_back(build_F_alpha(charges, i));
    fp.push_back(build_F_prime_alpha(charges, i));
    q.push_back(WeylPolynomial::q(n, i));
  }
  const WeylPolynomial h_alpha = build_H(charges, HamiltonianVariant::kAnomalous);
  const WeylPolynomial h_naive = build_H(charges, HamiltonianVariant::kNaive);
  auto constant = [n](const Scalar& c) { return WeylPolynomial::constant(n, c); };

  IdentityReport report;
  auto add = [&report](std::string family, std::size_t i, std::size_t j, WeylPolynomial v) {
    report.residuals.push_back({std::move(family), i, j, std::move(v)});
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar i_alpha = kI * Scalar(charges(i, j));
      add("FF", i, j, commutator(f[i], f[j]) - constant(i_alpha));
      add("F'F", i, j, commutator(fp[i], f[j]));
      add("F'F'", i, j, commutator(fp[i], fp[j]) + constant(i_alpha));
      add("FQ", i, j, commutator(f[i], q[j]) + constant(i == j ? kI : Scalar()));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    add("conservation", i, 0, commutator(h_alpha, f[i]));
  }
  for (std::size_t i = 0; i < n; ++i) {
    add("anomaly", i, 0, commutator(h_naive, f[i]) + kI * anomaly_term(charges, i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    add("Qdot", i, 0, kI * commutator(h_alpha, q[i]) - Scalar(2) * fp[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    WeylPolynomial rhs(n);
    for (std::size_t j = 0; j < n; ++j) rhs += Scalar(4 * charges(i, j)) * fp[j];
    add("F'dot", i, 0, Scalar(2) * kI * commutator(h_alpha, fp[i]) + rhs);
  }
  return report;
}

}  // namespace anomint
