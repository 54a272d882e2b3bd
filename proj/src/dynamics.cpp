#include "anomint/dynamics.hpp"

#include <cmath>

#include "anomint/errors.hpp"
#include "anomint/linalg.hpp"
#include "anomint/operators.hpp"
#include "anomint/skew_canonical.hpp"

namespace anomint {

CoefficientState exact_flow(const Eigen::MatrixXd& alpha, double t) {
  const CanonicalForm form = canonicalize(alpha);
  const Eigen::Index n = alpha.rows();
  const Eigen::Index l = n / 2;
  // In the canonical frame each (k, l+k) block rotates at angular frequency 2 beta_k.
  Eigen::MatrixXd rot = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd integral = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < l; ++k) {
    const double b = form.beta[static_cast<std::size_t>(k)];
    const double c = std::cos(2.0 * b * t);
    const double s = std::sin(2.0 * b * t);
    rot(k, k) = c;
    rot(k, l + k) = -s;
    rot(l + k, k) = s;
    rot(l + k, l + k) = c;
    const double sb = std::sin(b * t);
    const double one_minus_cos = 2.0 * sb * sb / b;  // (1 - cos 2bt)/b
    integral(k, k) = s / b;
    integral(k, l + k) = -one_minus_cos;
    integral(l + k, k) = one_minus_cos;
    integral(l + k, l + k) = s / b;
  }
  CoefficientState state;
  state.t = t;
  state.fprime_coeffs = form.M.transpose() * rot * form.M;
  state.q_offsets = form.M.transpose() * integral * form.M;
  return state;
}

CoefficientState exact_flow(const CentralCharges& charges, double t) {
  charges.require_even();
  return exact_flow(charges.to_matrix(), t);
}

CoefficientState rk4_flow(const Eigen::MatrixXd& alpha, double t, std::size_t steps) {
  if (steps == 0) throw InvalidArgument("rk4_flow needs at least one step");
  const Eigen::Index n = alpha.rows();
  const Eigen::MatrixXd gen = -2.0 * alpha;
  Eigen::MatrixXd f = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  const double h = t / static_cast<double>(steps);
  for (std::size_t s = 0; s < steps; ++s) {
    const Eigen::MatrixXd k1f = gen * f;
    const Eigen::MatrixXd k1g = 2.0 * f;
    const Eigen::MatrixXd f2 = f + 0.5 * h * k1f;
    const Eigen::MatrixXd k2f = gen * f2;
    const Eigen::MatrixXd k2g = 2.0 * f2;
    const Eigen::MatrixXd f3 = f + 0.5 * h * k2f;
    const Eigen::MatrixXd k3f = gen * f3;
    const Eigen::MatrixXd k3g = 2.0 * f3;
    const Eigen::MatrixXd f4 = f + h * k3f;
    const Eigen::MatrixXd k4f = gen * f4;
    const Eigen::MatrixXd k4g = 2.0 * f4;
    f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
    g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
  }
  return {f, g, t};
}

CoefficientState rk4_flow(const CentralCharges& charges, double t, std::size_t steps) {
  return rk4_flow(charges.to_matrix(), t, steps);
}

Eigen::VectorXd linear_coefficients(const WeylPolynomial& poly) {
  const std::size_t n = poly.n();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * n));
  for (const auto& [mono, coeff] : poly.terms()) {
    if (mono.degree() != 1) {
      throw InvalidArgument("expected a homogeneous linear polynomial, found term " +
                            mono.to_string());
    }
    if (!coeff.is_real()) throw InvalidArgument("expected real coefficients");
    for (std::size_t k = 0; k < n; ++k) {
      if (mono.q_exp(k) == 1) out(static_cast<Eigen::Index>(k)) = coeff.re().get_d();
      if (mono.p_exp(k) == 1) out(static_cast<Eigen::Index>(n + k)) = coeff.re().get_d();
    }
  }
  return out;
}

Eigen::MatrixXd heisenberg_generator(const WeylPolynomial& h) {
  const std::size_t n = h.n();
  const auto dim = static_cast<Eigen::Index>(2 * n);
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dim, dim);
  const Scalar i_unit = Scalar::imaginary_unit();
  for (std::size_t r = 0; r < 2 * n; ++r) {
    const WeylPolynomial g = r < n ? WeylPolynomial::q(n, r) : WeylPolynomial::p(n, r - n);
    gen.row(static_cast<Eigen::Index>(r)) = linear_coefficients(i_unit * commutator(h, g));
  }
  return gen;
}

Eigen::MatrixXd symbolic_fprime_generator(const CentralCharges& charges) {
  const std::size_t n = charges.n();
  const WeylPolynomial h = build_H(charges, HamiltonianVariant::kAnomalous);
  const Scalar i_unit = Scalar::imaginary_unit();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const WeylPolynomial rate = i_unit * commutator(h, build_F_prime_alpha(charges, i));
    // F'_j carries P_j with unit weight, so the P-part fixes the expansion; the Q-part
    // must then agree.
    const Eigen::VectorXd c = linear_coefficients(rate);
    WeylPolynomial rebuilt(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double w = c(static_cast<Eigen::Index>(n + j));
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w;
      rebuilt += Scalar(Rational(w)) * build_F_prime_alpha(charges, j);
    }
    if (!(linear_coefficients(rebuilt) - c).isZero(1e-12)) {
      throw NumericalFailure("i[H_alpha, F'] is not in the span of F'");
    }
  }
  return out;
}

AnomalyReport anomaly_demo(const CentralCharges& charges, double t) {
  charges.require_even();
  if (!charges.is_zero()) canonicalize(charges);  // nonsingularity check
  const std::size_t n = charges.n();
  AnomalyReport report;
  report.t = t;
  report.naive_generator = heisenberg_generator(build_H(charges, HamiltonianVariant::kNaive));
  report.anomalous_generator =
      heisenberg_generator(build_H(charges, HamiltonianVariant::kAnomalous));

  const auto rows = static_cast<Eigen::Index>(n);
  report.initial.resize(rows, static_cast<Eigen::Index>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    report.initial.row(static_cast<Eigen::Index>(i)) =
        linear_coefficients(build_F_alpha(charges, i)).transpose();
  }
  // For X = c . g, dX/dt = c . (L g), so row vectors evolve as c(t) = c(0) exp(L t).
  report.naive_final = report.initial * expm(report.naive_generator * t);
  report.anomalous_final = report.initial * expm(report.anomalous_generator * t);
  report.naive_rate = report.initial * report.naive_generator;
  report.naive_drift = max_abs(Eigen::MatrixXd(report.naive_final - report.initial));
  report.anomalous_drift = max_abs(Eigen::MatrixXd(report.anomalous_final - report.initial));
  return report;
}

}  // namespace anomint
