#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "anomint/central_charges.hpp"
#include "anomint/weyl_polynomial.hpp"

namespace anomint {

/// Heisenberg-picture operators under H_alpha, as coefficients over {F'_j(0)}:
///   F'_i(t)          = sum_j fprime_coeffs(i, j) F'_j(0)
///   Q_i(t) - Q_i(0)  = sum_j q_offsets(i, j)     F'_j(0)
struct CoefficientState {
  Eigen::MatrixXd fprime_coeffs;
  Eigen::MatrixXd q_offsets;
  double t = 0.0;
};

/// Closed form via the canonical blocks: fprime_coeffs = exp(-2At), q_offsets the integral
/// of 2 exp(-2As) over [0, t]. Throws SingularCharges / OddDimension.
CoefficientState exact_flow(const CentralCharges& charges, double t);
CoefficientState exact_flow(const Eigen::MatrixXd& alpha, double t);

/// Classical RK4 on dF'/dt = -2 A F', dQ/dt = 2 F' with `steps` equal steps.
CoefficientState rk4_flow(const Eigen::MatrixXd& alpha, double t, std::size_t steps);
CoefficientState rk4_flow(const CentralCharges& charges, double t, std::size_t steps);

/// Linear generator L of dX/dt = i[H, X] on the basis (Q_1..Q_n, P_1..P_n): row r holds the
/// coefficients of i[H, g_r]. Requires H to be at most quadratic with real i[H, g_r].
Eigen::MatrixXd heisenberg_generator(const WeylPolynomial& h);

/// Coefficients of i[H_alpha, F'_i] over {F'_j}, derived symbolically; equals -2A.
Eigen::MatrixXd symbolic_fprime_generator(const CentralCharges& charges);

struct AnomalyReport {
  double t = 0.0;
  Eigen::MatrixXd naive_generator;      // from H_0
  Eigen::MatrixXd anomalous_generator;  // from H_alpha
  /// Row i: coefficients of F_alpha_i over (Q, P) at time 0 and after each flow.
  Eigen::MatrixXd initial;
  Eigen::MatrixXd naive_final;
  Eigen::MatrixXd anomalous_final;
  /// Rate of change of F_alpha_i under the naive flow; row i equals alpha_ij P_j.
  Eigen::MatrixXd naive_rate;
  double naive_drift = 0.0;      // max |naive_final - initial|
  double anomalous_drift = 0.0;  // max |anomalous_final - initial|
};

/// Evolves every F_alpha_i under H_0 and under H_alpha for time t.
AnomalyReport anomaly_demo(const CentralCharges& charges, double t);

/// Coefficients of a polynomial of degree <= 1 over (Q_1..Q_n, P_1..P_n). Throws
/// InvalidArgument on higher-degree or constant terms or non-real coefficients.
Eigen::VectorXd linear_coefficients(const WeylPolynomial& poly);

}  // namespace anomint
