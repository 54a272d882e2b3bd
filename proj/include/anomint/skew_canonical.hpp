#pragma once

#include <Eigen/Dense>

#include <vector>

#include "anomint/central_charges.hpp"

namespace anomint {

/// Orthogonal M, frequencies beta (descending, positive) and C = [[0, B], [-B, 0]],
/// B = diag(beta), with M A M^T = C.
struct CanonicalForm {
  Eigen::MatrixXd M;
  std::vector<double> beta;
  int detM = 1;
  Eigen::MatrixXd C;
};

struct CanonicalizeOptions {
  /// Singularity threshold on the smallest singular value, relative to max|A|.
  double singular_tol = 1e-12;
  /// Orthogonality and reconstruction tolerances, relative to max|A| for the latter.
  double check_tol = 1e-10;
  /// Antisymmetry tolerance for floating-point input, relative to max|A|.
  double antisymmetry_tol = 1e-12;
};

/// Throws OddDimension, NotAntisymmetric, SingularCharges; NumericalFailure if the
/// result misses its own tolerances.
CanonicalForm canonicalize(const Eigen::MatrixXd& a, const CanonicalizeOptions& options = {});
CanonicalForm canonicalize(const CentralCharges& charges, const CanonicalizeOptions& options = {});

/// [[0, B], [-B, 0]] for B = diag(beta).
Eigen::MatrixXd cartan_matrix(const std::vector<double>& beta);

/// True iff x is square of even size, with zero diagonal blocks and diagonal off-diagonal
/// blocks B and -B (entrywise within tol).
bool assert_cartan_form(const Eigen::MatrixXd& x, double tol);

/// Diagonal of the upper-right block of a Cartan-form matrix.
std::vector<double> cartan_beta(const Eigen::MatrixXd& c);

}  // namespace anomint
