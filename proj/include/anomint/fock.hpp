#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

#include "anomint/central_charges.hpp"
#include "anomint/linalg.hpp"
#include "anomint/weyl_polynomial.hpp"

namespace anomint {

/// Occupation-number basis with n_max + 1 states per mode. Basis index of
/// (nu_0, ..., nu_{modes-1}) is the mixed-radix number with nu_0 most significant.
struct TruncationConfig {
  std::size_t modes = 1;
  std::size_t n_max = 2;
  /// States with any nu_k > n_max - interior_margin are excluded from residual norms.
  std::size_t interior_margin = 1;

  /// Throws InvalidArgument unless modes >= 1, n_max >= 2 and 1 <= margin < n_max.
  void validate() const;
  std::size_t dim() const;
  std::vector<std::size_t> occupation(std::size_t index) const;
  bool is_interior(std::size_t index) const;
  std::vector<std::size_t> interior_indices() const;
};

struct OperatorMatrix {
  Eigen::MatrixXcd matrix;
  std::string label;

  Eigen::Index dim() const { return matrix.rows(); }
};

struct LadderMatrices {
  std::vector<Eigen::MatrixXcd> lower;  // a_k
  std::vector<Eigen::MatrixXcd> raise;  // a_k^dagger
};

/// a_k |nu> = sqrt(nu_k) |nu - e_k>, embedded by Kronecker products.
LadderMatrices ladder_matrices(const TruncationConfig& config);

/// Q_k = (a_k + a_k^dagger)/sqrt(2), P_k = (a_k - a_k^dagger)/(i sqrt(2)), so that
/// [P_k, Q_k] = -i away from the truncation edge.
OperatorMatrix assemble(const WeylPolynomial& poly, const TruncationConfig& config,
                        std::string label = {});

/// max |(XY - YX - expected)_{rs}| over interior r, s.
double interior_residual(const OperatorMatrix& x, const OperatorMatrix& y,
                         const Eigen::MatrixXcd& expected, const TruncationConfig& config);
/// Same with expected = 0.
double interior_residual(const OperatorMatrix& x, const OperatorMatrix& y,
                         const TruncationConfig& config);

/// max |H - H^dagger| / max(1, max |H|).
double hermiticity_defect(const OperatorMatrix& h);

/// k_lowest smallest eigenvalues, ascending. Throws NonHermitian.
std::vector<double> diagonalize(const OperatorMatrix& h, std::size_t k_lowest);

/// sum_k beta_k (Q_k^2 + P_k^2) on beta.size() modes, from floating-point frequencies.
OperatorMatrix canonical_hamiltonian(const std::vector<double>& beta,
                                     const TruncationConfig& config);

struct LevelMapping {
  double energy = 0.0;
  std::size_t multiplicity = 0;
  /// Eigenvectors of the level with negligible weight (<= 1e-8) on edge states.
  std::size_t clean_vectors = 0;
  /// Images R v that are themselves clean; only these enter min_retained_weight.
  std::size_t mapped_images = 0;
  /// Largest |(H - E) R v| / |R v| over clean eigenvectors v and the combinations
  /// R = F_i +/- i F_j whose image is clean as well.
  double max_image_residual = 0.0;
};

struct CommutantReport {
  TruncationConfig config;
  /// max over i of the interior residual of [H_alpha, F_alpha_i].
  double conservation_residual = 0.0;
  /// max over i, j of the interior residual of [F_i, F_j] - i alpha_ij.
  double algebra_residual = 0.0;
  /// max over i of |assemble(F_i) - assemble(F'_i)|; zero exactly when alpha = 0.
  double f_fprime_difference = 0.0;
  double hermiticity_defect = 0.0;
  std::vector<double> lowest_eigenvalues;
  std::vector<LevelMapping> levels;
};

/// Numerical commutant checks for H_alpha on charges.n() modes. Level analysis (which
/// needs eigenvectors) covers the lowest `levels` distinct levels of the canonical form;
/// eigenvalues within level_tol of a level count toward its multiplicity.
CommutantReport commutant_multiplicity_check(const CentralCharges& charges,
                                             const TruncationConfig& config,
                                             std::size_t levels = 2, double level_tol = 1e-6,
                                             std::size_t k_lowest = 10);

}  // namespace anomint
