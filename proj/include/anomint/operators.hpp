#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "anomint/central_charges.hpp"
#include "anomint/weyl_polynomial.hpp"

namespace anomint {

/// P_i + (1/2) sum_j alpha_ij Q_j: the sector's realization of the symmetry generator X_i.
WeylPolynomial build_F_alpha(const CentralCharges& charges, std::size_t i);

/// P_i - (1/2) sum_j alpha_ij Q_j: generators of the commuting copy with charges -alpha.
WeylPolynomial build_F_prime_alpha(const CentralCharges& charges, std::size_t i);

enum class HamiltonianVariant { kAnomalous, kNaive };

/// kAnomalous: sum_i (F'_i)^2. kNaive: sum_i P_i^2.
WeylPolynomial build_H(const CentralCharges& charges, HamiltonianVariant variant);

/// sum_k beta_k (Q_k^2 + P_k^2) on l generators: the oscillator form I_k^2 + J_k^2 with
/// I_k = sqrt(beta_k) Q_k, J_k = sqrt(beta_k) P_k, so that [I_k, J_k] = i beta_k.
WeylPolynomial build_canonical_hamiltonian(const std::vector<Rational>& beta);

struct IdentityResidual {
  std::string family;
  std::size_t i = 0;
  std::size_t j = 0;  // unused (0) for single-index families
  WeylPolynomial value;
};

/// Residual polynomials of every commutator identity of the sector. All are exactly
/// zero for well-formed charges; nonzero residuals are reported, never thrown.
struct IdentityReport {
  std::vector<IdentityResidual> residuals;

  bool all_zero() const;
  std::size_t nonzero_count() const;
  std::vector<std::string> families() const;
};

/// Families, in order:
///   FF        [F_i, F_j] - i alpha_ij
///   F'F       [F'_i, F_j]
///   F'F'      [F'_i, F'_j] + i alpha_ij
///   FQ        [F_i, Q_j] + i delta_ij
///   conservation   [H_alpha, F_i]
///   anomaly   [H_0, F_i] + i alpha_ij P_j     (i.e. [H_0, F_i] = -alpha_ij d/dq_j)
///   Qdot      i[H_alpha, Q_i] - 2 F'_i
///   F'dot     2i[H_alpha, F'_i] + 4 alpha_ij F'_j
IdentityReport verify_identity_suite(const CentralCharges& charges);

/// sum_j alpha_ij P_j, the generator that appears in the anomaly.
WeylPolynomial anomaly_term(const CentralCharges& charges, std::size_t i);

}  // namespace anomint
