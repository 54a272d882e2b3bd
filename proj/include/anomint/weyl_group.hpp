#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

#include "anomint/errors.hpp"
#include "anomint/spectrum.hpp"

namespace anomint {

/// Signed permutation w acting on R^l by (w beta)_k = signs[k] * beta[perm^{-1}(k)].
/// Composition (a * b) acts as "apply b, then a".
class SignedPermutation {
 public:
  SignedPermutation(std::vector<std::size_t> perm, std::vector<int> signs);

  static SignedPermutation identity(std::size_t l);

  std::size_t size() const { return perm_.size(); }
  const std::vector<std::size_t>& perm() const { return perm_; }
  const std::vector<int>& signs() const { return signs_; }

  std::size_t flip_count() const;
  /// Even number of sign flips, i.e. an element of the SO(2l) Weyl group D_l.
  bool is_even() const { return flip_count() % 2 == 0; }

  SignedPermutation inverse() const;
  friend SignedPermutation operator*(const SignedPermutation& a, const SignedPermutation& b);
  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;

  /// l x l signed permutation matrix W with W beta = act_on_beta(*this, beta).
  Eigen::MatrixXd small_matrix() const;
  /// 2l x 2l block matrix diag(P, S P) realizing the action on (I, J) pairs.
  Eigen::MatrixXd cartan_matrix() const;

  /// "[2,1|+,-]" with 1-based images.
  std::string to_string() const;

 private:
  std::vector<std::size_t> perm_;
  std::vector<int> signs_;
};

/// kD: even sign flips (Weyl group of SO(2l), order 2^{l-1} l!).
/// kB: all sign flips (hyperoctahedral group, order 2^l l!).
enum class WeylType { kD, kB };

const char* to_string(WeylType t);
WeylType parse_weyl_type(const std::string& text);

constexpr std::size_t kDefaultMaxRank = 6;

/// Whole group in lexicographic (perm, signs) order with '+' before '-'; identity first.
/// Throws InvalidArgument for l == 0 or l > max_rank.
std::vector<SignedPermutation> generate_weyl_group(std::size_t l, WeylType type = WeylType::kD,
                                                   std::size_t max_rank = kDefaultMaxRank);

template <typename T>
std::vector<T> act_on_beta(const SignedPermutation& w, const std::vector<T>& beta) {
  if (beta.size() != w.size()) throw DimensionMismatch("beta length does not match group rank");
  std::vector<T> out(beta.size());
  for (std::size_t j = 0; j < beta.size(); ++j) {
    const std::size_t k = w.perm()[j];
    out[k] = beta[j];
    if (w.signs()[k] < 0) out[k] = -out[k];
  }
  return out;
}

/// M_w C M_w^T. Throws InvalidArgument when c is not in Cartan form within tol.
Eigen::MatrixXd act_on_cartan(const SignedPermutation& w, const Eigen::MatrixXd& c,
                              double tol = 1e-12);

struct OrbitSummary {
  Rational energy;
  std::size_t degeneracy = 0;
  std::vector<std::size_t> orbit_sizes;  // descending
};

struct InvarianceReport {
  std::size_t group_order = 0;
  WeylType type = WeylType::kD;
  std::vector<SignedPermutation> elements;
  std::vector<bool> invariant;  // per element
  std::vector<OrbitSummary> orbits;
  std::size_t level_count = 0;

  bool all_invariant() const;
};

/// Compares the (energy, degeneracy) table of every group image of beta with that of beta,
/// and decomposes each level's tuple set into orbits of the mode permutations that fix
/// the spacings.
InvarianceReport verify_spectrum_invariance(const std::vector<Rational>& beta,
                                            Normalization normalization, const Rational& e_max,
                                            WeylType type = WeylType::kD,
                                            std::size_t max_rank = kDefaultMaxRank);

/// Orbits of occupation tuples under permutations of modes with equal spacing.
std::vector<std::size_t> orbit_sizes(const ModeQuanta& quanta, const std::vector<Occupation>& tuples);

}  // namespace anomint
