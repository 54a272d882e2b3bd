#include "anomint/weyl_group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "anomint/skew_canonical.hpp"

namespace anomint {

SignedPermutation::SignedPermutation(std::vector<std::size_t> perm, std::vector<int> signs)
    : perm_(std::move(perm)), signs_(std::move(signs)) {
  if (perm_.size() != signs_.size()) throw DimensionMismatch("perm and signs differ in length");
  std::vector<bool> seen(perm_.size(), false);
  for (auto p : perm_) {
    if (p >= perm_.size() || seen[p]) throw InvalidArgument("not a permutation");
    seen[p] = true;
  }
  for (int s : signs_) {
    if (s != 1 && s != -1) throw InvalidArgument("signs must be +1 or -1");
  }
}

SignedPermutation SignedPermutation::identity(std::size_t l) {
  std::vector<std::size_t> perm(l);
  std::iota(perm.begin(), perm.end(), 0);
  return {std::move(perm), std::vector<int>(l, 1)};
}

std::size_t SignedPermutation::flip_count() const {
  return static_cast<std::size_t>(std::count(signs_.begin(), signs_.end(), -1));
}

SignedPermutation SignedPermutation::inverse() const {
  const std::size_t l = size();
  std::vector<std::size_t> perm(l);
  std::vector<int> signs(l);
  for (std::size_t j = 0; j < l; ++j) {
    perm[perm_[j]] = j;
    // W_{perm(j), j} = s_{perm(j)}; the transpose has the same sign at (j, perm(j)).
    signs[j] = signs_[perm_[j]];
  }
  return {std::move(perm), std::move(signs)};
}

SignedPermutation operator*(const SignedPermutation& a, const SignedPermutation& b) {
  if (a.size() != b.size()) throw DimensionMismatch("composing elements of different rank");
  const std::size_t l = a.size();
  std::vector<std::size_t> perm(l);
  std::vector<int> signs(l);
  for (std::size_t j = 0; j < l; ++j) perm[j] = a.perm_[b.perm_[j]];
  // s_k = a.s_k * b.s_{a^{-1}(k)}
  for (std::size_t m = 0; m < l; ++m) signs[a.perm_[m]] = a.signs_[a.perm_[m]] * b.signs_[m];
  return {std::move(perm), std::move(signs)};
}

Eigen::MatrixXd SignedPermutation::small_matrix() const {
  const auto l = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(l, l);
  for (std::size_t j = 0; j < size(); ++j) {
    const auto k = perm_[j];
    w(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = signs_[k];
  }
  return w;
}

Eigen::MatrixXd SignedPermutation::cartan_matrix() const {
  const auto l = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * l, 2 * l);
  for (std::size_t j = 0; j < size(); ++j) {
    const auto k = static_cast<Eigen::Index>(perm_[j]);
    const auto jj = static_cast<Eigen::Index>(j);
    m(k, jj) = 1.0;
    m(l + k, l + jj) = signs_[perm_[j]];
  }
  return m;
}

std::string SignedPermutation::to_string() const {
  std::string out = "[";
  for (std::size_t j = 0; j < size(); ++j) {
    if (j) out += ",";
    out += std::to_string(perm_[j] + 1);
  }
  out += "|";
  for (std::size_t j = 0; j < size(); ++j) {
    if (j) out += ",";
    out += signs_[j] > 0 ? "+" : "-";
  }
  return out + "]";
}

const char* to_string(WeylType t) { return t == WeylType::kD ? "D" : "B"; }

WeylType parse_weyl_type(const std::string& text) {
  if (text == "D") return WeylType::kD;
  if (text == "B") return WeylType::kB;
  throw InvalidArgument("group must be 'D' or 'B', got '" + text + "'");
}

std::vector<SignedPermutation> generate_weyl_group(std::size_t l, WeylType type,
                                                   std::size_t max_rank) {
  if (l == 0) throw InvalidArgument("Weyl group rank must be positive");
  if (l > max_rank) {
    throw InvalidArgument("rank " + std::to_string(l) + " exceeds the enumeration bound " +
                          std::to_string(max_rank));
  }
  std::vector<SignedPermutation> out;
  std::vector<std::size_t> perm(l);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    // Sign patterns in lexicographic order with '+' < '-': bit (l-1-k) set means s_k = -1.
    for (std::size_t mask = 0; mask < (std::size_t{1} << l); ++mask) {
      std::vector<int> signs(l);
      std::size_t flips = 0;
      for (std::size_t k = 0; k < l; ++k) {
        const bool minus = (mask >> (l - 1 - k)) & 1U;
        signs[k] = minus ? -1 : 1;
        flips += minus;
      }
      if (type == WeylType::kD && flips % 2 != 0) continue;
      out.emplace_back(perm, std::move(signs));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Eigen::MatrixXd act_on_cartan(const SignedPermutation& w, const Eigen::MatrixXd& c, double tol) {
  if (!assert_cartan_form(c, tol)) throw InvalidArgument("matrix is not in Cartan form");
  if (c.rows() != static_cast<Eigen::Index>(2 * w.size())) {
    throw DimensionMismatch("Cartan matrix size does not match group rank");
  }
  const Eigen::MatrixXd m = w.cartan_matrix();
  return m * c * m.transpose();
}

std::vector<std::size_t> orbit_sizes(const ModeQuanta& quanta,
                                     const std::vector<Occupation>& tuples) {
  const std::size_t l = quanta.modes();
  // Mode permutations preserving the spacing vector.
  std::vector<std::vector<std::size_t>> symmetries;
  std::vector<std::size_t> perm(l);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool keeps = true;
    for (std::size_t k = 0; k < l && keeps; ++k) keeps = quanta.epsilon[perm[k]] == quanta.epsilon[k];
    if (keeps) symmetries.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::set<Occupation> remaining(tuples.begin(), tuples.end());
  std::vector<std::size_t> sizes;
  while (!remaining.empty()) {
    const Occupation seed = *remaining.begin();
    std::set<Occupation> orbit;
    for (const auto& s : symmetries) {
      Occupation image(l);
      for (std::size_t k = 0; k < l; ++k) image[s[k]] = seed[k];
      orbit.insert(image);
    }
    for (const auto& t : orbit) {
      if (remaining.erase(t) == 0) {
        throw NumericalFailure("tuple set is not a union of symmetry orbits");
      }
    }
    sizes.push_back(orbit.size());
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

bool InvarianceReport::all_invariant() const {
  return std::all_of(invariant.begin(), invariant.end(), [](bool b) { return b; });
}

InvarianceReport verify_spectrum_invariance(const std::vector<Rational>& beta,
                                            Normalization normalization, const Rational& e_max,
                                            WeylType type, std::size_t max_rank) {
  InvarianceReport report;
  report.type = type;
  report.elements = generate_weyl_group(beta.size(), type, max_rank);
  report.group_order = report.elements.size();

  const ModeQuanta base_quanta = mode_quanta(beta, normalization);
  const SpectrumTable base = enumerate_levels(base_quanta, e_max);
  report.level_count = base.levels.size();
  auto signature = [](const SpectrumTable& t) {
    std::vector<std::pair<Rational, std::size_t>> sig;
    for (const auto& level : t.levels) sig.emplace_back(level.energy, level.degeneracy());
    return sig;
  };
  const auto base_sig = signature(base);

  for (const auto& w : report.elements) {
    const SpectrumTable image = enumerate_levels(mode_quanta(act_on_beta(w, beta), normalization), e_max);
    report.invariant.push_back(signature(image) == base_sig);
  }
  for (const auto& level : base.levels) {
    report.orbits.push_back({level.energy, level.degeneracy(), orbit_sizes(base_quanta, level.tuples)});
  }
  return report;
}

}  // namespace anomint
