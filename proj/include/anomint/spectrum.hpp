#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "anomint/scalar.hpp"

namespace anomint {

/// kPaper: epsilon_k = beta_k^2. kOracle: epsilon_k = 2|beta_k|, the spacing obtained by
/// diagonalizing I^2 + J^2 with [I, J] = i beta.
enum class Normalization { kPaper, kOracle };

const char* to_string(Normalization n);
Normalization parse_normalization(const std::string& text);

/// Per-mode level spacings; every level is sum_k epsilon_k (nu_k + 1/2).
struct ModeQuanta {
  std::vector<Rational> epsilon;
  Rational zero_point;
  Normalization normalization = Normalization::kOracle;

  std::size_t modes() const { return epsilon.size(); }
};

/// Throws InvalidArgument on an empty vector or a zero component.
ModeQuanta mode_quanta(const std::vector<Rational>& beta, Normalization normalization);

/// Quanta with explicitly given positive spacings (normalization recorded as kOracle).
ModeQuanta quanta_from_spacings(std::vector<Rational> epsilon);

using Occupation = std::vector<unsigned>;

struct Level {
  Rational energy;
  std::vector<Occupation> tuples;  // lexicographic

  std::size_t degeneracy() const { return tuples.size(); }
};

struct SpectrumTable {
  std::vector<Level> levels;  // strictly increasing energy
  Rational e_max;

  std::uint64_t total_states() const;
};

/// Every level with energy <= e_max together with all of its occupation tuples.
/// An e_max below the ground level yields an empty table. Throws InvalidArgument if
/// more than max_states lattice points lie below e_max.
SpectrumTable enumerate_levels(const ModeQuanta& quanta, const Rational& e_max,
                               std::uint64_t max_states = 20'000'000);

struct Degeneracy {
  std::uint64_t count = 0;
  std::vector<Occupation> tuples;  // lexicographic
};

/// Occupation tuples with sum_k epsilon_k (nu_k + 1/2) == energy exactly.
Degeneracy degeneracy_of(const ModeQuanta& quanta, const Rational& energy);

/// Exhaustive nested iteration over all occupation tuples whose partial energy stays
/// within budget; independent of degeneracy_of and enumerate_levels.
std::uint64_t brute_force_count(const ModeQuanta& quanta, const Rational& energy);

/// Energy of a tuple.
Rational level_energy(const ModeQuanta& quanta, const Occupation& nu);

}  // namespace anomint
