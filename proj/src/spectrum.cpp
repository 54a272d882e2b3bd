#include "anomint/spectrum.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "anomint/errors.hpp"

namespace anomint {

namespace {

constexpr std::int64_t kIntLimit = std::int64_t{1} << 60;

std::int64_t to_int64(const mpz_class& z, const char* what) {
  if (abs(z) > mpz_class(static_cast<long>(kIntLimit))) {
    throw InvalidArgument(std::string(what) + " exceeds the 64-bit enumeration range");
  }
  return static_cast<std::int64_t>(z.get_si());
}

// Spacings scaled by the lcm of their denominators, so every level offset is an integer.
struct ScaledQuanta {
  mpz_class denominator;
  std::vector<std::int64_t> weights;
};

ScaledQuanta scale(const ModeQuanta& quanta) {
  ScaledQuanta s;
  s.denominator = 1;
  for (const auto& e : quanta.epsilon) {
    mpz_lcm(s.denominator.get_mpz_t(), s.denominator.get_mpz_t(), e.get_den_mpz_t());
  }
  for (const auto& e : quanta.epsilon) {
    const mpz_class w = e.get_num() * (s.denominator / e.get_den());
    s.weights.push_back(to_int64(w, "scaled spacing"));
  }
  return s;
}

// Integer offset (energy - zero_point) * denominator, or -1 when energy is not reachable
// by any integer combination at that scale.
std::int64_t scaled_offset(const ModeQuanta& quanta, const mpz_class& denominator,
                           const Rational& energy) {
  const Rational offset = (energy - quanta.zero_point) * Rational(denominator);
  if (sgn(offset) < 0 || offset.get_den() != 1) return -1;
  return to_int64(offset.get_num(), "energy offset");
}

std::vector<std::size_t> descending_order(const std::vector<std::int64_t>& weights) {
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&weights](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  return order;
}

}  // namespace

const char* to_string(Normalization n) { return n == Normalization::kPaper ? "paper" : "oracle"; }

Normalization parse_normalization(const std::string& text) {
  if (text == "paper") return Normalization::kPaper;
  if (text == "oracle") return Normalization::kOracle;
  throw InvalidArgument("normalization must be 'paper' or 'oracle', got '" + text + "'");
}

ModeQuanta mode_quanta(const std::vector<Rational>& beta, Normalization normalization) {
  if (beta.empty()) throw InvalidArgument("mode quanta need at least one frequency");
  ModeQuanta q;
  q.normalization = normalization;
  for (const auto& b : beta) {
    if (sgn(b) == 0) throw InvalidArgument("zero frequency component");
    const Rational magnitude = abs(b);
    q.epsilon.push_back(normalization == Normalization::kPaper ? Rational(magnitude * magnitude)
                                                               : Rational(2 * magnitude));
  }
  q.zero_point = 0;
  for (const auto& e : q.epsilon) q.zero_point += e;
  q.zero_point /= 2;
  return q;
}

ModeQuanta quanta_from_spacings(std::vector<Rational> epsilon) {
  if (epsilon.empty()) throw InvalidArgument("mode quanta need at least one spacing");
  ModeQuanta q;
  q.zero_point = 0;
  for (auto& e : epsilon) {
    e.canonicalize();
    if (sgn(e) <= 0) throw InvalidArgument("level spacings must be positive");
    q.zero_point += e;
  }
  q.zero_point /= 2;
  q.epsilon = std::move(epsilon);
  return q;
}

Rational level_energy(const ModeQuanta& quanta, const Occupation& nu) {
  if (nu.size() != quanta.modes()) throw DimensionMismatch("occupation tuple length mismatch");
  Rational e = quanta.zero_point;
  for (std::size_t k = 0; k < nu.size(); ++k) e += quanta.epsilon[k] * nu[k];
  return e;
}

std::uint64_t SpectrumTable::total_states() const {
  std::uint64_t total = 0;
  for (const auto& level : levels) total += level.degeneracy();
  return total;
}

SpectrumTable enumerate_levels(const ModeQuanta& quanta, const Rational& e_max,
                               std::uint64_t max_states) {
  SpectrumTable table;
  table.e_max = e_max;
  table.e_max.canonicalize();
  const ScaledQuanta s = scale(quanta);
  const Rational offset = (table.e_max - quanta.zero_point) * Rational(s.denominator);
  if (sgn(offset) < 0) return table;
  const mpz_class budget_z = offset.get_num() / offset.get_den();  // floor, offset >= 0
  const std::int64_t budget = to_int64(budget_z, "energy cutoff");

  const std::size_t l = quanta.modes();
  const auto order = descending_order(s.weights);
  std::map<std::int64_t, std::vector<Occupation>> by_energy;
  Occupation nu(l, 0);
  std::uint64_t states = 0;

  // Depth-first over modes, largest spacing first.
  auto visit = [&](auto&& self, std::size_t depth, std::int64_t used) -> void {
    if (depth == l) {
      if (++states > max_states) {
        throw InvalidArgument("spectrum enumeration exceeds " + std::to_string(max_states) +
                              " states; lower the energy cutoff");
      }
      by_energy[used].push_back(nu);
      return;
    }
    const std::size_t mode = order[depth];
    const std::int64_t w = s.weights[mode];
    for (std::int64_t k = 0; used + k * w <= budget; ++k) {
      nu[mode] = static_cast<unsigned>(k);
      self(self, depth + 1, used + k * w);
    }
    nu[mode] = 0;
  };
  visit(visit, 0, 0);

  table.levels.reserve(by_energy.size());
  for (auto& [scaled, tuples] : by_energy) {
    std::sort(tuples.begin(), tuples.end());
    Level level;
    level.energy = quanta.zero_point + Rational(mpz_class(static_cast<long>(scaled)), s.denominator);
    level.energy.canonicalize();
    level.tuples = std::move(tuples);
    table.levels.push_back(std::move(level));
  }
  return table;
}

Degeneracy degeneracy_of(const ModeQuanta& quanta, const Rational& energy_in) {
  Rational energy = energy_in;
  energy.canonicalize();
  Degeneracy out;
  const ScaledQuanta s = scale(quanta);
  const std::int64_t target = scaled_offset(quanta, s.denominator, energy);
  if (target < 0) return out;

  const std::size_t l = quanta.modes();
  const auto order = descending_order(s.weights);
  Occupation nu(l, 0);

  // All modes but the last are iterated; the last one is fixed by divisibility.
  auto visit = [&](auto&& self, std::size_t depth, std::int64_t remaining) -> void {
    const std::size_t mode = order[depth];
    const std::int64_t w = s.weights[mode];
    if (depth + 1 == l) {
      if (remaining % w == 0) {
        nu[mode] = static_cast<unsigned>(remaining / w);
        out.tuples.push_back(nu);
        nu[mode] = 0;
      }
      return;
    }
    for (std::int64_t k = 0; k * w <= remaining; ++k) {
      nu[mode] = static_cast<unsigned>(k);
      self(self, depth + 1, remaining - k * w);
    }
    nu[mode] = 0;
  };
  visit(visit, 0, target);

  std::sort(out.tuples.begin(), out.tuples.end());
  out.count = out.tuples.size();
  return out;
}

std::uint64_t brute_force_count(const ModeQuanta& quanta, const Rational& energy_in) {
  Rational energy = energy_in;
  energy.canonicalize();
  const std::size_t l = quanta.modes();
  // Twice the energy over the product of all denominators is integral at every lattice point.
  mpz_class common = 2;
  for (const auto& e : quanta.epsilon) common *= e.get_den();
  const Rational target_q = energy * Rational(common);
  if (target_q.get_den() != 1) return 0;
  const std::int64_t target = to_int64(target_q.get_num(), "energy");

  std::vector<std::int64_t> w(l);
  std::int64_t ground = 0;
  for (std::size_t k = 0; k < l; ++k) {
    const Rational scaled = quanta.epsilon[k] * Rational(common);
    w[k] = to_int64(scaled.get_num(), "spacing");
    ground += w[k] / 2;
  }
  if (target < ground) return 0;

  // Odometer over (nu_0, ..., nu_{l-1}); each digit runs while the partial sum fits.
  std::uint64_t count = 0;
  std::vector<std::int64_t> nu(l, 0);
  std::vector<std::int64_t> partial(l + 1, ground);
  std::size_t k = 0;
  while (true) {
    if (k == l) {
      if (partial[l] == target) ++count;
      // carry
      std::size_t j = l;
      while (j > 0) {
        --j;
        ++nu[j];
        partial[j + 1] = partial[j] + nu[j] * w[j];
        if (partial[j + 1] <= target) break;
        nu[j] = 0;
        partial[j + 1] = partial[j];
        if (j == 0) return count;
      }
      k = j + 1;
      continue;
    }
    nu[k] = 0;
    partial[k + 1] = partial[k];
    ++k;
  }
}

}  // namespace anomint
