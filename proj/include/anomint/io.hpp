#pragma once

#include <json.hpp>

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "anomint/central_charges.hpp"
#include "anomint/dynamics.hpp"
#include "anomint/fock.hpp"
#include "anomint/operators.hpp"
#include "anomint/skew_canonical.hpp"
#include "anomint/spectrum.hpp"
#include "anomint/weyl_group.hpp"

namespace anomint {

/// Parsed charge-matrix document {"n": even int, "alpha": [...]}. "alpha" is either a flat
/// row-major array of n*n entries or n rows of n entries; each entry is a JSON number or a
/// rational string "p/q".
struct ChargeFile {
  std::size_t n = 0;
  Eigen::MatrixXd numeric;
  /// Exact entries when every entry is a string rational or a JSON integer.
  std::optional<CentralCharges> exact;

  /// Throws InvalidArgument when some entry is a non-integer float.
  const CentralCharges& require_exact() const;
};

/// Validates shape, evenness and antisymmetry (1e-12 relative for floats, exact otherwise).
/// Throws ParseError, OddDimension or NotAntisymmetric.
ChargeFile parse_charge_file(const nlohmann::json& doc);
ChargeFile load_charge_file(const std::string& path);

/// Best rational approximation with denominator <= max_denominator (continued fractions).
Rational best_rational_approximation(double x, long max_denominator);

/// "1,2,3/2" -> {1, 2, 3/2}.
std::vector<Rational> parse_rational_list(const std::string& text);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);  // row-major nested arrays
std::string rational_string(const Rational& r);

nlohmann::json to_json(const CanonicalForm& form);
nlohmann::json to_json(const SpectrumTable& table, const ModeQuanta& quanta);
nlohmann::json to_json(const IdentityReport& report);
nlohmann::json to_json(const InvarianceReport& report);
nlohmann::json to_json(const CommutantReport& report);
nlohmann::json to_json(const CoefficientState& state);

/// Columns: E ("p/q"), degeneracy, tuples ("(0,1);(2,0)").
std::string spectrum_tsv(const SpectrumTable& table);
/// Columns: E (decimal), E_exact, degeneracy.
std::string spectrum_csv(const SpectrumTable& table);

}  // namespace anomint
