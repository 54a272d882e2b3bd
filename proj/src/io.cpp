#include "anomint/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "anomint/errors.hpp"
#include "anomint/linalg.hpp"

namespace anomint {

using nlohmann::json;

const CentralCharges& ChargeFile::require_exact() const {
  if (!exact) {
    throw InvalidArgument("this operation needs exact charges: give entries as \"p/q\" strings "
                          "or integers");
  }
  return *exact;
}

ChargeFile parse_charge_file(const json& doc) {
  if (!doc.is_object()) throw ParseError("charge file must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw ParseError("charge file needs an integer field \"n\"");
  }
  if (!doc.contains("alpha") || !doc["alpha"].is_array()) {
    throw ParseError("charge file needs an array field \"alpha\"");
  }
  const auto n_signed = doc["n"].get<long long>();
  if (n_signed <= 0) throw ParseError("\"n\" must be positive");
  const auto n = static_cast<std::size_t>(n_signed);
  if (n % 2 != 0) throw OddDimension("\"n\" must be even, got " + std::to_string(n));

  std::vector<json> entries;
  const json& alpha = doc["alpha"];
  if (alpha.size() == n && !alpha.empty() && alpha[0].is_array()) {
    for (const auto& row : alpha) {
      if (!row.is_array() || row.size() != n) throw ParseError("\"alpha\" rows must have n entries");
      for (const auto& e : row) entries.push_back(e);
    }
  } else {
    for (const auto& e : alpha) entries.push_back(e);
  }
  if (entries.size() != n * n) {
    throw ParseError("\"alpha\" must hold n*n = " + std::to_string(n * n) + " entries");
  }

  ChargeFile file;
  file.n = n;
  file.numeric.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<Rational> exact;
  bool all_exact = true;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const json& e = entries[k];
    const auto r = static_cast<Eigen::Index>(k / n);
    const auto c = static_cast<Eigen::Index>(k % n);
    if (e.is_string()) {
      const Rational q = parse_rational(e.get<std::string>());
      exact.push_back(q);
      file.numeric(r, c) = q.get_d();
    } else if (e.is_number_integer()) {
      const Rational q(e.get<long>());
      exact.push_back(q);
      file.numeric(r, c) = q.get_d();
    } else if (e.is_number()) {
      all_exact = false;
      file.numeric(r, c) = e.get<double>();
    } else {
      throw ParseError("\"alpha\" entries must be numbers or \"p/q\" strings");
    }
  }

  if (all_exact) {
    file.exact.emplace(n, std::move(exact));  // exact antisymmetry check
  } else {
    const double scale = std::max(1.0, max_abs(file.numeric));
    if (max_abs(Eigen::MatrixXd(file.numeric + file.numeric.transpose())) > 1e-12 * scale) {
      throw NotAntisymmetric("charge matrix is not antisymmetric within 1e-12");
    }
  }
  return file;
}

ChargeFile load_charge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open charge file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
  return parse_charge_file(doc);
}

Rational best_rational_approximation(double x, long max_denominator) {
  if (max_denominator < 1) throw InvalidArgument("denominator bound must be positive");
  if (!std::isfinite(x)) throw InvalidArgument("cannot rationalize a non-finite value");
  // Convergents h/k of the continued fraction of |x|, then the best semiconvergent.
  const bool negative = x < 0;
  const Rational target(std::abs(x));
  Rational rem = target;
  mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;
  Rational best(0);
  while (true) {
    const mpz_class a = rem.get_num() / rem.get_den();
    const mpz_class h_next = a * h_prev + h;
    const mpz_class k_next = a * k_prev + k;
    if (k_next > max_denominator) {
      // Largest t with t*k_prev + k <= bound gives the semiconvergent candidate.
      const mpz_class t = (mpz_class(max_denominator) - k) / k_prev;
      Rational semi(t * h_prev + h, t * k_prev + k);
      Rational conv(h_prev, k_prev);
      semi.canonicalize();
      conv.canonicalize();
      best = abs(Rational(semi - target)) < abs(Rational(conv - target)) ? semi : conv;
      break;
    }
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    const Rational frac = rem - Rational(a);
    if (sgn(frac) == 0) {
      best = Rational(h_prev, k_prev);
      break;
    }
    rem = 1 / frac;
  }
  best.canonicalize();
  return negative ? Rational(-best) : best;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw ParseError("empty entry in list '" + text + "'");
    out.push_back(parse_rational(item.substr(first, last - first + 1)));
  }
  if (out.empty()) throw ParseError("empty list");
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string rational_string(const Rational& r) {
  // Always "p/q" so consumers need a single parser.
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

json to_json(const CanonicalForm& form) {
  return {{"M", matrix_to_json(form.M)},
          {"beta", form.beta},
          {"detM", form.detM},
          {"C", matrix_to_json(form.C)}};
}

namespace {

std::string tuple_string(const Occupation& nu) {
  std::string out = "(";
  for (std::size_t k = 0; k < nu.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(nu[k]);
  }
  return out + ")";
}

}  // namespace

json to_json(const SpectrumTable& table, const ModeQuanta& quanta) {
  json eps = json::array();
  for (const auto& e : quanta.epsilon) eps.push_back(rational_string(e));
  json levels = json::array();
  for (const auto& level : table.levels) {
    json tuples = json::array();
    for (const auto& t : level.tuples) tuples.push_back(t);
    levels.push_back({{"E", rational_string(level.energy)},
                      {"degeneracy", level.degeneracy()},
                      {"tuples", std::move(tuples)}});
  }
  return {{"normalization", to_string(quanta.normalization)},
          {"epsilon", std::move(eps)},
          {"zero_point", rational_string(quanta.zero_point)},
          {"E_max", rational_string(table.e_max)},
          {"total_states", table.total_states()},
          {"levels", std::move(levels)}};
}

json to_json(const IdentityReport& report) {
  json families = json::array();
  for (const auto& family : report.families()) {
    std::size_t checked = 0;
    json nonzero = json::array();
    for (const auto& r : report.residuals) {
      if (r.family != family) continue;
      ++checked;
      if (!r.value.is_zero()) {
        nonzero.push_back({{"i", r.i + 1}, {"j", r.j + 1}, {"residual", r.value.to_string()}});
      }
    }
    families.push_back({{"family", family},
                        {"checked", checked},
                        {"all_zero", nonzero.empty()},
                        {"nonzero", std::move(nonzero)}});
  }
  return {{"all_zero", report.all_zero()},
          {"nonzero_count", report.nonzero_count()},
          {"families", std::move(families)}};
}

json to_json(const InvarianceReport& report) {
  json elements = json::array();
  for (std::size_t k = 0; k < report.elements.size(); ++k) {
    elements.push_back({{"element", report.elements[k].to_string()},
                        {"invariant", static_cast<bool>(report.invariant[k])}});
  }
  json orbits = json::array();
  for (const auto& o : report.orbits) {
    orbits.push_back({{"E", rational_string(o.energy)},
                      {"degeneracy", o.degeneracy},
                      {"orbit_sizes", o.orbit_sizes}});
  }
  return {{"group", to_string(report.type)},
          {"group_order", report.group_order},
          {"level_count", report.level_count},
          {"all_invariant", report.all_invariant()},
          {"elements", std::move(elements)},
          {"orbits", std::move(orbits)}};
}

json to_json(const CommutantReport& report) {
  json levels = json::array();
  for (const auto& l : report.levels) {
    levels.push_back({{"E", l.energy},
                      {"multiplicity", l.multiplicity},
                      {"clean_vectors", l.clean_vectors},
                      {"mapped_images", l.mapped_images},
                      {"max_image_residual", l.max_image_residual}});
  }
  return {{"conservation_residual", report.conservation_residual},
          {"algebra_residual", report.algebra_residual},
          {"f_fprime_difference", report.f_fprime_difference},
          {"hermiticity_defect", report.hermiticity_defect},
          {"lowest_eigenvalues", report.lowest_eigenvalues},
          {"levels", std::move(levels)}};
}

json to_json(const CoefficientState& state) {
  return {{"t", state.t},
          {"fprime_coeffs", matrix_to_json(state.fprime_coeffs)},
          {"q_offsets", matrix_to_json(state.q_offsets)}};
}

std::string spectrum_tsv(const SpectrumTable& table) {
  std::string out = "E\tdegeneracy\ttuples\n";
  for (const auto& level : table.levels) {
    out += rational_string(level.energy) + "\t" + std::to_string(level.degeneracy()) + "\t";
    for (std::size_t k = 0; k < level.tuples.size(); ++k) {
      if (k) out += ";";
      out += tuple_string(level.tuples[k]);
    }
    out += "\n";
  }
  return out;
}

std::string spectrum_csv(const SpectrumTable& table) {
  std::ostringstream out;
  out.precision(17);
  out << "E,E_exact,degeneracy\n";
  for (const auto& level : table.levels) {
    out << level.energy.get_d() << "," << rational_string(level.energy) << ","
        << level.degeneracy() << "\n";
  }
  return out.str();
}

}  // namespace anomint
