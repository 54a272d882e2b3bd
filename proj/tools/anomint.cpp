// Command-line front end. Every subcommand prints one JSON RunReport; exit status is
// 0 when all checks pass, 1 when a check fails, 2 on invalid input.

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "anomint/dynamics.hpp"
#include "anomint/errors.hpp"
#include "anomint/fock.hpp"
#include "anomint/io.hpp"
#include "anomint/linalg.hpp"
#include "anomint/operators.hpp"
#include "anomint/skew_canonical.hpp"
#include "anomint/spectrum.hpp"
#include "anomint/weyl_group.hpp"

namespace {

using nlohmann::json;
using namespace anomint;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

// Largest dense H_alpha the fock-check subcommand will build.
constexpr std::size_t kMaxFockDim = 4096;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int k = 0; k < len; ++k) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
}

std::size_t max_rank_from_env() {
  const char* raw = std::getenv("ANOMINT_MAX_L");
  if (raw == nullptr || *raw == '\0') return kDefaultMaxRank;
  try {
    const long v = std::stol(raw);
    if (v < 1) throw InvalidArgument("ANOMINT_MAX_L must be positive");
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw InvalidArgument(std::string("ANOMINT_MAX_L is not an integer: ") + raw);
  }
}

struct Outcome {
  json parameters;
  json results;
  bool pass = true;
  std::string input;  // raw input bytes folded into the digest
};

struct Options {
  std::string alpha_file;
  std::string beta;
  std::string normalization = "oracle";
  std::string emax;
  std::string group = "D";
  std::string out;
  std::string tsv;
  std::string csv;
  double tol = 1e-12;
  long rationalize = 0;
  std::size_t pairs = 0;
  std::size_t nmax = 12;
  std::size_t margin = 4;
  std::size_t k_lowest = 10;
  std::size_t levels = 2;
  double t = 1.0;
  std::size_t steps = 100;
  std::size_t samples = 20;
};

// ---------------------------------------------------------------------------

Outcome run_canonicalize(const Options& o) {
  Outcome out;
  out.input = read_file(o.alpha_file);
  const ChargeFile file = parse_charge_file(json::parse(out.input));
  out.parameters = {{"tol", o.tol}};
  CanonicalizeOptions opts;
  opts.singular_tol = o.tol;
  const CanonicalForm form = canonicalize(file.numeric, opts);
  const auto n = file.numeric.rows();
  const double orth = max_abs(Eigen::MatrixXd(form.M * form.M.transpose() -
                                              Eigen::MatrixXd::Identity(n, n)));
  const double recon =
      max_abs(Eigen::MatrixXd(form.M * file.numeric * form.M.transpose() - form.C));
  const double scale = max_abs(file.numeric);
  out.results = to_json(form);
  out.results["orthogonality_defect"] = orth;
  out.results["reconstruction_defect"] = recon;
  out.pass = orth <= 1e-10 && recon <= 1e-10 * scale && assert_cartan_form(form.C, 0.0);
  return out;
}

Outcome run_verify_algebra(const Options& o) {
  Outcome out;
  out.input = read_file(o.alpha_file);
  const ChargeFile file = parse_charge_file(json::parse(out.input));
  const CentralCharges& charges = file.require_exact();
  const std::size_t n = charges.n();
  const IdentityReport report = verify_identity_suite(charges);
  json f = json::array();
  json fp = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    f.push_back(build_F_alpha(charges, i).to_string());
    fp.push_back(build_F_prime_alpha(charges, i).to_string());
  }
  out.parameters = json::object();
  out.results = to_json(report);
  out.results["operators"] = {
      {"F_alpha", std::move(f)},
      {"F_prime_alpha", std::move(fp)},
      {"H_alpha", build_H(charges, HamiltonianVariant::kAnomalous).to_string()},
      {"H_0", build_H(charges, HamiltonianVariant::kNaive).to_string()}};
  out.pass = report.all_zero();
  return out;
}

Outcome run_spectrum(const Options& o) {
  Outcome out;
  const Normalization norm = parse_normalization(o.normalization);
  if (o.emax.empty()) throw InvalidArgument("--emax is required");
  const Rational e_max = parse_rational(o.emax);
  std::vector<Rational> beta;
  json beta_source;
  if (!o.alpha_file.empty() == !o.beta.empty()) {
    throw InvalidArgument("give exactly one of --alpha-file and --beta");
  }
  if (!o.alpha_file.empty()) {
    if (o.rationalize <= 0) {
      throw InvalidArgument("--alpha-file needs --rationalize DENOM_BOUND for exact counting");
    }
    out.input = read_file(o.alpha_file);
    const ChargeFile file = parse_charge_file(json::parse(out.input));
    const CanonicalForm form = canonicalize(file.numeric);
    json approx = json::array();
    for (double b : form.beta) {
      const Rational r = best_rational_approximation(b, o.rationalize);
      approx.push_back({{"beta", b},
                        {"rational", rational_string(r)},
                        {"abs_error", std::abs(b - r.get_d())}});
      beta.push_back(r);
    }
    beta_source = {{"source", "alpha-file"}, {"rationalization", std::move(approx)}};
  } else {
    out.input = o.beta;
    beta = parse_rational_list(o.beta);
    beta_source = {{"source", "beta"}};
  }
  const ModeQuanta quanta = mode_quanta(beta, norm);
  const SpectrumTable table = enumerate_levels(quanta, e_max);

  bool consistent = true;
  for (const auto& level : table.levels) {
    const Degeneracy d = degeneracy_of(quanta, level.energy);
    consistent = consistent && d.tuples == level.tuples;
  }
  json beta_json = json::array();
  for (const auto& b : beta) beta_json.push_back(rational_string(b));
  out.parameters = {{"normalization", to_string(norm)},
                    {"emax", rational_string(e_max)},
                    {"rationalize", o.rationalize}};
  out.results = {{"beta", std::move(beta_json)},
                 {"beta_source", std::move(beta_source)},
                 {"table", to_json(table, quanta)},
                 {"degeneracy_consistent", consistent}};
  out.pass = consistent;
  if (!o.tsv.empty()) write_file(o.tsv, spectrum_tsv(table));
  if (!o.csv.empty()) write_file(o.csv, spectrum_csv(table));
  return out;
}

Outcome run_weyl_check(const Options& o) {
  Outcome out;
  const Normalization norm = parse_normalization(o.normalization);
  const WeylType type = parse_weyl_type(o.group);
  if (o.beta.empty()) throw InvalidArgument("--beta is required");
  if (o.emax.empty()) throw InvalidArgument("--emax is required");
  const std::vector<Rational> beta = parse_rational_list(o.beta);
  const Rational e_max = parse_rational(o.emax);
  out.input = o.beta;
  const InvarianceReport report =
      verify_spectrum_invariance(beta, norm, e_max, type, max_rank_from_env());
  json beta_json = json::array();
  for (const auto& b : beta) beta_json.push_back(rational_string(b));
  out.parameters = {{"beta", std::move(beta_json)},
                    {"normalization", to_string(norm)},
                    {"emax", rational_string(e_max)},
                    {"group", to_string(type)}};
  out.results = to_json(report);
  out.pass = report.all_invariant();
  return out;
}

Outcome run_fock_check(const Options& o) {
  Outcome out;
  out.input = read_file(o.alpha_file);
  const ChargeFile file = parse_charge_file(json::parse(out.input));
  const CentralCharges& charges = file.require_exact();
  if (o.pairs != 0 && 2 * o.pairs != charges.n()) {
    throw InvalidArgument("--l " + std::to_string(o.pairs) + " does not match n = " +
                          std::to_string(charges.n()) + " in the charge file");
  }
  TruncationConfig config{charges.n(), o.nmax, o.margin};
  config.validate();
  if (config.dim() > kMaxFockDim) {
    throw InvalidArgument("truncated space of dimension " + std::to_string(config.dim()) +
                          " exceeds " + std::to_string(kMaxFockDim) + "; lower --nmax");
  }
  out.parameters = {{"nmax", o.nmax}, {"margin", o.margin}, {"k_lowest", o.k_lowest},
                    {"levels", o.levels}};
  const CommutantReport report = commutant_multiplicity_check(charges, config, o.levels, 1e-6, o.k_lowest);
  out.results = to_json(report);

  // Canonical oscillator form on l modes against both spacing conventions.
  const CanonicalForm form = canonicalize(charges);
  TruncationConfig canon_config{form.beta.size(), o.nmax, o.margin};
  const std::vector<double> canon = diagonalize(canonical_hamiltonian(form.beta, canon_config), o.k_lowest);
  std::multiset<double> oracle_levels, paper_levels;
  const std::size_t l = form.beta.size();
  std::vector<std::size_t> nu(l, 0);
  auto visit = [&](auto&& self, std::size_t depth, std::size_t budget, double e_oracle,
                   double e_paper) -> void {
    if (depth == l) {
      oracle_levels.insert(e_oracle);
      paper_levels.insert(e_paper);
      return;
    }
    const double b = form.beta[depth];
    for (std::size_t m = 0; m <= budget; ++m) {
      self(self, depth + 1, budget - m, e_oracle + 2.0 * b * (m + 0.5), e_paper + b * b * (m + 0.5));
    }
  };
  visit(visit, 0, o.k_lowest, 0.0, 0.0);
  std::vector<double> oracle(oracle_levels.begin(), oracle_levels.end());
  std::vector<double> paper(paper_levels.begin(), paper_levels.end());
  oracle.resize(canon.size());
  paper.resize(canon.size());
  // The truncated Q^2 + P^2 has a spurious state near beta * n_max on each mode's edge, so
  // only levels below beta_min * (n_max - margin) are compared.
  const double trusted_energy = form.beta.back() * static_cast<double>(o.nmax - o.margin) + 1e-9;
  double oracle_dev = 0.0, paper_dev = 0.0;
  std::size_t compared = 0;
  for (std::size_t k = 0; k < canon.size(); ++k) {
    if (oracle[k] > trusted_energy) break;
    ++compared;
    oracle_dev = std::max(oracle_dev, std::abs(canon[k] - oracle[k]));
    paper_dev = std::max(paper_dev, std::abs(canon[k] - paper[k]));
  }
  out.results["canonical_form"] = {{"beta", form.beta},
                                   {"eigenvalues", canon},
                                   {"oracle_levels", oracle},
                                   {"paper_levels", paper},
                                   {"compared_levels", compared},
                                   {"oracle_max_deviation", oracle_dev},
                                   {"paper_max_deviation", paper_dev},
                                   {"matches_oracle", oracle_dev <= 1e-6},
                                   {"matches_paper", paper_dev <= 1e-6}};
  out.pass = report.conservation_residual < 1e-8 && report.algebra_residual < 1e-10 &&
             report.hermiticity_defect < 1e-12 && compared > 0 && oracle_dev <= 1e-6;
  return out;
}

Outcome run_evolve(const Options& o) {
  Outcome out;
  out.input = read_file(o.alpha_file);
  const ChargeFile file = parse_charge_file(json::parse(out.input));
  if (o.steps == 0) throw InvalidArgument("--steps must be positive");
  const Eigen::MatrixXd& a = file.numeric;
  const auto n = a.rows();
  const CoefficientState exact = exact_flow(a, o.t);
  const CoefficientState rk4 = rk4_flow(a, o.t, o.steps);
  const double orth_exact = max_abs(Eigen::MatrixXd(
      exact.fprime_coeffs * exact.fprime_coeffs.transpose() - Eigen::MatrixXd::Identity(n, n)));
  const double orth_rk4 = max_abs(Eigen::MatrixXd(
      rk4.fprime_coeffs * rk4.fprime_coeffs.transpose() - Eigen::MatrixXd::Identity(n, n)));
  out.parameters = {{"t", o.t}, {"steps", o.steps}, {"samples", o.samples}};
  out.results = {
      {"exact", to_json(exact)},
      {"rk4", to_json(rk4)},
      {"fprime_difference", max_abs(Eigen::MatrixXd(exact.fprime_coeffs - rk4.fprime_coeffs))},
      {"q_offset_difference", max_abs(Eigen::MatrixXd(exact.q_offsets - rk4.q_offsets))},
      {"orthogonality_defect_exact", orth_exact},
      {"orthogonality_defect_rk4", orth_rk4}};
  if (file.exact) {
    const AnomalyReport anomaly = anomaly_demo(*file.exact, o.t);
    out.results["anomaly"] = {{"naive_drift", anomaly.naive_drift},
                              {"anomalous_drift", anomaly.anomalous_drift},
                              {"naive_rate", matrix_to_json(anomaly.naive_rate)}};
    out.pass = anomaly.anomalous_drift < 1e-12;
  }
  out.pass = out.pass && orth_exact < 1e-12;

  if (!o.csv.empty()) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "t";
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) csv << ",F" << i + 1 << "_" << j + 1;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) csv << ",Q" << i + 1 << "_" << j + 1;
    }
    csv << "\n";
    const std::size_t samples = std::max<std::size_t>(o.samples, 1);
    for (std::size_t s = 0; s <= samples; ++s) {
      const double t = o.t * static_cast<double>(s) / static_cast<double>(samples);
      const CoefficientState st = exact_flow(a, t);
      csv << t;
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) csv << "," << st.fprime_coeffs(i, j);
      }
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) csv << "," << st.q_offsets(i, j);
      }
      csv << "\n";
    }
    write_file(o.csv, csv.str());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical checks for centrally extended integrable systems"};
  app.require_subcommand(1);
  Options o;

  auto add_out = [&o](CLI::App* sub) {
    sub->add_option("--out", o.out, "Write the JSON report to FILE instead of stdout");
  };

  auto* canon = app.add_subcommand("canonicalize", "Orthogonal canonical form of the charges");
  canon->add_option("--alpha-file", o.alpha_file, "Charge matrix JSON")->required();
  canon->add_option("--tol", o.tol, "Relative singularity threshold");
  add_out(canon);

  auto* verify = app.add_subcommand("verify-algebra", "Exact commutator identity suite");
  verify->add_option("--alpha-file", o.alpha_file, "Charge matrix JSON")->required();
  add_out(verify);

  auto* spectrum = app.add_subcommand("spectrum", "Exact levels and degeneracies");
  spectrum->add_option("--alpha-file", o.alpha_file, "Charge matrix JSON");
  spectrum->add_option("--beta", o.beta, "Comma-separated rational frequencies");
  spectrum->add_option("--normalization", o.normalization, "paper | oracle")
      ->check(CLI::IsMember({"paper", "oracle"}));
  spectrum->add_option("--emax", o.emax, "Energy cutoff (rational)")->required();
  spectrum->add_option("--rationalize", o.rationalize, "Denominator bound for beta from --alpha-file");
  spectrum->add_option("--tsv", o.tsv, "Also write the table as TSV");
  spectrum->add_option("--csv", o.csv, "Also write a level-diagram CSV");
  add_out(spectrum);

  auto* weyl = app.add_subcommand("weyl-check", "Weyl-group invariance of the spectrum");
  weyl->add_option("--beta", o.beta, "Comma-separated rational frequencies")->required();
  weyl->add_option("--normalization", o.normalization, "paper | oracle")
      ->check(CLI::IsMember({"paper", "oracle"}));
  weyl->add_option("--emax", o.emax, "Energy cutoff (rational)")->required();
  weyl->add_option("--group", o.group, "D (SO(2l) Weyl group) or B (all sign flips)")
      ->check(CLI::IsMember({"D", "B"}));
  add_out(weyl);

  auto* fock = app.add_subcommand("fock-check", "Truncated Fock-space realization checks");
  fock->add_option("--alpha-file", o.alpha_file, "Charge matrix JSON")->required();
  fock->add_option("--l", o.pairs, "Number of canonical pairs; must equal n/2 when given");
  fock->add_option("--nmax", o.nmax, "Per-mode occupation cutoff");
  fock->add_option("--margin", o.margin, "Interior margin for residual norms");
  fock->add_option("--k-lowest", o.k_lowest, "Number of eigenvalues to report");
  fock->add_option("--levels", o.levels, "Levels analysed for eigenspace mapping");
  add_out(fock);

  auto* evolve = app.add_subcommand("evolve", "Heisenberg flow: closed form against RK4");
  evolve->add_option("--alpha-file", o.alpha_file, "Charge matrix JSON")->required();
  evolve->add_option("--t", o.t, "Final time");
  evolve->add_option("--steps", o.steps, "RK4 steps");
  evolve->add_option("--csv", o.csv, "Write a sampled time series of the exact flow");
  evolve->add_option("--samples", o.samples, "Number of CSV intervals");
  add_out(evolve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    if (name == "canonicalize") outcome = run_canonicalize(o);
    else if (name == "verify-algebra") outcome = run_verify_algebra(o);
    else if (name == "spectrum") outcome = run_spectrum(o);
    else if (name == "weyl-check") outcome = run_weyl_check(o);
    else if (name == "fock-check") outcome = run_fock_check(o);
    else outcome = run_evolve(o);
  } catch (const NumericalFailure& e) {
    std::cerr << "anomint " << name << ": numerical failure: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const Error& e) {
    std::cerr << "anomint " << name << ": " << e.what() << "\n";
    return kExitInputError;
  } catch (const json::exception& e) {
    std::cerr << "anomint " << name << ": malformed JSON: " << e.what() << "\n";
    return kExitInputError;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const json digest_source = {{"subcommand", name},
                              {"parameters", outcome.parameters},
                              {"input", outcome.input}};
  json report = {{"subcommand", name},
                 {"input_digest", sha256_hex(digest_source.dump())},
                 {"parameters", outcome.parameters},
                 {"results", outcome.results},
                 {"pass", outcome.pass},
                 {"timing", {{"wall_clock_seconds", seconds}}}};
  const std::string text = report.dump(2) + "\n";
  try {
    if (o.out.empty()) {
      std::cout << text;
    } else {
      write_file(o.out, text);
    }
  } catch (const Error& e) {
    std::cerr << "anomint " << name << ": " << e.what() << "\n";
    return kExitInputError;
  }
  return outcome.pass ? kExitOk : kExitCheckFailed;
}
