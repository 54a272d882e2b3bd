#include "anomint/fock.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include <Eigen/Sparse>

#include "anomint/errors.hpp"
#include "anomint/operators.hpp"
#include "anomint/skew_canonical.hpp"

namespace anomint {

namespace {

using cd = std::complex<double>;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& left, const Eigen::MatrixXcd& right) {
  Eigen::MatrixXcd out(left.rows() * right.rows(), left.cols() * right.cols());
  for (Eigen::Index r = 0; r < left.rows(); ++r) {
    for (Eigen::Index c = 0; c < left.cols(); ++c) {
      out.block(r * right.rows(), c * right.cols(), right.rows(), right.cols()) =
          left(r, c) * right;
    }
  }
  return out;
}

Eigen::MatrixXcd kron_embed(const Eigen::MatrixXcd& single, std::size_t mode,
                            const TruncationConfig& config) {
  const auto n = static_cast<Eigen::Index>(config.n_max + 1);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t k = 0; k < config.modes; ++k) {
    out = kron(out, k == mode ? single : Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(n, n)));
  }
  return out;
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& m, unsigned power, Eigen::Index dim) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim, dim);
  for (unsigned k = 0; k < power; ++k) out = out * m;
  return out;
}

}  // namespace

void TruncationConfig::validate() const {
  if (modes == 0) throw InvalidArgument("truncation needs at least one mode");
  if (n_max < 2) throw InvalidArgument("n_max must be at least 2");
  if (interior_margin < 1 || interior_margin >= n_max) {
    throw InvalidArgument("interior margin must satisfy 1 <= margin < n_max");
  }
}

std::size_t TruncationConfig::dim() const {
  std::size_t d = 1;
  for (std::size_t k = 0; k < modes; ++k) d *= n_max + 1;
  return d;
}

std::vector<std::size_t> TruncationConfig::occupation(std::size_t index) const {
  std::vector<std::size_t> nu(modes);
  for (std::size_t k = modes; k-- > 0;) {
    nu[k] = index % (n_max + 1);
    index /= n_max + 1;
  }
  return nu;
}

bool TruncationConfig::is_interior(std::size_t index) const {
  const auto nu = occupation(index);
  return std::all_of(nu.begin(), nu.end(),
                     [this](std::size_t v) { return v + interior_margin <= n_max; });
}

std::vector<std::size_t> TruncationConfig::interior_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (is_interior(i)) out.push_back(i);
  }
  return out;
}

LadderMatrices ladder_matrices(const TruncationConfig& config) {
  config.validate();
  const auto n = static_cast<Eigen::Index>(config.n_max + 1);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index nu = 1; nu < n; ++nu) a(nu - 1, nu) = std::sqrt(static_cast<double>(nu));
  LadderMatrices out;
  for (std::size_t k = 0; k < config.modes; ++k) {
    out.lower.push_back(kron_embed(a, k, config));
    out.raise.push_back(out.lower.back().adjoint());
  }
  return out;
}

OperatorMatrix assemble(const WeylPolynomial& poly, const TruncationConfig& config,
                        std::string label) {
  config.validate();
  if (poly.n() != config.modes) {
    throw DimensionMismatch("polynomial has " + std::to_string(poly.n()) +
                            " generators but the truncation has " +
                            std::to_string(config.modes) + " modes");
  }
  const auto dim = static_cast<Eigen::Index>(config.dim());
  const auto n = static_cast<Eigen::Index>(config.n_max + 1);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index nu = 1; nu < n; ++nu) a(nu - 1, nu) = std::sqrt(static_cast<double>(nu));
  const double root2 = std::sqrt(2.0);
  const Eigen::MatrixXcd q = (a + a.adjoint()) / root2;
  const Eigen::MatrixXcd p = (a - a.adjoint()) / cd(0.0, root2);

  // Generators of different modes act on different tensor factors, so each normal-ordered
  // term is the Kronecker product of per-mode factors Q^a P^b.
  OperatorMatrix out{Eigen::MatrixXcd::Zero(dim, dim),
                     label.empty() ? poly.to_string() : std::move(label)};
  for (const auto& [mono, coeff] : poly.terms()) {
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t k = 0; k < config.modes; ++k) {
      const Eigen::MatrixXcd factor =
          matrix_power(q, mono.q_exp(k), n) * matrix_power(p, mono.p_exp(k), n);
      term = kron(term, factor);
    }
    out.matrix += coeff.to_complex() * term;
  }
  return out;
}

double interior_residual(const OperatorMatrix& x, const OperatorMatrix& y,
                         const Eigen::MatrixXcd& expected, const TruncationConfig& config) {
  if (x.dim() != y.dim() || x.dim() != expected.rows() || expected.rows() != expected.cols() ||
      static_cast<std::size_t>(x.dim()) != config.dim()) {
    throw DimensionMismatch("interior_residual operands differ in dimension");
  }
  // Operators here are banded in every mode; sparse products keep the check cheap.
  const Eigen::SparseMatrix<cd> xs = x.matrix.sparseView();
  const Eigen::SparseMatrix<cd> ys = y.matrix.sparseView();
  const Eigen::SparseMatrix<cd> comm = xs * ys - ys * xs;
  const Eigen::MatrixXcd r = Eigen::MatrixXcd(comm) - expected;
  const auto interior = config.interior_indices();
  double worst = 0.0;
  for (auto row : interior) {
    for (auto col : interior) {
      worst = std::max(worst, std::abs(r(static_cast<Eigen::Index>(row),
                                         static_cast<Eigen::Index>(col))));
    }
  }
  return worst;
}

double interior_residual(const OperatorMatrix& x, const OperatorMatrix& y,
                         const TruncationConfig& config) {
  return interior_residual(x, y, Eigen::MatrixXcd::Zero(x.dim(), x.dim()), config);
}

double hermiticity_defect(const OperatorMatrix& h) {
  return max_abs(Eigen::MatrixXcd(h.matrix - h.matrix.adjoint())) /
         std::max(1.0, max_abs(h.matrix));
}

std::vector<double> diagonalize(const OperatorMatrix& h, std::size_t k_lowest) {
  const HermitianEigen eig = hermitian_eigen(h.matrix, false);
  const auto k = std::min<std::size_t>(k_lowest, static_cast<std::size_t>(eig.values.size()));
  return {eig.values.data(), eig.values.data() + k};
}

OperatorMatrix canonical_hamiltonian(const std::vector<double>& beta,
                                     const TruncationConfig& config) {
  if (beta.size() != config.modes) {
    throw DimensionMismatch("canonical Hamiltonian needs one mode per frequency");
  }
  const std::size_t l = beta.size();
  OperatorMatrix out;
  out.label = "canonical oscillator form";
  out.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(config.dim()),
                                      static_cast<Eigen::Index>(config.dim()));
  for (std::size_t k = 0; k < l; ++k) {
    WeylPolynomial osc(l);
    osc.add_term(Monomial::q(l, k, 2), Scalar(1));
    osc.add_term(Monomial::p(l, k, 2), Scalar(1));
    out.matrix += std::abs(beta[k]) * assemble(osc, config).matrix;
  }
  return out;
}

CommutantReport commutant_multiplicity_check(const CentralCharges& charges,
                                             const TruncationConfig& config, std::size_t levels,
                                             double level_tol, std::size_t k_lowest) {
  config.validate();
  const std::size_t n = charges.n();
  if (config.modes != n) {
    throw DimensionMismatch("H_alpha needs one Fock mode per generator");
  }
  CommutantReport report;
  report.config = config;

  std::vector<OperatorMatrix> f, fp;
  for (std::size_t i = 0; i < n; ++i) {
    f.push_back(assemble(build_F_alpha(charges, i), config));
    fp.push_back(assemble(build_F_prime_alpha(charges, i), config));
  }
  const OperatorMatrix h = assemble(build_H(charges, HamiltonianVariant::kAnomalous), config, "H_alpha");
  const auto dim = h.dim();
  report.hermiticity_defect = hermiticity_defect(h);

  for (std::size_t i = 0; i < n; ++i) {
    report.conservation_residual =
        std::max(report.conservation_residual, interior_residual(h, f[i], config));
    report.f_fprime_difference =
        std::max(report.f_fprime_difference, max_abs(Eigen::MatrixXcd(f[i].matrix - fp[i].matrix)));
    for (std::size_t j = 0; j < n; ++j) {
      const Eigen::MatrixXcd expected =
          cd(0.0, charges(i, j).get_d()) * Eigen::MatrixXcd::Identity(dim, dim);
      report.algebra_residual =
          std::max(report.algebra_residual, interior_residual(f[i], f[j], expected, config));
    }
  }

  const bool analyse_levels = levels > 0 && !charges.is_zero() && n % 2 == 0;
  const HermitianEigen eig = hermitian_eigen(h.matrix, analyse_levels);
  const auto k = std::min<Eigen::Index>(static_cast<Eigen::Index>(k_lowest), eig.values.size());
  report.lowest_eigenvalues.assign(eig.values.data(), eig.values.data() + k);
  if (!analyse_levels) return report;

  // Exact levels sum_k 2 beta_k (nu_k + 1/2) from the canonical form.
  const CanonicalForm form = canonicalize(charges);
  const std::size_t l = form.beta.size();
  std::set<double> candidates;
  std::vector<std::size_t> nu(l, 0);
  auto visit = [&](auto&& self, std::size_t depth, std::size_t budget, double energy) -> void {
    if (depth == l) {
      candidates.insert(energy);
      return;
    }
    for (std::size_t m = 0; m <= budget; ++m) {
      self(self, depth + 1, budget - m, energy + 2.0 * form.beta[depth] * (m + 0.5));
    }
  };
  visit(visit, 0, levels, 0.0);
  std::vector<double> targets;
  for (double e : candidates) {
    if (targets.empty() || e - targets.back() > 1e-9 * std::max(1.0, e)) targets.push_back(e);
    if (targets.size() == levels) break;
  }

  std::vector<bool> interior(static_cast<std::size_t>(dim));
  for (std::size_t r = 0; r < interior.size(); ++r) interior[r] = config.is_interior(r);

  for (double target : targets) {
    LevelMapping mapping;
    mapping.energy = target;
    std::vector<Eigen::Index> cols;
    for (Eigen::Index c = 0; c < eig.values.size(); ++c) {
      if (std::abs(eig.values(c) - target) <= level_tol) cols.push_back(c);
    }
    mapping.multiplicity = cols.size();
    // Eigenvectors with weight on edge states are truncation artefacts or have
    // images that leave the basis; only interior-supported ones are mapped.
    std::vector<Eigen::Index> clean;
    for (auto c : cols) {
      double edge = 0.0;
      for (Eigen::Index r = 0; r < dim; ++r) {
        if (!interior[static_cast<std::size_t>(r)]) edge += std::norm(eig.vectors(r, c));
      }
      if (edge <= 1e-8) clean.push_back(c);
    }
    cols = std::move(clean);
    mapping.clean_vectors = cols.size();
    if (!cols.empty()) {
      Eigen::MatrixXcd basis(dim, static_cast<Eigen::Index>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) {
        basis.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(cols[c]);
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          for (double sign : {1.0, -1.0}) {
            const Eigen::MatrixXcd image = (f[i].matrix + cd(0.0, sign) * f[j].matrix) * basis;
            const Eigen::MatrixXcd moved = h.matrix * image - target * image;
            for (Eigen::Index c = 0; c < image.cols(); ++c) {
              const double total = image.col(c).squaredNorm();
              if (total < 1e-12) continue;  // R annihilates v
              double edge = 0.0;
              for (Eigen::Index row = 0; row < dim; ++row) {
                if (!interior[static_cast<std::size_t>(row)]) edge += std::norm(image(row, c));
              }
              if (edge > 1e-8 * total) continue;
              ++mapping.mapped_images;
              mapping.max_image_residual =
                  std::max(mapping.max_image_residual, std::sqrt(moved.col(c).squaredNorm() / total));
            }
          }
        }
      }
    }
    report.levels.push_back(mapping);
  }
  return report;
}

}  // namespace anomint
