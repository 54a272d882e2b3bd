#include "anomint/skew_canonical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "anomint/errors.hpp"
#include "anomint/linalg.hpp"

namespace anomint {

namespace {

// Flip v so that its largest-magnitude entry (first one on ties) is positive.
void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < v.size(); ++k) {
    if (std::abs(v(k)) > std::abs(v(best)) * (1.0 + 1e-12)) best = k;
  }
  if (v(best) < 0) v = -v;
}

}  // namespace

Eigen::MatrixXd cartan_matrix(const std::vector<double>& beta) {
  const auto l = static_cast<Eigen::Index>(beta.size());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * l, 2 * l);
  for (Eigen::Index k = 0; k < l; ++k) {
    c(k, l + k) = beta[static_cast<std::size_t>(k)];
    c(l + k, k) = -beta[static_cast<std::size_t>(k)];
  }
  return c;
}

std::vector<double> cartan_beta(const Eigen::MatrixXd& c) {
  const Eigen::Index l = c.rows() / 2;
  std::vector<double> beta(static_cast<std::size_t>(l));
  for (Eigen::Index k = 0; k < l; ++k) beta[static_cast<std::size_t>(k)] = c(k, l + k);
  return beta;
}

bool assert_cartan_form(const Eigen::MatrixXd& x, double tol) {
  if (x.rows() != x.cols() || x.rows() % 2 != 0) return false;
  const Eigen::Index l = x.rows() / 2;
  for (Eigen::Index r = 0; r < 2 * l; ++r) {
    for (Eigen::Index s = 0; s < 2 * l; ++s) {
      const bool pair = (s == r + l) || (r == s + l);
      if (!pair) {
        if (std::abs(x(r, s)) > tol) return false;
      }
    }
  }
  for (Eigen::Index k = 0; k < l; ++k) {
    if (std::abs(x(k, l + k) + x(l + k, k)) > tol) return false;
  }
  return true;
}

CanonicalForm canonicalize(const Eigen::MatrixXd& a, const CanonicalizeOptions& options) {
  if (a.rows() != a.cols()) throw DimensionMismatch("charge matrix must be square");
  const Eigen::Index n = a.rows();
  if (n == 0 || n % 2 != 0) {
    throw OddDimension("canonical form needs an even dimension, got " + std::to_string(n));
  }
  const double scale = max_abs(a);
  if (max_abs(Eigen::MatrixXd(a + a.transpose())) > options.antisymmetry_tol * scale) {
    throw NotAntisymmetric("charge matrix is not antisymmetric");
  }
  if (scale == 0.0) throw SingularCharges("charge matrix is zero");

  const Eigen::Index l = n / 2;
  const Eigen::MatrixXd s = a.transpose() * a;
  const SymmetricEigen eig = jacobi_eigen(s);

  const double smallest_sv = std::sqrt(std::max(eig.values(0), 0.0));
  if (smallest_sv <= options.singular_tol * scale) {
    throw SingularCharges("charge matrix is singular (smallest singular value " +
                          std::to_string(smallest_sv) + ")");
  }

  // Candidates in descending eigenvalue order; ties stay in Jacobi column order.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&eig](Eigen::Index x, Eigen::Index y) {
    return eig.values(x) > eig.values(y);
  });

  const double cluster_tol = 1e-8 * eig.values(order[0]);
  Eigen::MatrixXd rows_v(l, n);
  Eigen::MatrixXd rows_w(l, n);
  std::vector<double> beta(static_cast<std::size_t>(l));
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  Eigen::Index chosen = 0;

  auto orthogonalize = [&](Eigen::VectorXd u) {
    // Two passes of modified Gram-Schmidt against every chosen row.
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < chosen; ++k) {
        u -= rows_v.row(k).dot(u) * rows_v.row(k).transpose();
        u -= rows_w.row(k).dot(u) * rows_w.row(k).transpose();
      }
    }
    return u;
  };

  while (chosen < l) {
    // Top of the remaining spectrum and its cluster.
    double top = -1.0;
    for (auto idx : order) {
      if (!used[static_cast<std::size_t>(idx)]) {
        top = eig.values(idx);
        break;
      }
    }
    Eigen::Index best = -1;
    double best_norm = -1.0;
    Eigen::VectorXd best_vec;
    for (auto idx : order) {
      if (used[static_cast<std::size_t>(idx)]) continue;
      if (eig.values(idx) < top - cluster_tol) break;
      Eigen::VectorXd u = orthogonalize(eig.vectors.col(idx));
      const double norm = u.norm();
      if (norm > best_norm * (1.0 + 1e-12)) {
        best = idx;
        best_norm = norm;
        best_vec = u;
      }
    }
    if (best < 0 || best_norm < 1e-6) throw NumericalFailure("eigenvector pairing failed");
    used[static_cast<std::size_t>(best)] = true;

    Eigen::VectorXd v = best_vec / best_norm;
    fix_sign(v);
    Eigen::VectorXd w = a.transpose() * v;
    const double b = w.norm();
    w /= b;
    // The partner of v is retired from the candidate pool as well: mark whichever
    // unused candidate in the cluster now has the smallest residual.
    Eigen::Index partner = -1;
    double partner_norm = 2.0;
    rows_v.row(chosen) = v.transpose();
    rows_w.row(chosen) = w.transpose();
    ++chosen;
    for (auto idx : order) {
      if (used[static_cast<std::size_t>(idx)]) continue;
      if (eig.values(idx) < top - cluster_tol) break;
      const double norm = orthogonalize(eig.vectors.col(idx)).norm();
      if (norm < partner_norm) {
        partner = idx;
        partner_norm = norm;
      }
    }
    if (partner >= 0) used[static_cast<std::size_t>(partner)] = true;
    beta[static_cast<std::size_t>(chosen - 1)] = b;
  }

  CanonicalForm out;
  out.M.resize(n, n);
  out.M.topRows(l) = rows_v;
  out.M.bottomRows(l) = rows_w;
  out.beta = beta;
  out.detM = out.M.determinant() < 0 ? -1 : 1;
  out.C = cartan_matrix(beta);

  const double orth = max_abs(Eigen::MatrixXd(out.M * out.M.transpose() -
                                              Eigen::MatrixXd::Identity(n, n)));
  const double recon = max_abs(Eigen::MatrixXd(out.M * a * out.M.transpose() - out.C));
  if (orth > options.check_tol || recon > options.check_tol * scale) {
    throw NumericalFailure("canonical form misses tolerance: orthogonality " +
                           std::to_string(orth) + ", reconstruction " + std::to_string(recon));
  }
  return out;
}

CanonicalForm canonicalize(const CentralCharges& charges, const CanonicalizeOptions& options) {
  charges.require_even();
  return canonicalize(charges.to_matrix(), options);
}

}  // namespace anomint
