#include "anomint/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "anomint/errors.hpp"

namespace anomint {

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& symmetric, int max_sweeps) {
  const Eigen::Index n = symmetric.rows();
  if (symmetric.cols() != n) throw DimensionMismatch("jacobi_eigen needs a square matrix");
  Eigen::MatrixXd a = symmetric;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double scale = std::max(max_abs(a), std::numeric_limits<double>::min());
  bool converged = n < 2;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (std::sqrt(off) <= 1e-18 * scale) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        // Rotation angle that annihilates a(p,q); t is the smaller root.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (std::sqrt(off) > 1e-14 * scale) throw NumericalFailure("Jacobi sweeps did not converge");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });
  SymmetricEigen out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

void tridiagonal_ql(Eigen::VectorXd& d, Eigen::VectorXd& offdiag, Eigen::MatrixXd* z) {
  const Eigen::Index n = d.size();
  if (n == 0) return;
  // e(i) couples rows i and i+1; e(n-1) is workspace.
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e.head(n - 1) = offdiag;

  for (Eigen::Index l = 0; l < n; ++l) {
    int iterations = 0;
    Eigen::Index m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d(m)) + std::abs(d(m + 1));
        if (std::abs(e(m)) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (++iterations > 60) throw NumericalFailure("tridiagonal QL did not converge");
        double g = (d(l + 1) - d(l)) / (2.0 * e(l));
        double r = std::hypot(g, 1.0);
        g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        Eigen::Index i;
        bool underflow = false;
        for (i = m - 1; i >= l; --i) {
          double f = s * e(i);
          const double b = c * e(i);
          r = std::hypot(f, g);
          e(i + 1) = r;
          if (r == 0.0) {
            d(i + 1) -= p;
            e(m) = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d(i + 1) - p;
          r = (d(i) - g) * s + 2.0 * c * b;
          p = s * r;
          d(i + 1) = g + p;
          g = c * r - b;
          if (z != nullptr) {
            auto zi = z->col(i);
            auto zi1 = z->col(i + 1);
            for (Eigen::Index k = 0; k < z->rows(); ++k) {
              f = zi1(k);
              zi1(k) = s * zi(k) + c * f;
              zi(k) = c * zi(k) - s * f;
            }
          }
        }
        if (underflow) continue;
        d(l) -= p;
        e(l) = g;
        e(m) = 0.0;
      }
    } while (m != l);
  }
}

HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& h, bool want_vectors) {
  const Eigen::Index n = h.rows();
  if (h.cols() != n) throw DimensionMismatch("hermitian_eigen needs a square matrix");
  const double scale = std::max(1.0, max_abs(h));
  if (max_abs(Eigen::MatrixXcd(h - h.adjoint())) > 1e-12 * scale) {
    throw NonHermitian("matrix is not Hermitian within 1e-12 relative");
  }
  HermitianEigen out;
  if (n == 0) return out;

  using cd = std::complex<double>;
  Eigen::MatrixXcd a = 0.5 * (h + h.adjoint());
  std::vector<Eigen::VectorXcd> reflectors;
  std::vector<double> taus;

  // Householder reduction: column k below the subdiagonal is annihilated by
  // H = I - tau v v^*, leaving a complex subdiagonal entry a(k+1,k).
  // Only the lower triangle of the trailing block is kept current.
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    Eigen::VectorXcd x = a.col(k).tail(m);
    const double xnorm = x.norm();
    const double tail_norm = x.tail(m - 1).norm();
    if (tail_norm == 0.0) {
      if (want_vectors) {
        reflectors.emplace_back();
        taus.push_back(0.0);
      }
      continue;
    }
    const cd x0 = x(0);
    const double abs_x0 = std::abs(x0);
    const cd phase = abs_x0 == 0.0 ? cd(1.0) : x0 / abs_x0;
    const cd alpha = -phase * xnorm;
    Eigen::VectorXcd v = x;
    v(0) -= alpha;
    const double tau = 2.0 / v.squaredNorm();

    auto a22 = a.bottomRightCorner(m, m);
    Eigen::VectorXcd p(m);
    p.noalias() = tau * (a22.selfadjointView<Eigen::Lower>() * v);
    const cd kappa = 0.5 * tau * v.dot(p);  // v^* p
    const Eigen::VectorXcd w = p - kappa * v;
    for (Eigen::Index j = 0; j < m; ++j) {
      a22.col(j).tail(m - j) -= v.tail(m - j) * std::conj(w(j)) + w.tail(m - j) * std::conj(v(j));
    }

    a.col(k).tail(m).setZero();
    a(k + 1, k) = alpha;

    if (want_vectors) {
      reflectors.push_back(std::move(v));
      taus.push_back(tau);
    }
  }

  Eigen::MatrixXcd q;
  if (want_vectors) {
    // Backward accumulation of Q = H_0 H_1 ... touches only the trailing block.
    q = Eigen::MatrixXcd::Identity(n, n);
    for (auto k = static_cast<Eigen::Index>(reflectors.size()); k-- > 0;) {
      if (taus[static_cast<std::size_t>(k)] == 0.0) continue;
      const Eigen::VectorXcd& v = reflectors[static_cast<std::size_t>(k)];
      const Eigen::Index m = n - k - 1;
      auto block = q.bottomRightCorner(m, m);
      Eigen::RowVectorXcd row(m);
      row.noalias() = v.adjoint() * block;
      block.noalias() -= (taus[static_cast<std::size_t>(k)] * v) * row;
    }
  }

  // Remove the phases of the subdiagonal: D^* T D is real symmetric tridiagonal.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max<Eigen::Index>(n - 1, 0));
  Eigen::VectorXcd phases(n);
  phases(0) = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) diag(k) = a(k, k).real();
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const cd sub = a(k + 1, k);
    const double mag = std::abs(sub);
    off(k) = mag;
    phases(k + 1) = mag == 0.0 ? phases(k) : phases(k) * sub / mag;
  }

  if (!want_vectors) {
    tridiagonal_ql(diag, off, nullptr);
    std::sort(diag.data(), diag.data() + n);
    out.values = diag;
    return out;
  }

  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(n, n);
  tridiagonal_ql(diag, off, &z);
  Eigen::MatrixXcd basis = q * phases.asDiagonal();
  Eigen::MatrixXcd vectors = basis * z.cast<cd>();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&diag](Eigen::Index x, Eigen::Index y) { return diag(x) < diag(y); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.values(k) = diag(src);
    out.vectors.col(k) = vectors.col(src);
  }
  return out;
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw DimensionMismatch("expm needs a square matrix");
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXd scaled = m / std::ldexp(1.0, squarings);

  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= 20; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace anomint
