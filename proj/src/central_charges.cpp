#include "anomint/central_charges.hpp"

#include <string>

#include "anomint/errors.hpp"

namespace anomint {

CentralCharges::CentralCharges(std::size_t n, std::vector<Rational> row_major)
    : n_(n), alpha_(std::move(row_major)) {
  if (n_ == 0) throw InvalidArgument("central charges need at least one generator");
  if (alpha_.size() != n_ * n_) {
    throw DimensionMismatch("expected " + std::to_string(n_ * n_) + " entries, got " +
                            std::to_string(alpha_.size()));
  }
  for (auto& a : alpha_) a.canonicalize();
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if ((*this)(i, j) != -(*this)(j, i)) {
        throw NotAntisymmetric("alpha[" + std::to_string(i) + "][" + std::to_string(j) +
                               "] != -alpha[" + std::to_string(j) + "][" + std::to_string(i) +
                               "]");
      }
    }
  }
}

CentralCharges CentralCharges::zero(std::size_t n) {
  return CentralCharges(n, std::vector<Rational>(n * n, Rational(0)));
}

CentralCharges CentralCharges::planar(const Rational& b) {
  return CentralCharges(2, {Rational(0), b, Rational(-b), Rational(0)});
}

bool CentralCharges::is_zero() const {
  for (const auto& a : alpha_) {
    if (sgn(a) != 0) return false;
  }
  return true;
}

void CentralCharges::require_even() const {
  if (n_ % 2 != 0) {
    throw OddDimension("nonsingular sector needs an even generator count, got n = " +
                       std::to_string(n_));
  }
}

Eigen::MatrixXd CentralCharges::to_matrix() const {
  Eigen::MatrixXd m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).get_d();
  }
  return m;
}

}  // namespace anomint
