#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "anomint/scalar.hpp"

namespace anomint {

/// Real antisymmetric matrix of central charges alpha, defining [X_i, X_j] = i alpha_ij.
class CentralCharges {
 public:
  /// Row-major n*n entries. Throws NotAntisymmetric or InvalidArgument.
  CentralCharges(std::size_t n, std::vector<Rational> row_major);

  static CentralCharges zero(std::size_t n);
  /// n = 2, alpha_12 = b.
  static CentralCharges planar(const Rational& b);

  std::size_t n() const { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return alpha_[i * n_ + j]; }

  bool is_zero() const;
  /// Throws OddDimension unless n is even.
  void require_even() const;

  Eigen::MatrixXd to_matrix() const;

 private:
  std::size_t n_;
  std::vector<Rational> alpha_;
};

}  // namespace anomint
