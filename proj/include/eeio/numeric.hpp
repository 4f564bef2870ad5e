#pragma once

#include <Eigen/Core>

#include <cmath>

namespace eeio {

/// Neumaier-compensated sum, always left to right, so the result is
/// reproducible bit for bit.
template <typename Derived>
double compensated_sum(const Eigen::DenseBase<Derived>& values) {
  double sum = 0.0;
  double carry = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double x = values(i);
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

/// Induced sup norm (max absolute row sum).
template <typename Derived>
double inf_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace eeio
