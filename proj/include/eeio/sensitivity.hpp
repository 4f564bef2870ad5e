#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "eeio/leontief.hpp"

namespace eeio {

struct SpectralEstimate {
  double rho = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Perron root of a nonnegative matrix by power iteration on A + I. The shift
/// keeps the dominant eigenvalue strictly dominant even for periodic
/// matrices; the estimate is capped by the max row and column sums.
SpectralEstimate spectral_radius(const Matrix& a, double tol = 1e-12,
                                 std::size_t max_iter = 10000);
SpectralEstimate spectral_radius(const CoefficientMatrix& a, double tol = 1e-12,
                                 std::size_t max_iter = 10000);

struct PerturbationReport {
  double epsilon = 0.0;
  /// Matrices evaluated: random draws plus, for n = 1, the two endpoint probes.
  std::size_t samples = 0;
  double baseline_norm = 0.0;
  double max_deviation = 0.0;
  double amplification = 0.0;
  std::size_t diverged_count = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const PerturbationReport&, const PerturbationReport&) = default;
};

/// Draws `samples` matrices b_ij = max(0, a_ij + u_ij), u_ij ~ U[-eps, eps],
/// and reports the largest sup-norm deviation of (I - B)^-1 from (I - A)^-1.
/// Sample k uses its own substream, so the report does not depend on
/// `threads`.
PerturbationReport perturb_inverse(const CoefficientMatrix& a, double epsilon,
                                   std::size_t samples, std::uint64_t seed,
                                   unsigned threads = 1);

/// Closed-form 1-sector amplification 1 / ((1 - a)(1 - a - eps)).
std::vector<std::pair<double, double>> amplification_curve(const std::vector<double>& a_values,
                                                           double epsilon);

}  // namespace eeio
