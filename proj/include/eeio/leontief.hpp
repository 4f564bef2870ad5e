#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <string_view>

#include "eeio/economy.hpp"

namespace eeio {

using RowVector = Eigen::RowVectorXd;

enum class CoefficientKind {
  Technical,   // A = C * diag(T)^-1, columns normalized by the buyer's total
  Allocation,  // B = diag(T)^-1 * C, rows normalized by the seller's total
};

enum class IntensityKind { Direct, TotalConsumer, TotalSystemic };

std::string_view to_string(CoefficientKind kind);
std::string_view to_string(IntensityKind kind);

class CoefficientMatrix {
 public:
  CoefficientMatrix(CoefficientKind kind, Matrix values);

  CoefficientKind kind() const noexcept { return kind_; }
  const Matrix& values() const noexcept { return values_; }
  Eigen::Index size() const noexcept { return values_.rows(); }

 private:
  CoefficientKind kind_;
  Matrix values_;
};

/// A row functional on sector space, in emission units per money unit.
struct IntensityVector {
  IntensityKind kind;
  RowVector values;
};

struct AttributionReport {
  Vector per_sector;
  double total_attributed = 0.0;
  double total_emissions = 0.0;
  /// Relative to |E|; absolute when |E| = 0.
  double conservation_residual = 0.0;
};

/// reciprocal condition below which I - M is treated as singular
inline constexpr double kSingularRcond = 1e-14;
/// reciprocal condition below which results are flagged ill-conditioned
inline constexpr double kWarnRcond = 1e-8;

/// Row-pivoted LU of I - M, factored once and reused. Const after
/// construction, so one instance can serve concurrent readers.
class LeontiefSolver {
 public:
  /// Throws SingularSystemError when rcond(I - M) < kSingularRcond.
  explicit LeontiefSolver(const Matrix& m);

  Eigen::Index size() const noexcept { return lu_.rows(); }
  double rcond() const noexcept { return rcond_; }
  bool ill_conditioned() const noexcept { return rcond_ < kWarnRcond; }

  /// x such that (I - M) x = b.
  Vector solve(const Vector& b) const;
  /// y such that y (I - M) = f.
  RowVector solve_row(const RowVector& f) const;
  /// (I - M)^-1, formed explicitly.
  Matrix inverse() const;

 private:
  Eigen::PartialPivLU<Matrix> lu_;
  double rcond_ = 0.0;
};

CoefficientMatrix technical_coefficients(const Economy& econ);
CoefficientMatrix allocation_coefficients(const Economy& econ);

IntensityVector direct_intensity(const Economy& econ, const EmissionAccount& acct);

/// (I - A)^-1 for diagnostics and tests; production paths solve instead.
Matrix leontief_inverse(const CoefficientMatrix& a);

/// X with X (I - A) = F.
IntensityVector total_intensity(const IntensityVector& direct, const CoefficientMatrix& a);
IntensityVector total_intensity(const IntensityVector& direct, const LeontiefSolver& solver);

struct NeumannOptions {
  double tol = 1e-10;
  std::size_t max_terms = 100000;
  /// Called with (terms summed so far, partial sum) after every addition.
  std::function<void(std::size_t, const RowVector&)> on_partial_sum;
};

struct NeumannResult {
  IntensityVector intensity;
  std::size_t terms_used = 0;
};

/// Spectral-radius estimates at or above this are rejected as divergent.
inline constexpr double kDivergenceThreshold = 1.0 - 1e-12;

class TruncatedError : public Error {
 public:
  TruncatedError(NeumannResult partial, double residual);
  const NeumannResult& partial() const noexcept { return partial_; }
  /// ||F A^k||_inf / ||S_k||_inf at the point the term budget ran out.
  double residual() const noexcept { return residual_; }

 private:
  NeumannResult partial_;
  double residual_;
};

/// Sums F + F A + F A^2 + ... until the next term is at most
/// tol * ||partial sum||_inf (sup norms). The next term is tested before it is
/// added, so `terms_used` counts only the terms in the returned sum.
NeumannResult total_intensity_neumann(const IntensityVector& direct,
                                      const CoefficientMatrix& a,
                                      const NeumannOptions& options = {});

/// <D, F>: the direct part only, so it undercounts |E|.
double consumer_direct_footprint(const IntensityVector& direct, const Vector& demand);

AttributionReport attribute_to_demand(const IntensityVector& total,
                                      const Vector& demand,
                                      const EmissionAccount& acct);

/// Y with Y (I - B^T) = F, B the allocation matrix. Then <Y, V> = |E|.
IntensityVector systemic_intensity(const IntensityVector& direct, const CoefficientMatrix& b);

/// Y = F (I - A^T)^-1 with the technical matrix A. Does not conserve emissions
/// unless all totals are equal; exists for comparison against the allocation
/// form.
IntensityVector systemic_intensity_literal(const IntensityVector& direct,
                                           const CoefficientMatrix& a);

AttributionReport attribute_to_value_added(const IntensityVector& systemic,
                                           const Vector& value_added,
                                           const EmissionAccount& acct);

}  // namespace eeio
