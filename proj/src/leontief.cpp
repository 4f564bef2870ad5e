#include "eeio/leontief.hpp"

#include <cmath>
#include <string>

#include "eeio/numeric.hpp"
#include "eeio/sensitivity.hpp"

namespace eeio {

namespace {

void require_kind(const CoefficientMatrix& m, CoefficientKind kind, const char* op) {
  if (m.kind() != kind) {
    throw Error(ErrorCode::KindMismatch, std::string(op) + " needs the " +
                                             std::string(to_string(kind)) + " matrix, got " +
                                             std::string(to_string(m.kind())));
  }
}

void require_kind(const IntensityVector& v, IntensityKind kind, const char* op) {
  if (v.kind != kind) {
    throw Error(ErrorCode::KindMismatch, std::string(op) + " needs a " +
                                             std::string(to_string(kind)) + " intensity, got " +
                                             std::string(to_string(v.kind)));
  }
}

void require_same_size(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": size " + std::to_string(a) +
                                                  " vs " + std::to_string(b));
  }
}

void require_positive_totals(const Economy& econ) {
  for (Eigen::Index i = 0; i < econ.size(); ++i) {
    if (!(econ.totals(i) > 0.0)) throw ZeroTotalError(econ.sectors[static_cast<std::size_t>(i)]);
  }
}

AttributionReport attribute(const RowVector& intensity, const Vector& weights,
                            const EmissionAccount& acct) {
  require_same_size(intensity.size(), weights.size(), "attribution weights");
  require_same_size(intensity.size(), acct.emissions.size(), "emission account");
  AttributionReport report;
  report.per_sector = intensity.transpose().cwiseProduct(weights);
  report.total_attributed = compensated_sum(report.per_sector);
  report.total_emissions = acct.total();
  const double gap = std::abs(report.total_attributed - report.total_emissions);
  report.conservation_residual =
      report.total_emissions > 0.0 ? gap / report.total_emissions : gap;
  return report;
}

}  // namespace

std::string_view to_string(CoefficientKind kind) {
  return kind == CoefficientKind::Technical ? "technical" : "allocation";
}

std::string_view to_string(IntensityKind kind) {
  switch (kind) {
    case IntensityKind::Direct: return "direct";
    case IntensityKind::TotalConsumer: return "total_consumer";
    case IntensityKind::TotalSystemic: return "total_systemic";
  }
  return "unknown";
}

CoefficientMatrix::CoefficientMatrix(CoefficientKind kind, Matrix values)
    : kind_(kind), values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient matrix must be square");
  }
}

LeontiefSolver::LeontiefSolver(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  const Matrix system = Matrix::Identity(m.rows(), m.cols()) - m;
  lu_.compute(system);
  rcond_ = lu_.rcond();
  const bool zero_pivot = (lu_.matrixLU().diagonal().array() == 0.0).any();
  if (zero_pivot || std::isnan(rcond_)) rcond_ = 0.0;
  if (rcond_ < kSingularRcond) throw SingularSystemError(rcond_);
}

Vector LeontiefSolver::solve(const Vector& b) const {
  require_same_size(b.size(), size(), "right-hand side");
  return lu_.solve(b);
}

RowVector LeontiefSolver::solve_row(const RowVector& f) const {
  require_same_size(f.size(), size(), "row right-hand side");
  const Vector rhs = f.transpose();
  const Vector y = lu_.transpose().solve(rhs);
  return y.transpose();
}

Matrix LeontiefSolver::inverse() const { return lu_.inverse(); }

CoefficientMatrix technical_coefficients(const Economy& econ) {
  require_positive_totals(econ);
  return {CoefficientKind::Technical,
          econ.transactions * econ.totals.cwiseInverse().asDiagonal()};
}

CoefficientMatrix allocation_coefficients(const Economy& econ) {
  require_positive_totals(econ);
  return {CoefficientKind::Allocation,
          econ.totals.cwiseInverse().asDiagonal() * econ.transactions};
}

IntensityVector direct_intensity(const Economy& econ, const EmissionAccount& acct) {
  require_same_size(acct.emissions.size(), econ.size(), "emission account");
  require_positive_totals(econ);
  return {IntensityKind::Direct, acct.emissions.cwiseQuotient(econ.totals).transpose()};
}

Matrix leontief_inverse(const CoefficientMatrix& a) { return LeontiefSolver(a.values()).inverse(); }

IntensityVector total_intensity(const IntensityVector& direct, const CoefficientMatrix& a) {
  require_kind(a, CoefficientKind::Technical, "total_intensity");
  return total_intensity(direct, LeontiefSolver(a.values()));
}

IntensityVector total_intensity(const IntensityVector& direct, const LeontiefSolver& solver) {
  require_kind(direct, IntensityKind::Direct, "total_intensity");
  require_same_size(direct.values.size(), solver.size(), "total_intensity");
  return {IntensityKind::TotalConsumer, solver.solve_row(direct.values)};
}

TruncatedError::TruncatedError(NeumannResult partial, double residual)
    : Error(ErrorCode::Truncated, "Neumann series stopped after " +
                                      std::to_string(partial.terms_used) +
                                      " terms with relative residual " + std::to_string(residual)),
      partial_(std::move(partial)),
      residual_(residual) {}

NeumannResult total_intensity_neumann(const IntensityVector& direct, const CoefficientMatrix& a,
                                      const NeumannOptions& options) {
  require_kind(direct, IntensityKind::Direct, "total_intensity_neumann");
  require_kind(a, CoefficientKind::Technical, "total_intensity_neumann");
  require_same_size(direct.values.size(), a.size(), "total_intensity_neumann");

  const SpectralEstimate rho = spectral_radius(a);
  if (rho.rho >= kDivergenceThreshold) throw DivergentError(rho.rho);

  const Matrix& m = a.values();
  RowVector sum = RowVector::Zero(direct.values.size());
  RowVector term = direct.values;
  std::size_t terms = 0;
  for (;;) {
    const double term_norm = term.cwiseAbs().maxCoeff();
    const double sum_norm = sum.cwiseAbs().maxCoeff();
    if (terms > 0 && term_norm <= options.tol * sum_norm) break;
    if (terms == options.max_terms) {
      const double residual = sum_norm > 0.0 ? term_norm / sum_norm : term_norm;
      throw TruncatedError({{IntensityKind::TotalConsumer, sum}, terms}, residual);
    }
    sum += term;
    ++terms;
    if (options.on_partial_sum) options.on_partial_sum(terms, sum);
    term = term * m;
  }
  return {{IntensityKind::TotalConsumer, std::move(sum)}, terms};
}

double consumer_direct_footprint(const IntensityVector& direct, const Vector& demand) {
  require_kind(direct, IntensityKind::Direct, "consumer_direct_footprint");
  require_same_size(direct.values.size(), demand.size(), "consumer_direct_footprint");
  return compensated_sum(direct.values.transpose().cwiseProduct(demand));
}

AttributionReport attribute_to_demand(const IntensityVector& total, const Vector& demand,
                                      const EmissionAccount& acct) {
  require_kind(total, IntensityKind::TotalConsumer, "attribute_to_demand");
  return attribute(total.values, demand, acct);
}

IntensityVector systemic_intensity(const IntensityVector& direct, const CoefficientMatrix& b) {
  require_kind(direct, IntensityKind::Direct, "systemic_intensity");
  require_kind(b, CoefficientKind::Allocation, "systemic_intensity");
  require_same_size(direct.values.size(), b.size(), "systemic_intensity");
  // Y (I - B^T) = F  <=>  (I - B) Y^T = F^T
  const LeontiefSolver solver(b.values());
  const Vector y = solver.solve(direct.values.transpose());
  return {IntensityKind::TotalSystemic, y.transpose()};
}

IntensityVector systemic_intensity_literal(const IntensityVector& direct,
                                           const CoefficientMatrix& a) {
  require_kind(direct, IntensityKind::Direct, "systemic_intensity_literal");
  require_kind(a, CoefficientKind::Technical, "systemic_intensity_literal");
  require_same_size(direct.values.size(), a.size(), "systemic_intensity_literal");
  const LeontiefSolver solver(a.values());
  const Vector y = solver.solve(direct.values.transpose());
  return {IntensityKind::TotalSystemic, y.transpose()};
}

AttributionReport attribute_to_value_added(const IntensityVector& systemic,
                                           const Vector& value_added,
                                           const EmissionAccount& acct) {
  require_kind(systemic, IntensityKind::TotalSystemic, "attribute_to_value_added");
  return attribute(systemic.values, value_added, acct);
}

}  // namespace eeio
