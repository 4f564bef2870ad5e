#include "eeio/report.hpp"

namespace eeio {

namespace {

template <typename Derived>
nlohmann::json array(const Eigen::DenseBase<Derived>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

nlohmann::json to_json(const BalanceReport& report) {
  return {
      {"row_residuals", array(report.row_residuals)},
      {"col_residuals", array(report.col_residuals)},
      {"max_residual", report.max_residual},
      {"tol_rel", report.tol_rel},
      {"ok", report.ok},
  };
}

nlohmann::json to_json(const AttributionReport& report, const Economy& econ) {
  return {
      {"sectors", econ.sectors},
      {"per_sector", array(report.per_sector)},
      {"total_attributed", report.total_attributed},
      {"total_emissions", report.total_emissions},
      {"conservation_residual", report.conservation_residual},
  };
}

nlohmann::json to_json(const IntensityVector& intensity, const Economy& econ) {
  return {
      {"kind", to_string(intensity.kind)},
      {"sectors", econ.sectors},
      {"values", array(intensity.values)},
  };
}

nlohmann::json to_json(const PerturbationReport& report) {
  return {
      {"epsilon", report.epsilon},
      {"samples", report.samples},
      {"baseline_norm", report.baseline_norm},
      {"max_deviation", report.max_deviation},
      {"amplification", report.amplification},
      {"diverged_count", report.diverged_count},
      {"seed", report.seed},
  };
}

nlohmann::json to_json(const SpectralEstimate& estimate) {
  return {
      {"rho", estimate.rho},
      {"iterations", estimate.iterations},
      {"converged", estimate.converged},
  };
}

nlohmann::json error_to_json(const Error& error) {
  nlohmann::json body = {
      {"code", to_string(error.code())},
      {"message", error.what()},
  };
  if (const auto* e = dynamic_cast<const ImbalancedTableError*>(&error)) {
    body["balance"] = to_json(e->report());
  } else if (const auto* e = dynamic_cast<const NegativeEntryError*>(&error)) {
    body["field"] = e->field();
    body["row"] = e->row();
    if (e->col()) body["col"] = *e->col();
  } else if (const auto* e = dynamic_cast<const ZeroTotalError*>(&error)) {
    body["sector"] = e->sector();
  } else if (const auto* e = dynamic_cast<const SingularSystemError*>(&error)) {
    body["rcond"] = e->rcond();
  } else if (const auto* e = dynamic_cast<const DivergentError*>(&error)) {
    body["spectral_radius"] = e->spectral_radius();
  } else if (const auto* e = dynamic_cast<const TruncatedError*>(&error)) {
    body["terms_used"] = e->partial().terms_used;
    body["residual"] = e->residual();
  } else if (const auto* e = dynamic_cast<const ParseError*>(&error)) {
    body["line"] = e->line();
    body["column"] = e->column();
  }
  return {{"error", body}};
}

}  // namespace eeio
