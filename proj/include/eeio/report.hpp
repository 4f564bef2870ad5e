#pragma once

#include <json.hpp>

#include <exception>

#include "eeio/leontief.hpp"
#include "eeio/sensitivity.hpp"

namespace eeio {

// JSON views of the report types. Key names are part of the CLI contract.

nlohmann::json to_json(const BalanceReport& report);
nlohmann::json to_json(const AttributionReport& report, const Economy& econ);
nlohmann::json to_json(const IntensityVector& intensity, const Economy& econ);
nlohmann::json to_json(const PerturbationReport& report);
nlohmann::json to_json(const SpectralEstimate& estimate);

/// {"error": {"code": ..., "message": ..., ...payload}}
nlohmann::json error_to_json(const Error& error);

}  // namespace eeio
