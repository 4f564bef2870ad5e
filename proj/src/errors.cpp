#include "eeio/errors.hpp"

#include <sstream>

namespace eeio {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::ZeroTotal: return "ZeroTotal";
    case ErrorCode::ImbalancedTable: return "ImbalancedTable";
    case ErrorCode::InconsistentTotals: return "InconsistentTotals";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::Divergent: return "Divergent";
    case ErrorCode::Truncated: return "Truncated";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateSector: return "DuplicateSector";
    case ErrorCode::MissingSector: return "MissingSector";
    case ErrorCode::UnknownSector: return "UnknownSector";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string negative_message(const std::string& field, std::size_t row,
                             std::optional<std::size_t> col, double value) {
  std::ostringstream os;
  os << "negative entry in " << field << " at (" << row;
  if (col) os << ", " << *col;
  os << "): " << value;
  return os.str();
}

std::string format_number(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

NegativeEntryError::NegativeEntryError(std::string field, std::size_t row,
                                       std::optional<std::size_t> col, double value)
    : Error(ErrorCode::NegativeEntry, negative_message(field, row, col, value)),
      field_(std::move(field)),
      row_(row),
      col_(col),
      value_(value) {}

ZeroTotalError::ZeroTotalError(std::string sector, const std::string& detail)
    : Error(ErrorCode::ZeroTotal,
            "sector '" + sector + "' has zero total output" + (detail.empty() ? "" : ": " + detail)),
      sector_(std::move(sector)) {}

SingularSystemError::SingularSystemError(double rcond)
    : Error(ErrorCode::SingularSystem,
            "I - M is singular to working precision (rcond " + format_number(rcond) + ")"),
      rcond_(rcond) {}

DivergentError::DivergentError(double rho)
    : Error(ErrorCode::Divergent,
            "spectral radius estimate " + format_number(rho) + " is not below 1"),
      rho_(rho) {}

ParseError::ParseError(std::string path, std::size_t line, std::size_t column,
                       const std::string& what)
    : Error(ErrorCode::ParseError, path + ":" + std::to_string(line) + ":" +
                                       std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

}  // namespace eeio
