#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eeio {

enum class ErrorCode {
  DimensionMismatch,
  NegativeEntry,
  ZeroTotal,
  ImbalancedTable,
  InconsistentTotals,
  KindMismatch,
  SingularSystem,
  Divergent,
  Truncated,
  DomainError,
  ParseError,
  DuplicateSector,
  MissingSector,
  UnknownSector,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Base of every data/consistency failure raised by the library. The CLI maps
/// all of them to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NegativeEntryError : public Error {
 public:
  NegativeEntryError(std::string field, std::size_t row,
                     std::optional<std::size_t> col, double value);

  const std::string& field() const noexcept { return field_; }
  std::size_t row() const noexcept { return row_; }
  std::optional<std::size_t> col() const noexcept { return col_; }
  double value() const noexcept { return value_; }

 private:
  std::string field_;
  std::size_t row_;
  std::optional<std::size_t> col_;
  double value_;
};

class ZeroTotalError : public Error {
 public:
  explicit ZeroTotalError(std::string sector, const std::string& detail = {});
  const std::string& sector() const noexcept { return sector_; }

 private:
  std::string sector_;
};

class SingularSystemError : public Error {
 public:
  explicit SingularSystemError(double rcond);
  /// Estimated reciprocal condition number of I - M in the 1-norm.
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

class DivergentError : public Error {
 public:
  explicit DivergentError(double rho);
  double spectral_radius() const noexcept { return rho_; }

 private:
  double rho_;
};

class ParseError : public Error {
 public:
  ParseError(std::string path, std::size_t line, std::size_t column,
             const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace eeio
