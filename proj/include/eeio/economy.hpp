#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "eeio/errors.hpp"

namespace eeio {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A closed-economy input-output table. Entry (i, j) of `transactions` is the
/// flow sold by sector i to sector j; `demand`, `value_added` and `totals` are
/// columns indexed by sector.
///
/// The struct is a plain value. `build_economy` is the validating factory;
/// everything downstream takes `const Economy&`.
struct Economy {
  std::vector<std::string> sectors;
  Matrix transactions;
  Vector demand;
  Vector value_added;
  Vector totals;
  std::string money_unit;
  /// Labels removed by the drop-zero-sectors policy, in original order.
  std::vector<std::string> dropped_sectors;

  Eigen::Index size() const { return static_cast<Eigen::Index>(sectors.size()); }

  /// Field-by-field equality, exact on every number.
  friend bool operator==(const Economy&, const Economy&);
};

struct EmissionAccount {
  Vector emissions;
  std::string emission_unit;

  /// |E|, compensated sum in index order.
  double total() const;

  friend bool operator==(const EmissionAccount&, const EmissionAccount&);
};

struct BalanceReport {
  Vector row_residuals;
  Vector col_residuals;
  double max_residual = 0.0;
  double tol_rel = 0.0;
  bool ok = true;

  friend bool operator==(const BalanceReport&, const BalanceReport&);
};

struct BuildPolicy {
  double tol_rel = 1e-6;
  bool allow_negative_value_added = false;
  bool drop_zero_sectors = false;
  std::string money_unit;
};

class ImbalancedTableError : public Error {
 public:
  explicit ImbalancedTableError(BalanceReport report);
  const BalanceReport& report() const noexcept { return report_; }

 private:
  BalanceReport report_;
};

/// Builds and validates an economy. Missing totals are derived from row sums
/// plus demand, missing value added from totals minus column sums. Supplied
/// totals win over derived ones as long as both identities hold within
/// `policy.tol_rel`.
Economy build_economy(std::vector<std::string> sectors, Matrix transactions,
                      Vector demand, std::optional<Vector> value_added = {},
                      std::optional<Vector> totals = {},
                      const BuildPolicy& policy = {});

/// Relative residuals of both balance identities. Never throws; a sector with
/// t_i = 0 gets an absolute residual.
BalanceReport validate_balance(const Economy& econ, double tol_rel = 1e-6);

/// Builds an emission account, checking length and sign.
EmissionAccount make_emission_account(const Economy& econ, Vector emissions,
                                      std::string unit = {});

class CoefficientMatrix;

/// ||D - (I - A) T||_inf / ||D||_inf for the technical coefficients of `econ`.
/// Absolute when D = 0.
double demand_identity_residual(const Economy& econ, const CoefficientMatrix& a);

}  // namespace eeio
