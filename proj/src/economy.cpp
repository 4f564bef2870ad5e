#include "eeio/economy.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "eeio/leontief.hpp"
#include "eeio/numeric.hpp"

namespace eeio {

namespace {

bool same_values(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

bool same_values(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

void require_size(const Vector& v, Eigen::Index n, const char* field) {
  if (v.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, std::string(field) + " has length " +
                                                  std::to_string(v.size()) + ", expected " +
                                                  std::to_string(n));
  }
}

template <typename Derived>
void require_finite(const Eigen::DenseBase<Derived>& m, const char* field) {
  if (!m.derived().array().isFinite().all()) {
    throw Error(ErrorCode::DomainError, std::string(field) + " contains a non-finite value");
  }
}

void require_nonnegative(const Vector& v, const char* field) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) < 0.0) throw NegativeEntryError(field, static_cast<std::size_t>(i), {}, v(i));
  }
}

double residual(double total, double sum) {
  const double diff = std::abs(total - sum);
  return total > 0.0 ? diff / total : diff;
}

Economy drop_sectors(Economy econ, const std::vector<Eigen::Index>& keep) {
  const auto m = static_cast<Eigen::Index>(keep.size());
  Economy out;
  out.money_unit = std::move(econ.money_unit);
  out.transactions.resize(m, m);
  out.demand.resize(m);
  out.value_added.resize(m);
  out.totals.resize(m);
  std::vector<bool> kept(econ.sectors.size(), false);
  for (Eigen::Index r = 0; r < m; ++r) {
    const Eigen::Index i = keep[static_cast<std::size_t>(r)];
    kept[static_cast<std::size_t>(i)] = true;
    out.sectors.push_back(econ.sectors[static_cast<std::size_t>(i)]);
    out.demand(r) = econ.demand(i);
    out.value_added(r) = econ.value_added(i);
    out.totals(r) = econ.totals(i);
    for (Eigen::Index c = 0; c < m; ++c) {
      out.transactions(r, c) = econ.transactions(i, keep[static_cast<std::size_t>(c)]);
    }
  }
  out.dropped_sectors = std::move(econ.dropped_sectors);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (!kept[i]) out.dropped_sectors.push_back(econ.sectors[i]);
  }
  return out;
}

}  // namespace

bool operator==(const Economy& a, const Economy& b) {
  return a.sectors == b.sectors && a.money_unit == b.money_unit &&
         a.dropped_sectors == b.dropped_sectors && same_values(a.transactions, b.transactions) &&
         same_values(a.demand, b.demand) && same_values(a.value_added, b.value_added) &&
         same_values(a.totals, b.totals);
}

bool operator==(const EmissionAccount& a, const EmissionAccount& b) {
  return a.emission_unit == b.emission_unit && same_values(a.emissions, b.emissions);
}

bool operator==(const BalanceReport& a, const BalanceReport& b) {
  return same_values(a.row_residuals, b.row_residuals) &&
         same_values(a.col_residuals, b.col_residuals) && a.max_residual == b.max_residual &&
         a.tol_rel == b.tol_rel && a.ok == b.ok;
}

double EmissionAccount::total() const { return compensated_sum(emissions); }

ImbalancedTableError::ImbalancedTableError(BalanceReport report)
    : Error(ErrorCode::ImbalancedTable,
            "balance identities violated: max relative residual " +
                std::to_string(report.max_residual) + " exceeds " + std::to_string(report.tol_rel)),
      report_(std::move(report)) {}

Economy build_economy(std::vector<std::string> sectors, Matrix transactions, Vector demand,
                      std::optional<Vector> value_added, std::optional<Vector> totals,
                      const BuildPolicy& policy) {
  const auto n = static_cast<Eigen::Index>(sectors.size());
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "economy has no sectors");
  {
    std::unordered_set<std::string> seen;
    for (const auto& s : sectors) {
      if (s.empty()) throw Error(ErrorCode::DomainError, "empty sector label");
      if (!seen.insert(s).second) {
        throw Error(ErrorCode::DuplicateSector, "duplicate sector label '" + s + "'");
      }
    }
  }
  if (transactions.rows() != n || transactions.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "transaction matrix is " + std::to_string(transactions.rows()) + "x" +
                    std::to_string(transactions.cols()) + ", expected " + std::to_string(n) +
                    "x" + std::to_string(n));
  }
  require_size(demand, n, "demand");
  if (value_added) require_size(*value_added, n, "value_added");
  if (totals) require_size(*totals, n, "totals");

  require_finite(transactions, "transactions");
  require_finite(demand, "demand");
  if (value_added) require_finite(*value_added, "value_added");
  if (totals) require_finite(*totals, "totals");

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (transactions(i, j) < 0.0) {
        throw NegativeEntryError("transactions", static_cast<std::size_t>(i),
                                 static_cast<std::size_t>(j), transactions(i, j));
      }
    }
  }
  require_nonnegative(demand, "demand");
  if (totals) require_nonnegative(*totals, "totals");
  if (value_added && !policy.allow_negative_value_added) {
    require_nonnegative(*value_added, "value_added");
  }

  Economy econ;
  econ.sectors = std::move(sectors);
  econ.money_unit = policy.money_unit;
  econ.totals = totals ? std::move(*totals) : Vector(transactions.rowwise().sum() + demand);
  econ.value_added = value_added
                         ? std::move(*value_added)
                         : Vector(econ.totals - transactions.colwise().sum().transpose());
  econ.transactions = std::move(transactions);
  econ.demand = std::move(demand);

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (econ.totals(i) > 0.0) {
      keep.push_back(i);
      continue;
    }
    const auto& label = econ.sectors[static_cast<std::size_t>(i)];
    if (!policy.drop_zero_sectors) throw ZeroTotalError(label);
    const bool isolated = econ.transactions.row(i).isZero(0.0) &&
                          econ.transactions.col(i).isZero(0.0) && econ.demand(i) == 0.0 &&
                          econ.value_added(i) == 0.0;
    if (!isolated) throw ZeroTotalError(label, "cannot drop a sector with nonzero flows");
  }
  if (keep.empty()) throw Error(ErrorCode::DimensionMismatch, "every sector has zero output");
  if (static_cast<Eigen::Index>(keep.size()) != n) econ = drop_sectors(std::move(econ), keep);

  if (!policy.allow_negative_value_added) require_nonnegative(econ.value_added, "value_added");

  BalanceReport report = validate_balance(econ, policy.tol_rel);
  if (!report.ok) throw ImbalancedTableError(std::move(report));
  return econ;
}

BalanceReport validate_balance(const Economy& econ, double tol_rel) {
  const Eigen::Index n = econ.size();
  BalanceReport report;
  report.tol_rel = tol_rel;
  report.row_residuals.resize(n);
  report.col_residuals.resize(n);
  const Vector row_sums = econ.transactions.rowwise().sum();
  const Vector col_sums = econ.transactions.colwise().sum().transpose();
  for (Eigen::Index i = 0; i < n; ++i) {
    report.row_residuals(i) = residual(econ.totals(i), row_sums(i) + econ.demand(i));
    report.col_residuals(i) = residual(econ.totals(i), econ.value_added(i) + col_sums(i));
  }
  report.max_residual = 0.0;
  bool finite = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (double r : {report.row_residuals(i), report.col_residuals(i)}) {
      if (std::isnan(r)) finite = false;
      report.max_residual = std::max(report.max_residual, r);
    }
  }
  report.ok = finite && report.max_residual <= tol_rel;
  return report;
}

EmissionAccount make_emission_account(const Economy& econ, Vector emissions, std::string unit) {
  require_size(emissions, econ.size(), "emissions");
  require_finite(emissions, "emissions");
  require_nonnegative(emissions, "emissions");
  EmissionAccount acct{std::move(emissions), std::move(unit)};
  if (!std::isfinite(acct.total())) {
    throw Error(ErrorCode::DomainError, "total emissions overflow");
  }
  return acct;
}

double demand_identity_residual(const Economy& econ, const CoefficientMatrix& a) {
  if (a.kind() != CoefficientKind::Technical) {
    throw Error(ErrorCode::KindMismatch, "demand identity needs the technical coefficients");
  }
  if (a.size() != econ.size()) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient matrix does not match economy");
  }
  const Vector rebuilt = econ.totals - a.values() * econ.totals;
  const double gap = (econ.demand - rebuilt).cwiseAbs().maxCoeff();
  const double scale = econ.demand.cwiseAbs().maxCoeff();
  return scale > 0.0 ? gap / scale : gap;
}

}  // namespace eeio
