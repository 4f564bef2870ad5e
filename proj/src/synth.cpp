#include "eeio/synth.hpp"

#include <string>

#include "eeio/leontief.hpp"
#include "eeio/random.hpp"

namespace eeio {

std::pair<Economy, EmissionAccount> generate_economy(const GeneratorConfig& cfg) {
  if (cfg.n < 1) throw Error(ErrorCode::DomainError, "generator needs n >= 1");
  if (!(cfg.column_sum_cap > 0.0 && cfg.column_sum_cap < 1.0)) {
    throw Error(ErrorCode::DomainError, "column_sum_cap must lie in (0, 1)");
  }
  if (!(cfg.demand_scale > 0.0) || !(cfg.emission_scale >= 0.0)) {
    throw Error(ErrorCode::DomainError, "demand_scale must be positive, emission_scale nonnegative");
  }

  const Eigen::Index n = cfg.n;
  Rng rng(cfg.seed);

  Matrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double column_sum = cfg.column_sum_cap * rng.uniform(0.05, 1.0);
    double weight_sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      a(i, j) = rng.uniform();
      weight_sum += a(i, j);
    }
    // scale slightly under the target so rounding cannot push it over the cap
    const double scale = weight_sum > 0.0 ? column_sum / weight_sum * (1.0 - 1e-15) : 0.0;
    a.col(j) *= scale;
  }

  Vector demand(n);
  for (Eigen::Index i = 0; i < n; ++i) demand(i) = cfg.demand_scale * rng.uniform(0.5, 1.5);

  // T = (I - A)^-1 D is positive: every Neumann term is nonnegative.
  const Vector totals = LeontiefSolver(a).solve(demand);
  Matrix transactions = a * totals.asDiagonal();

  std::vector<std::string> sectors;
  sectors.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) sectors.push_back("S" + std::to_string(i + 1));

  BuildPolicy policy;
  policy.money_unit = "money";
  Economy econ = build_economy(std::move(sectors), std::move(transactions), std::move(demand),
                               std::nullopt, std::nullopt, policy);

  Vector emissions(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    emissions(i) = cfg.emission_scale * rng.uniform() * econ.totals(i);
  }
  EmissionAccount acct = make_emission_account(econ, std::move(emissions), "emission");
  return {std::move(econ), std::move(acct)};
}

}  // namespace eeio
