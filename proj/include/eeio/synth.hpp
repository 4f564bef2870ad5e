#pragma once

#include <cstdint>
#include <utility>

#include "eeio/economy.hpp"

namespace eeio {

struct GeneratorConfig {
  Eigen::Index n = 5;
  std::uint64_t seed = 0;
  double column_sum_cap = 0.9;
  double demand_scale = 100.0;
  double emission_scale = 0.1;
};

/// Random balanced economy whose technical coefficients have every column sum
/// at most `column_sum_cap`. Built A -> T -> C so demand stays positive.
std::pair<Economy, EmissionAccount> generate_economy(const GeneratorConfig& cfg);

}  // namespace eeio
