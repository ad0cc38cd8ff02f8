#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace moran {

// Linear birth-death chain: Z -> Z+1 at rate a*Z, Z -> Z-1 at rate b*Z,
// absorbing at zero.
struct BirthDeathConfig {
  double a = 0.0;  // per-capita birth rate
  double b = 0.0;  // per-capita death rate
  std::int64_t z0 = 1;
  double horizon = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct BirthDeathResult {
  std::int64_t final_count = 0;
  // (time, count after the jump), one entry per event.
  std::vector<std::pair<double, std::int64_t>> events;
};

BirthDeathResult simulate_birth_death(const BirthDeathConfig& cfg);

}  // namespace moran
