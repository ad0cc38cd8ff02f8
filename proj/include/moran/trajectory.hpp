#pragma once

#include <cstdint>
#include <optional>

#include "moran/population.hpp"

namespace moran {

// One time-stamped snapshot of population statistics.
struct TrajectoryRecord {
  double time = 0.0;
  double mean_fitness = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  std::optional<std::int64_t> k_c;
  std::optional<std::int64_t> k_d;
  std::int64_t k_w = 0;
  std::int64_t min_class = 0;
  std::int64_t max_class = 0;
};

// kd_beta is the beta used for the k_d column.
TrajectoryRecord make_record(double time, const Population& p, double kd_beta);

}  // namespace moran
