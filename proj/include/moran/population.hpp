#pragma once

#include <cstdint>
#include <map>
#include <optional>

namespace moran {

// Occupancy counts over integer fitness classes. Classes with zero
// occupancy are absent from the map and the stored counts sum to `total`.
struct Population {
  std::map<std::int64_t, std::int64_t> counts;
  std::int64_t total = 0;

  static Population from_counts(std::map<std::int64_t, std::int64_t> counts);
  static Population point_mass(std::int64_t n, std::int64_t fitness_class);

  void validate() const;

  std::int64_t min_class() const;
  std::int64_t max_class() const;
};

// Mean fitness m(p) = sum_k k * count_k / N.
double mean_fitness(const Population& p);

// n-th central moment, n >= 2. c2 is the fitness variance.
double central_moment(const Population& p, int n);

// Mean and c2..c4 in one pass (mean first, then centred powers).
struct PopulationMoments {
  double mean = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
};
PopulationMoments population_moments(const Population& p);

// Front of the wave: largest k with strictly more than (ln N)^2 individuals
// at fitness >= k. Empty only when (ln N)^2 >= N, which cannot happen for
// valid populations, but the optional keeps the contract explicit.
std::optional<std::int64_t> front_kc(const Population& p);

// Largest k with strictly more than exp((ln N)^(1-beta)) individuals at
// fitness >= k; beta in (0,1). Empty when the threshold reaches N
// (only possible for N <= 2).
std::optional<std::int64_t> front_kd(const Population& p, double beta);

// Width of the support: max occupied class minus min occupied class.
std::int64_t support_width(const Population& p);

}  // namespace moran
