#include "moran/population.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "moran/trajectory.hpp"

namespace moran {

Population Population::from_counts(std::map<std::int64_t, std::int64_t> counts) {
  Population p;
  p.counts = std::move(counts);
  for (const auto& [k, c] : p.counts) {
    (void)k;
    p.total += c;
  }
  p.validate();
  return p;
}

Population Population::point_mass(std::int64_t n, std::int64_t fitness_class) {
  Population p;
  p.counts[fitness_class] = n;
  p.total = n;
  p.validate();
  return p;
}

void Population::validate() const {
  if (total < 1) throw std::invalid_argument("population total must be >= 1");
  std::int64_t sum = 0;
  for (const auto& [k, c] : counts) {
    (void)k;
    if (c < 1)
      throw std::invalid_argument("stored occupancy must be >= 1, got " +
                                  std::to_string(c));
    sum += c;
  }
  if (sum != total)
    throw std::invalid_argument("occupancies sum to " + std::to_string(sum) +
                                ", expected " + std::to_string(total));
}

std::int64_t Population::min_class() const {
  if (counts.empty()) throw std::invalid_argument("empty population");
  return counts.begin()->first;
}

std::int64_t Population::max_class() const {
  if (counts.empty()) throw std::invalid_argument("empty population");
  return counts.rbegin()->first;
}

double mean_fitness(const Population& p) {
  const double n = static_cast<double>(p.total);
  double acc = 0.0;
  for (const auto& [k, c] : p.counts) acc += static_cast<double>(k) * static_cast<double>(c);
  return acc / n;
}

double central_moment(const Population& p, int n) {
  if (n < 2) throw std::invalid_argument("central_moment requires n >= 2");
  const double total = static_cast<double>(p.total);
  const double m = mean_fitness(p);
  double acc = 0.0;
  for (const auto& [k, c] : p.counts)
    acc += std::pow(static_cast<double>(k) - m, n) * static_cast<double>(c);
  return acc / total;
}

PopulationMoments population_moments(const Population& p) {
  PopulationMoments out;
  const double total = static_cast<double>(p.total);
  out.mean = mean_fitness(p);
  for (const auto& [k, c] : p.counts) {
    const double d = static_cast<double>(k) - out.mean;
    const double w = static_cast<double>(c);
    const double d2 = d * d;
    out.c2 += d2 * w;
    out.c3 += d2 * d * w;
    out.c4 += d2 * d2 * w;
  }
  out.c2 /= total;
  out.c3 /= total;
  out.c4 /= total;
  return out;
}

namespace {

// Largest k whose tail count strictly exceeds the threshold, scanning the
// occupied classes from the top. Tail counts are constant below min_class,
// so the scan covers every candidate.
std::optional<std::int64_t> front_with_threshold(const Population& p,
                                                 double threshold) {
  std::int64_t tail = 0;
  for (auto it = p.counts.rbegin(); it != p.counts.rend(); ++it) {
    tail += it->second;
    if (static_cast<double>(tail) > threshold) return it->first;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::int64_t> front_kc(const Population& p) {
  const double log_n = std::log(static_cast<double>(p.total));
  return front_with_threshold(p, log_n * log_n);
}

std::optional<std::int64_t> front_kd(const Population& p, double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("front_kd requires beta in (0, 1)");
  const double log_n = std::log(static_cast<double>(p.total));
  return front_with_threshold(p, std::exp(std::pow(log_n, 1.0 - beta)));
}

std::int64_t support_width(const Population& p) {
  return p.max_class() - p.min_class();
}

TrajectoryRecord make_record(double time, const Population& p, double kd_beta) {
  TrajectoryRecord r;
  r.time = time;
  const PopulationMoments mom = population_moments(p);
  r.mean_fitness = mom.mean;
  r.c2 = mom.c2;
  r.c3 = mom.c3;
  r.c4 = mom.c4;
  r.k_c = front_kc(p);
  r.k_d = front_kd(p, kd_beta);
  r.min_class = p.min_class();
  r.max_class = p.max_class();
  r.k_w = r.max_class - r.min_class;
  return r;
}

}  // namespace moran
