#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moran/params.hpp"
#include "moran/sim.hpp"
#include "moran/stats.hpp"
#include "moran/trajectory.hpp"

namespace moran {

struct RateEstimate {
  double rate = 0.0;
  double se = 0.0;
};

// OLS slope of mean_fitness against time over records with
// time >= burn_in_fraction * (last record time). Requires at least 10
// post-burn-in records.
RateEstimate estimate_adaptation_rate(const std::vector<TrajectoryRecord>& traj,
                                      double burn_in_fraction);

struct SweepConfig {
  std::vector<Params> grid;
  std::int64_t replicates = 1;
  double horizon = 0.0;
  double burn_in_fraction = 0.2;
  double record_interval = 1.0;
  std::uint64_t master_seed = 0;
  std::uint64_t max_events = 2'000'000'000ULL;  // per-run event budget

  void validate() const;
};

struct SweepCell {
  std::size_t grid_index = 0;
  std::int64_t replicate = 0;
  Params params;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;  // set when !ok (budget exhaustion)
  double adaptation_rate = 0.0;
  double rate_se = 0.0;  // within-replicate OLS standard error
  double mean_c2 = 0.0;  // time-averaged post-burn-in c2
};

// One class-level run per (grid point, replicate) from the all-at-zero
// population. Per-cell streams are a pure function of
// (master_seed, grid index, replicate), so results do not depend on the
// worker count. threads <= 0 selects the hardware concurrency.
std::vector<SweepCell> run_sweep(const SweepConfig& cfg, int threads = 1);

// Discrepancy report for the exact-in-expectation identities. With two or
// more runs the combined SE comes from across-replicate variation of the
// per-run discrepancies; with one run it falls back to within-run SEs.
struct IdentityReport {
  double estimate = 0.0;    // measured rate (or k_c slope)
  double predicted = 0.0;   // identity prediction (or mean-fitness slope)
  double discrepancy = 0.0;
  double combined_se = 0.0;
  double sigma_units = 0.0;  // |discrepancy| / combined_se
  std::size_t replicates = 0;
};

// OLS rate vs mu*(2q-1) + s * (time-average of c2).
IdentityReport drift_identity_check(
    const std::vector<std::vector<TrajectoryRecord>>& runs, const Params& params,
    double burn_in_fraction);

// Slope of k_c(t) vs slope of mean fitness over the same post-burn-in
// window. Throws if k_c is absent from any post-burn-in record.
IdentityReport front_speed_check(
    const std::vector<std::vector<TrajectoryRecord>>& runs,
    double burn_in_fraction);

// Exact transient distribution of the mu = 0 process on fitness multisets
// (uniformization, Poisson truncation at cumulative mass 1 - 1e-12)
// compared against empirical frequencies from simulate_classes.
struct OracleReport {
  double tv_distance = 0.0;
  std::vector<std::vector<std::int64_t>> states;  // sorted fitness multisets
  std::vector<double> exact;
  std::vector<double> empirical;

  double exact_prob(const std::vector<std::int64_t>& sorted_multiset) const;
  double empirical_prob(const std::vector<std::int64_t>& sorted_multiset) const;
};

// n in {2, 3}; initial fitnesses {0, .., n-1}; s > 0; mutation off.
OracleReport small_instance_oracle(int n, double s, double t,
                                   std::int64_t replicates, std::uint64_t seed);

// Time-averaged skewness c3/c2^(3/2) and kurtosis c4/c2^2 over post-burn-in
// records; degenerate records (c2 == 0) are excluded. valid == false when
// every record is degenerate.
struct StationarityReport {
  bool valid = false;
  double skewness = 0.0;
  double skewness_se = 0.0;
  double kurtosis = 0.0;
  double kurtosis_se = 0.0;
  std::size_t n = 0;
};
StationarityReport stationarity_diagnostics(
    const std::vector<TrajectoryRecord>& traj, double burn_in_fraction);

}  // namespace moran
