#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace moran {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Monte Carlo E[x^{Z_t}] against the closed-form birth-death PGF on the
// grid (a,b) in {(2,1),(1,0.5),(0.5,0.1)}, z0 in {1,3}, t in {0.5,1,2},
// x in {0.2,0.5,0.8}; 3-SE agreement per cell.
std::vector<CheckResult> validate_pgf(std::uint64_t seed, std::int64_t runs_per_cell);

// Exact-probability dominance for the binomial/Poisson bounds plus a Monte
// Carlo dominance check of the birth-death tail bound. Deterministic apart
// from the Monte Carlo cell.
std::vector<CheckResult> validate_bounds(std::uint64_t seed);

// Coupled runs (N=100, mu=0.01, q=0.5, s=0.05, horizon 200); zero
// violations of Y_i <= X_i over the given number of seeds.
std::vector<CheckResult> validate_coupling(std::uint64_t seed, int n_seeds);

// Small-instance CTMC oracle: N=2 absorption probabilities and N=3
// total-variation distance at the configured replicate count.
std::vector<CheckResult> validate_oracle(std::uint64_t seed, std::int64_t replicates);

// Drift identity at N=1000, mu=s=0.01, q in {0, 0.02, 0.5}, plus the
// front/mean speed identity on the q=0.02 runs.
std::vector<CheckResult> validate_drift(std::uint64_t seed, int replicates,
                                        double horizon, int threads);

}  // namespace moran
