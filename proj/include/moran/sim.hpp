#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "moran/params.hpp"
#include "moran/population.hpp"
#include "moran/trajectory.hpp"

namespace moran {

enum class SimMode { class_level, individual_level, coupled_neutral };

struct SimConfig {
  Params params;
  double horizon = 0.0;           // generations
  double record_interval = 1.0;   // generations between emitted records
  std::uint64_t seed = 0;
  SimMode mode = SimMode::class_level;
  double kd_beta = 0.5;           // beta for the k_d record column
  std::uint64_t max_events = 2'000'000'000ULL;  // hard event budget per run

  void validate() const;
};

// One realized jump of the process. For the class-level engine source and
// target are fitness classes; for the individual engines they are
// individual indices. Selection events always have the fitter side as
// source. Resampling events include same-class / self draws (no-ops).
struct EventKind {
  enum class Tag { mutation_up, mutation_down, selection, resampling };
  Tag tag = Tag::resampling;
  std::int64_t source = 0;
  std::int64_t target = 0;
};

struct EventCounters {
  std::uint64_t mutation_up = 0;
  std::uint64_t mutation_down = 0;
  std::uint64_t resampling = 0;           // includes no-op draws
  std::uint64_t selection_proposals = 0;  // individual engine thinning only
  std::uint64_t selection_accepted = 0;

  std::uint64_t mutations() const { return mutation_up + mutation_down; }
};

// Called after each applied event (selection proposals that were rejected
// are not reported). Observing is optional and costs nothing when unset.
using EventObserver = std::function<void(double time, const EventKind&)>;

// Per-individual fitness values; y, when present, is the neutral shadow
// driven by the same mutation and resampling streams.
struct IndividualState {
  std::vector<std::int64_t> x;
  std::optional<std::vector<std::int64_t>> y;

  void validate() const;
  Population x_population() const;
  static IndividualState all_zero(std::int64_t n, bool with_shadow);
};

struct ClassRunResult {
  std::vector<TrajectoryRecord> records;
  Population final_population;  // state at the horizon
  EventCounters counters;
};

struct IndividualRunResult {
  std::vector<TrajectoryRecord> records;          // selected process X
  std::vector<TrajectoryRecord> neutral_records;  // shadow Y (coupled mode)
  IndividualState final_state;
  EventCounters counters;
};

// Exact event-driven simulation of the class-level process. Total rates:
// mutation mu*N, resampling N (ordered pairs, same-class draws are no-ops),
// selection s*N*sum_{k>l}(k-l)P_k P_l. Deterministic given (cfg, initial).
ClassRunResult simulate_classes(const SimConfig& cfg, const Population& initial,
                                const EventObserver& observer = nullptr);

// Individual-level engine; selection realized by thinning against the
// current support width. Intended for validation scale (N <= 1e4).
IndividualRunResult simulate_individuals(const SimConfig& cfg,
                                         const IndividualState& initial,
                                         const EventObserver& observer = nullptr);

// X plus neutral shadow Y on the identical mutation/resampling streams;
// selection applies to X only. Any Y_i > X_i aborts with
// DominationViolation. Requires initial.y == initial.x.
IndividualRunResult simulate_coupled(const SimConfig& cfg,
                                     const IndividualState& initial,
                                     const EventObserver& observer = nullptr);

}  // namespace moran
