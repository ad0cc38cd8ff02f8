#include <cassert>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "moran/errors.hpp"
#include "moran/rng.hpp"
#include "moran/sim.hpp"

namespace moran {

void IndividualState::validate() const {
  if (x.empty()) throw std::invalid_argument("IndividualState: x is empty");
  if (y) {
    if (y->size() != x.size())
      throw std::invalid_argument("IndividualState: y size != x size");
    for (std::size_t i = 0; i < x.size(); ++i)
      if ((*y)[i] > x[i])
        throw std::invalid_argument(
            "IndividualState: domination y_i <= x_i violated at index " +
            std::to_string(i));
  }
}

Population IndividualState::x_population() const {
  std::map<std::int64_t, std::int64_t> counts;
  for (std::int64_t v : x) ++counts[v];
  return Population::from_counts(std::move(counts));
}

IndividualState IndividualState::all_zero(std::int64_t n, bool with_shadow) {
  IndividualState st;
  st.x.assign(static_cast<std::size_t>(n), 0);
  if (with_shadow) st.y = st.x;
  return st;
}

namespace {

// Occupancy map kept next to the value vector so support extremes (and the
// thinning bound k_w) are exact at every event.
struct Occupancy {
  std::map<std::int64_t, std::int64_t> counts;

  void init(const std::vector<std::int64_t>& values) {
    counts.clear();
    for (std::int64_t v : values) ++counts[v];
  }
  void move_value(std::int64_t from, std::int64_t to) {
    ++counts[to];
    auto it = counts.find(from);
    if (--it->second == 0) counts.erase(it);
  }
  std::int64_t width() const {
    return counts.rbegin()->first - counts.begin()->first;
  }
  Population to_population(std::int64_t total) const {
    Population p;
    p.counts = counts;
    p.total = total;
    return p;
  }
};

IndividualRunResult run_individual(const SimConfig& cfg,
                                   const IndividualState& initial,
                                   const EventObserver& observer, bool coupled) {
  cfg.validate();
  initial.validate();
  const std::int64_t n_int = cfg.params.pop_size;
  if (static_cast<std::int64_t>(initial.x.size()) != n_int)
    throw std::invalid_argument("initial state size != pop_size");
  if (coupled) {
    if (!initial.y || *initial.y != initial.x)
      throw std::invalid_argument("coupled mode requires initial y == x");
  } else if (initial.y) {
    throw std::invalid_argument("individual mode does not take a shadow state");
  }

  const double n = static_cast<double>(n_int);
  const double mu = cfg.params.mu;
  const double q = cfg.params.q;
  const double s = cfg.params.s;
  const double mut_rate = mu * n;
  const double res_rate = n;

  std::vector<std::int64_t> x = initial.x;
  std::vector<std::int64_t> y = coupled ? *initial.y : std::vector<std::int64_t>{};
  Occupancy occ_x, occ_y;
  occ_x.init(x);
  if (coupled) occ_y.init(y);

  RngEngine rng = make_engine(cfg.seed);

  auto check_domination = [&](std::size_t i) {
    if (coupled && y[i] > x[i])
      throw DominationViolation(
          "coupled run: Y_" + std::to_string(i) + " = " + std::to_string(y[i]) +
          " > X_" + std::to_string(i) + " = " + std::to_string(x[i]));
  };

  std::vector<TrajectoryRecord> records, neutral_records;
  std::uint64_t rec_idx = 0;
  auto record_time = [&](std::uint64_t i) {
    return static_cast<double>(i) * cfg.record_interval;
  };
  auto emit_before = [&](double limit) {
    while (record_time(rec_idx) <= cfg.horizon && record_time(rec_idx) < limit) {
      const double rt = record_time(rec_idx);
      records.push_back(make_record(rt, occ_x.to_population(n_int), cfg.kd_beta));
      if (coupled) {
        neutral_records.push_back(
            make_record(rt, occ_y.to_population(n_int), cfg.kd_beta));
        for (std::size_t i = 0; i < x.size(); ++i) check_domination(i);
      }
      ++rec_idx;
    }
  };

  EventCounters ctr;
  std::uint64_t events = 0;
  double t = 0.0;

  while (true) {
    const std::int64_t kw = occ_x.width();
    if (mu == 0.0 && kw == 0 && (!coupled || occ_y.counts.size() == 1)) break;

    // Thinning bound for selection: proposals at s*k_w*N, acceptance
    // (X_i - X_j)+ / k_w, which realizes the exact per-pair rate
    // s*(X_i - X_j)+ / N for any dominating k_w.
    const double sel_bound = s * static_cast<double>(kw) * n;
    const double total_rate = mut_rate + res_rate + sel_bound;
    const double te = t + exponential(rng, total_rate);
    emit_before(te);
    if (te > cfg.horizon) break;
    t = te;
    if (++events > cfg.max_events)
      throw BudgetExceeded("simulate_individuals: event budget exceeded (" +
                           std::to_string(cfg.max_events) + ")");

    const double u = uniform_unit(rng) * total_rate;
    if (u < mut_rate) {
      const std::size_t i = static_cast<std::size_t>(
          uniform_below(rng, static_cast<std::uint64_t>(n_int)));
      const bool up = uniform_unit(rng) < q;
      const std::int64_t d = up ? 1 : -1;
      occ_x.move_value(x[i], x[i] + d);
      x[i] += d;
      if (coupled) {
        occ_y.move_value(y[i], y[i] + d);
        y[i] += d;
        check_domination(i);
      }
      if (up)
        ++ctr.mutation_up;
      else
        ++ctr.mutation_down;
      if (observer)
        observer(t, EventKind{up ? EventKind::Tag::mutation_up
                                 : EventKind::Tag::mutation_down,
                              static_cast<std::int64_t>(i),
                              static_cast<std::int64_t>(i)});
    } else if (u < mut_rate + res_rate) {
      const std::size_t i = static_cast<std::size_t>(
          uniform_below(rng, static_cast<std::uint64_t>(n_int)));
      const std::size_t j = static_cast<std::size_t>(
          uniform_below(rng, static_cast<std::uint64_t>(n_int)));
      ++ctr.resampling;
      if (i != j) {
        occ_x.move_value(x[j], x[i]);
        x[j] = x[i];
        if (coupled) {
          occ_y.move_value(y[j], y[i]);
          y[j] = y[i];
          check_domination(j);
        }
      }
      if (observer)
        observer(t, EventKind{EventKind::Tag::resampling,
                              static_cast<std::int64_t>(i),
                              static_cast<std::int64_t>(j)});
    } else {
      // Selection proposal; applies to X only.
      ++ctr.selection_proposals;
      const std::size_t i = static_cast<std::size_t>(
          uniform_below(rng, static_cast<std::uint64_t>(n_int)));
      const std::size_t j = static_cast<std::size_t>(
          uniform_below(rng, static_cast<std::uint64_t>(n_int)));
      const std::int64_t diff = x[i] - x[j];
      if (diff > 0 &&
          uniform_unit(rng) * static_cast<double>(kw) < static_cast<double>(diff)) {
        occ_x.move_value(x[j], x[i]);
        x[j] = x[i];
        ++ctr.selection_accepted;
        if (coupled) check_domination(j);
        if (observer)
          observer(t, EventKind{EventKind::Tag::selection,
                                static_cast<std::int64_t>(i),
                                static_cast<std::int64_t>(j)});
      }
    }
  }

  emit_before(cfg.horizon + cfg.record_interval);

  IndividualRunResult out;
  out.records = std::move(records);
  out.neutral_records = std::move(neutral_records);
  out.final_state.x = std::move(x);
  if (coupled) out.final_state.y = std::move(y);
  out.counters = ctr;
  return out;
}

}  // namespace

IndividualRunResult simulate_individuals(const SimConfig& cfg,
                                         const IndividualState& initial,
                                         const EventObserver& observer) {
  if (cfg.mode != SimMode::individual_level)
    throw std::invalid_argument(
        "simulate_individuals requires mode individual_level");
  return run_individual(cfg, initial, observer, /*coupled=*/false);
}

IndividualRunResult simulate_coupled(const SimConfig& cfg,
                                     const IndividualState& initial,
                                     const EventObserver& observer) {
  if (cfg.mode != SimMode::coupled_neutral)
    throw std::invalid_argument("simulate_coupled requires mode coupled_neutral");
  return run_individual(cfg, initial, observer, /*coupled=*/true);
}

}  // namespace moran
