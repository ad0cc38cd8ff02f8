#include "moran/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "moran/detail/parallel.hpp"
#include "moran/errors.hpp"
#include "moran/rng.hpp"
#include "moran/wave.hpp"

namespace moran {

namespace {

std::vector<const TrajectoryRecord*> post_burn_in(
    const std::vector<TrajectoryRecord>& traj, double burn_in_fraction) {
  if (traj.empty()) throw std::invalid_argument("empty trajectory");
  if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0))
    throw std::invalid_argument("burn_in_fraction must be in [0, 1)");
  const double cutoff = burn_in_fraction * traj.back().time;
  std::vector<const TrajectoryRecord*> kept;
  kept.reserve(traj.size());
  for (const auto& r : traj)
    if (r.time >= cutoff) kept.push_back(&r);
  return kept;
}

double ratio_se(double sigma, std::size_t n) {
  return n > 0 ? sigma / std::sqrt(static_cast<double>(n)) : 0.0;
}

}  // namespace

RateEstimate estimate_adaptation_rate(const std::vector<TrajectoryRecord>& traj,
                                      double burn_in_fraction) {
  const auto kept = post_burn_in(traj, burn_in_fraction);
  if (kept.size() < 10)
    throw std::invalid_argument(
        "estimate_adaptation_rate: fewer than 10 post-burn-in records (" +
        std::to_string(kept.size()) + ")");
  std::vector<double> ts, ms;
  ts.reserve(kept.size());
  ms.reserve(kept.size());
  for (const auto* r : kept) {
    ts.push_back(r->time);
    ms.push_back(r->mean_fitness);
  }
  const OlsFit fit = ols_fit(ts, ms);
  return RateEstimate{fit.slope, fit.slope_se};
}

void SweepConfig::validate() const {
  if (grid.empty()) throw std::invalid_argument("sweep grid must be nonempty");
  for (const auto& p : grid) p.validate();
  if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
  if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0))
    throw std::invalid_argument("burn_in_fraction must be in [0, 1)");
  if (!(record_interval > 0.0 && record_interval <= horizon))
    throw std::invalid_argument("record_interval must be in (0, horizon]");
  // The rate estimator needs 10 post-burn-in records; catch that here so a
  // bad configuration fails before any cell runs.
  const double last = std::floor(horizon / record_interval) * record_interval;
  std::size_t post = 0;
  for (std::uint64_t i = 0;; ++i) {
    const double rt = static_cast<double>(i) * record_interval;
    if (rt > horizon) break;
    if (rt >= burn_in_fraction * last) ++post;
  }
  if (post < 10)
    throw std::invalid_argument(
        "horizon/record_interval leave fewer than 10 post-burn-in records");
}

std::vector<SweepCell> run_sweep(const SweepConfig& cfg, int threads) {
  cfg.validate();
  const std::size_t n_cells =
      cfg.grid.size() * static_cast<std::size_t>(cfg.replicates);
  std::vector<SweepCell> cells(n_cells);

  detail::parallel_for(n_cells, threads, [&](std::size_t idx) {
    const std::size_t grid_index = idx / static_cast<std::size_t>(cfg.replicates);
    const std::int64_t replicate =
        static_cast<std::int64_t>(idx % static_cast<std::size_t>(cfg.replicates));
    SweepCell& cell = cells[idx];
    cell.grid_index = grid_index;
    cell.replicate = replicate;
    cell.params = cfg.grid[grid_index];
    cell.seed = derive_stream_seed(cfg.master_seed, grid_index,
                                   static_cast<std::uint64_t>(replicate));

    SimConfig sim;
    sim.params = cell.params;
    sim.horizon = cfg.horizon;
    sim.record_interval = cfg.record_interval;
    sim.seed = cell.seed;
    sim.mode = SimMode::class_level;
    sim.max_events = cfg.max_events;

    try {
      const auto run =
          simulate_classes(sim, Population::point_mass(cell.params.pop_size, 0));
      const auto est = estimate_adaptation_rate(run.records, cfg.burn_in_fraction);
      cell.adaptation_rate = est.rate;
      cell.rate_se = est.se;
      const auto kept = post_burn_in(run.records, cfg.burn_in_fraction);
      double c2_acc = 0.0;
      for (const auto* r : kept) c2_acc += r->c2;
      cell.mean_c2 = c2_acc / static_cast<double>(kept.size());
      cell.ok = true;
    } catch (const BudgetExceeded& e) {
      cell.ok = false;
      cell.error = e.what();
    }
  });
  return cells;
}

namespace {

struct RunSlopes {
  double rate = 0.0;
  double rate_se = 0.0;
  double avg_c2 = 0.0;
  double avg_c2_se = 0.0;
  double kc_slope = 0.0;
  double kc_slope_se = 0.0;
  bool kc_ok = false;
};

RunSlopes run_slopes(const std::vector<TrajectoryRecord>& traj,
                     double burn_in_fraction) {
  const auto kept = post_burn_in(traj, burn_in_fraction);
  if (kept.size() < 10)
    throw std::invalid_argument("fewer than 10 post-burn-in records");
  std::vector<double> ts, ms, c2s, kcs;
  bool kc_ok = true;
  for (const auto* r : kept) {
    ts.push_back(r->time);
    ms.push_back(r->mean_fitness);
    c2s.push_back(r->c2);
    if (r->k_c)
      kcs.push_back(static_cast<double>(*r->k_c));
    else
      kc_ok = false;
  }
  RunSlopes out;
  const OlsFit m_fit = ols_fit(ts, ms);
  out.rate = m_fit.slope;
  out.rate_se = m_fit.slope_se;
  const MeanSd c2 = mean_sd(c2s);
  out.avg_c2 = c2.mean;
  out.avg_c2_se = ratio_se(c2.sd, c2.n);
  out.kc_ok = kc_ok;
  if (kc_ok) {
    const OlsFit kc_fit = ols_fit(ts, kcs);
    out.kc_slope = kc_fit.slope;
    out.kc_slope_se = kc_fit.slope_se;
  }
  return out;
}

IdentityReport pooled_report(const std::vector<double>& estimates,
                             const std::vector<double>& predictions,
                             const std::vector<double>& single_run_ses) {
  IdentityReport rep;
  rep.replicates = estimates.size();
  std::vector<double> diffs(estimates.size());
  for (std::size_t i = 0; i < estimates.size(); ++i)
    diffs[i] = estimates[i] - predictions[i];
  rep.estimate = mean_sd(estimates).mean;
  rep.predicted = mean_sd(predictions).mean;
  const MeanSd d = mean_sd(diffs);
  rep.discrepancy = d.mean;
  if (estimates.size() >= 2) {
    rep.combined_se = ratio_se(d.sd, d.n);
  } else {
    rep.combined_se = single_run_ses.empty() ? 0.0 : single_run_ses.front();
  }
  rep.sigma_units = rep.combined_se > 0.0
                        ? std::abs(rep.discrepancy) / rep.combined_se
                        : (rep.discrepancy == 0.0
                               ? 0.0
                               : std::numeric_limits<double>::infinity());
  return rep;
}

}  // namespace

IdentityReport drift_identity_check(
    const std::vector<std::vector<TrajectoryRecord>>& runs, const Params& params,
    double burn_in_fraction) {
  if (runs.empty()) throw std::invalid_argument("drift_identity_check: no runs");
  std::vector<double> estimates, predictions, ses;
  for (const auto& traj : runs) {
    const RunSlopes sl = run_slopes(traj, burn_in_fraction);
    estimates.push_back(sl.rate);
    predictions.push_back(drift_rate(params, sl.avg_c2));
    ses.push_back(std::sqrt(sl.rate_se * sl.rate_se +
                            params.s * params.s * sl.avg_c2_se * sl.avg_c2_se));
  }
  return pooled_report(estimates, predictions, ses);
}

IdentityReport front_speed_check(
    const std::vector<std::vector<TrajectoryRecord>>& runs,
    double burn_in_fraction) {
  if (runs.empty()) throw std::invalid_argument("front_speed_check: no runs");
  std::vector<double> estimates, predictions, ses;
  for (const auto& traj : runs) {
    const RunSlopes sl = run_slopes(traj, burn_in_fraction);
    if (!sl.kc_ok)
      throw std::invalid_argument(
          "front_speed_check: k_c absent in a post-burn-in record "
          "(population too small for the front statistic)");
    estimates.push_back(sl.kc_slope);
    predictions.push_back(sl.rate);
    ses.push_back(std::sqrt(sl.kc_slope_se * sl.kc_slope_se +
                            sl.rate_se * sl.rate_se));
  }
  return pooled_report(estimates, predictions, ses);
}

// ---------------------------------------------------------------------------
// Small-instance oracle: exact transient law by uniformization.

namespace {

// All size-n multisets over values {0..n-1}, as sorted vectors.
void enumerate_multisets(int n, int max_value, std::vector<std::int64_t>& cur,
                         std::vector<std::vector<std::int64_t>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  const std::int64_t start = cur.empty() ? 0 : cur.back();
  for (std::int64_t v = start; v <= max_value; ++v) {
    cur.push_back(v);
    enumerate_multisets(n, max_value, cur, out);
    cur.pop_back();
  }
}

std::vector<std::int64_t> population_key(const Population& p) {
  std::vector<std::int64_t> key;
  key.reserve(static_cast<std::size_t>(p.total));
  for (const auto& [k, c] : p.counts)
    for (std::int64_t i = 0; i < c; ++i) key.push_back(k);
  return key;
}

}  // namespace

double OracleReport::exact_prob(
    const std::vector<std::int64_t>& sorted_multiset) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == sorted_multiset) return exact[i];
  throw std::invalid_argument("unknown state");
}

double OracleReport::empirical_prob(
    const std::vector<std::int64_t>& sorted_multiset) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == sorted_multiset) return empirical[i];
  throw std::invalid_argument("unknown state");
}

OracleReport small_instance_oracle(int n, double s, double t,
                                   std::int64_t replicates, std::uint64_t seed) {
  if (n != 2 && n != 3)
    throw std::invalid_argument("small_instance_oracle supports n in {2, 3}");
  if (!(s > 0.0)) throw std::invalid_argument("oracle requires s > 0");
  if (!(t > 0.0)) throw std::invalid_argument("oracle requires t > 0");
  if (replicates < 1) throw std::invalid_argument("oracle requires replicates >= 1");

  OracleReport rep;
  {
    std::vector<std::int64_t> cur;
    enumerate_multisets(n, n - 1, cur, rep.states);
  }
  std::map<std::vector<std::int64_t>, std::size_t> index;
  for (std::size_t i = 0; i < rep.states.size(); ++i) index[rep.states[i]] = i;

  // Generator built directly from the class-level mechanism: with mutation
  // off, ordered class pairs (k, l), k != l, fire at
  // count_k * count_l * (1 + s*(k-l)+) / N and move one individual l -> k.
  const std::size_t n_states = rep.states.size();
  std::vector<std::vector<double>> jump(n_states,
                                        std::vector<double>(n_states, 0.0));
  std::vector<double> out_rate(n_states, 0.0);
  for (std::size_t si = 0; si < n_states; ++si) {
    std::map<std::int64_t, std::int64_t> counts;
    for (std::int64_t v : rep.states[si]) ++counts[v];
    for (const auto& [k, ck] : counts) {
      for (const auto& [l, cl] : counts) {
        if (k == l) continue;
        const double sel = k > l ? s * static_cast<double>(k - l) : 0.0;
        const double rate = static_cast<double>(ck) * static_cast<double>(cl) *
                            (1.0 + sel) / static_cast<double>(n);
        auto next = counts;
        ++next[k];
        if (--next[l] == 0) next.erase(l);
        std::vector<std::int64_t> key;
        for (const auto& [v, c] : next)
          for (std::int64_t i = 0; i < c; ++i) key.push_back(v);
        jump[si][index.at(key)] += rate;
        out_rate[si] += rate;
      }
    }
  }

  // Uniformization with Poisson truncation at cumulative mass 1 - 1e-12.
  const double big = *std::max_element(out_rate.begin(), out_rate.end());
  std::vector<double> dist(n_states, 0.0);
  {
    std::vector<std::int64_t> init;
    for (int v = 0; v < n; ++v) init.push_back(v);
    std::vector<double> cur(n_states, 0.0);
    cur[index.at(init)] = 1.0;

    const double lt = big * t;
    double pois = std::exp(-lt);  // P(M = 0)
    double cum = pois;
    for (std::size_t i = 0; i < n_states; ++i) dist[i] = pois * cur[i];
    for (int m = 1; cum < 1.0 - 1e-12; ++m) {
      std::vector<double> nxt(n_states, 0.0);
      for (std::size_t i = 0; i < n_states; ++i) {
        if (cur[i] == 0.0) continue;
        nxt[i] += cur[i] * (1.0 - out_rate[i] / big);
        for (std::size_t j = 0; j < n_states; ++j)
          if (jump[i][j] > 0.0) nxt[j] += cur[i] * jump[i][j] / big;
      }
      cur.swap(nxt);
      pois *= lt / static_cast<double>(m);
      cum += pois;
      for (std::size_t i = 0; i < n_states; ++i) dist[i] += pois * cur[i];
    }
  }
  rep.exact = dist;

  // Empirical frequencies from the class-level engine.
  rep.empirical.assign(n_states, 0.0);
  Params params;
  params.pop_size = n;
  params.mu = 0.0;
  params.q = 0.0;
  params.s = s;
  std::map<std::int64_t, std::int64_t> init_counts;
  for (int v = 0; v < n; ++v) init_counts[v] = 1;
  const Population initial = Population::from_counts(std::move(init_counts));
  for (std::int64_t r = 0; r < replicates; ++r) {
    SimConfig sim;
    sim.params = params;
    sim.horizon = t;
    sim.record_interval = t;
    sim.seed = derive_stream_seed(seed, 0, static_cast<std::uint64_t>(r));
    const auto run = simulate_classes(sim, initial);
    rep.empirical[index.at(population_key(run.final_population))] += 1.0;
  }
  for (double& v : rep.empirical) v /= static_cast<double>(replicates);

  rep.tv_distance = total_variation(rep.exact, rep.empirical);
  return rep;
}

StationarityReport stationarity_diagnostics(
    const std::vector<TrajectoryRecord>& traj, double burn_in_fraction) {
  const auto kept = post_burn_in(traj, burn_in_fraction);
  std::vector<double> skews, kurts;
  for (const auto* r : kept) {
    if (r->c2 <= 0.0) continue;  // degenerate record, diagnostics undefined
    skews.push_back(r->c3 / std::pow(r->c2, 1.5));
    kurts.push_back(r->c4 / (r->c2 * r->c2));
  }
  StationarityReport rep;
  rep.n = skews.size();
  if (skews.empty()) return rep;
  rep.valid = true;
  const MeanSd sk = mean_sd(skews);
  const MeanSd ku = mean_sd(kurts);
  rep.skewness = sk.mean;
  rep.skewness_se = ratio_se(sk.sd, sk.n);
  rep.kurtosis = ku.mean;
  rep.kurtosis_se = ratio_se(ku.sd, ku.n);
  return rep;
}

}  // namespace moran
