#include "moran/validate.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "moran/birth_death.hpp"
#include "moran/bounds.hpp"
#include "moran/detail/parallel.hpp"
#include "moran/experiments.hpp"
#include "moran/rng.hpp"
#include "moran/sim.hpp"
#include "moran/stats.hpp"

namespace moran {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Exact binomial lower-tail P(Z <= m) by log-space summation.
double binomial_cdf(std::int64_t n, double gamma, std::int64_t m) {
  if (m < 0) return 0.0;
  if (m >= n) return 1.0;
  if (gamma >= 1.0) return 0.0;  // point mass at n, and m < n here
  if (gamma <= 0.0) return 1.0;
  double acc = 0.0;
  const double nn = static_cast<double>(n);
  for (std::int64_t k = 0; k <= m; ++k) {
    const double kk = static_cast<double>(k);
    const double log_term = std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) -
                            std::lgamma(nn - kk + 1.0) + kk * std::log(gamma) +
                            (nn - kk) * std::log1p(-gamma);
    acc += std::exp(log_term);
  }
  return acc;
}

// Exact Poisson upper tail P(Z >= m).
double poisson_tail(double lambda, std::int64_t m) {
  if (m <= 0) return 1.0;
  double acc = 0.0;
  double term = std::exp(-lambda + static_cast<double>(m) * std::log(lambda) -
                         std::lgamma(static_cast<double>(m) + 1.0));
  for (std::int64_t k = m; term > 1e-22 * (acc + term) || k == m; ++k) {
    acc += term;
    term *= lambda / static_cast<double>(k + 1);
  }
  return acc;
}

}  // namespace

std::vector<CheckResult> validate_pgf(std::uint64_t seed,
                                      std::int64_t runs_per_cell) {
  const std::pair<double, double> ab[] = {{2.0, 1.0}, {1.0, 0.5}, {0.5, 0.1}};
  const std::int64_t z0s[] = {1, 3};
  const double ts[] = {0.5, 1.0, 2.0};
  const double xs[] = {0.2, 0.5, 0.8};

  std::vector<CheckResult> out;
  std::uint64_t cell = 0;
  for (const auto& [a, b] : ab)
    for (std::int64_t z0 : z0s)
      for (double t : ts) {
        // One set of Z_t samples per (a,b,z0,t); reused across x values.
        std::vector<std::int64_t> samples(
            static_cast<std::size_t>(runs_per_cell));
        for (std::int64_t r = 0; r < runs_per_cell; ++r) {
          BirthDeathConfig cfg;
          cfg.a = a;
          cfg.b = b;
          cfg.z0 = z0;
          cfg.horizon = t;
          cfg.seed = derive_stream_seed(seed, cell,
                                        static_cast<std::uint64_t>(r));
          samples[static_cast<std::size_t>(r)] =
              simulate_birth_death(cfg).final_count;
        }
        ++cell;
        for (double x : xs) {
          std::vector<double> vals(samples.size());
          for (std::size_t i = 0; i < samples.size(); ++i)
            vals[i] = std::pow(x, static_cast<double>(samples[i]));
          const MeanSd ms = mean_sd(vals);
          const double se = ms.sd / std::sqrt(static_cast<double>(ms.n));
          const double exact = pgf_birth_death(x, t, a, b, z0);
          const double sigma = se > 0.0 ? std::abs(ms.mean - exact) / se
                                        : (ms.mean == exact ? 0.0 : 1e9);
          CheckResult c;
          c.name = "pgf a=" + fmt(a) + " b=" + fmt(b) + " z0=" + fmt(z0) +
                   " t=" + fmt(t) + " x=" + fmt(x);
          c.pass = sigma <= 3.0;
          c.detail = "mc=" + fmt(ms.mean) + " exact=" + fmt(exact) +
                     " sigma=" + fmt(sigma);
          out.push_back(std::move(c));
        }
      }
  return out;
}

std::vector<CheckResult> validate_bounds(std::uint64_t seed) {
  std::vector<CheckResult> out;

  // Binomial: exact P(Z <= n*gamma/2) <= e^{-n gamma^2 / 2} on the full grid.
  {
    bool all = true;
    std::string worst;
    double worst_margin = 1e300;
    for (std::int64_t n = 10; n <= 200; ++n)
      for (int gi = 1; gi <= 9; ++gi) {
        const double gamma = gi / 10.0;
        const double bound = binomial_lower_tail_bound(n, gamma);
        const double exact = binomial_cdf(
            n, gamma,
            static_cast<std::int64_t>(std::floor(static_cast<double>(n) * gamma / 2.0)));
        const double margin = bound - exact;
        if (exact > bound) {
          all = false;
          worst = "n=" + fmt(n) + " gamma=" + fmt(gamma);
        }
        if (margin < worst_margin) worst_margin = margin;
      }
    out.push_back({"binomial tail bound dominates exact CDF (n=10..200, gamma=0.1..0.9)",
                   all,
                   all ? "min margin " + fmt(worst_margin) : "violated at " + worst});
  }
  {
    const double bound = binomial_lower_tail_bound(100, 1.0);
    const double exact = binomial_cdf(100, 1.0, 50);  // Binomial(n,1) = n a.s.
    out.push_back({"binomial bound gamma=1 edge", exact <= bound,
                   "exact=" + fmt(exact) + " bound=" + fmt(bound)});
  }

  // Poisson lower bound: exact P(Z >= n) >= bound.
  {
    bool all = true;
    std::string worst;
    for (double lambda : {0.5, 1.0, 2.0})
      for (std::int64_t n = 1; n <= 20; ++n) {
        const double bound = poisson_lower_tail_bound(lambda, n);
        const double exact = poisson_tail(lambda, n);
        if (exact < bound) {
          all = false;
          worst = "lambda=" + fmt(lambda) + " n=" + fmt(n);
        }
      }
    out.push_back({"poisson lower tail bound dominated by exact tail", all,
                   all ? "lambda in {0.5,1,2}, n=1..20" : "violated at " + worst});
  }
  {
    const double lambda = 5.0;
    const double bound = poisson_lower_tail_bound(lambda, 1);
    const double exact = 1.0 - std::exp(-lambda);
    out.push_back({"poisson bound n=1 lambda=5", bound <= exact,
                   "bound=" + fmt(bound) + " exact=" + fmt(exact)});
  }

  // Poisson upper tail check (exact, log space).
  {
    const auto c1 = poisson_upper_tail_check(10, 0.01);
    out.push_back({"poisson upper tail N=10 mu=0.01 below 1e-150",
                   c1.log_tail < -150.0 * std::log(10.0),
                   "log_tail=" + fmt(c1.log_tail)});
    const auto c2 = poisson_upper_tail_check(20, 1.0);
    out.push_back({"poisson upper tail N=20 mu=1 within e^{-N ln N} * 10",
                   c2.within_bound, "log_tail=" + fmt(c2.log_tail) +
                                        " bound=" + fmt(-20.0 * std::log(20.0))});
    bool monotone = true;
    double prev = 0.0;
    bool first = true;
    for (std::int64_t n : {10, 15, 20, 25}) {
      const auto c = poisson_upper_tail_check(n, 0.5);
      if (!first && c.log_tail >= prev) monotone = false;
      prev = c.log_tail;
      first = false;
    }
    out.push_back({"poisson upper tail decreases in N at fixed mu", monotone, ""});
  }

  // Birth-death tail bound vs Monte Carlo, one vacuous and one informative cell.
  {
    struct Cell {
      double a, b, M, t;
      std::int64_t k, z0;
    };
    const Cell cells[] = {{2.0, 1.0, 2.0, 2.0, 3, 10},
                          {2.0, 0.25, 2.0, 2.0, 2, 4}};
    std::uint64_t stream = 0;
    for (const auto& cell : cells) {
      const double bound =
          birth_death_tail_bound(cell.a, cell.b, cell.M, cell.t, cell.k, cell.z0);
      const std::int64_t runs = 100000;
      std::int64_t hits = 0;
      for (std::int64_t r = 0; r < runs; ++r) {
        BirthDeathConfig cfg;
        cfg.a = cell.a;
        cfg.b = cell.b;
        cfg.z0 = cell.z0;
        cfg.horizon = cell.t;
        cfg.seed = derive_stream_seed(seed ^ 0xB0BDULL, stream,
                                      static_cast<std::uint64_t>(r));
        if (simulate_birth_death(cfg).final_count <= cell.k) ++hits;
      }
      ++stream;
      const double p_hat = static_cast<double>(hits) / static_cast<double>(runs);
      const double se =
          std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(runs));
      out.push_back({"birth-death tail bound a=" + fmt(cell.a) + " b=" +
                         fmt(cell.b) + " z0=" + fmt(cell.z0) + " k=" + fmt(cell.k),
                     p_hat <= bound + 3.0 * se,
                     "mc=" + fmt(p_hat) + " bound=" + fmt(bound)});
    }
  }
  return out;
}

std::vector<CheckResult> validate_coupling(std::uint64_t seed, int n_seeds) {
  std::vector<CheckResult> out;
  std::uint64_t violations = 0;
  std::uint64_t events = 0;
  for (int r = 0; r < n_seeds; ++r) {
    SimConfig cfg;
    cfg.params = Params{100, 0.01, 0.5, 0.05};
    cfg.horizon = 200.0;
    cfg.record_interval = 10.0;
    cfg.seed = derive_stream_seed(seed, 0, static_cast<std::uint64_t>(r));
    cfg.mode = SimMode::coupled_neutral;
    try {
      const auto run =
          simulate_coupled(cfg, IndividualState::all_zero(100, true));
      events += run.counters.mutations() + run.counters.resampling +
                run.counters.selection_accepted;
      const auto& fx = run.final_state.x;
      const auto& fy = *run.final_state.y;
      for (std::size_t i = 0; i < fx.size(); ++i)
        if (fy[i] > fx[i]) ++violations;
    } catch (const std::logic_error&) {
      ++violations;
    }
  }
  out.push_back({"coupling domination Y_i <= X_i over " +
                     std::to_string(n_seeds) + " seeds",
                 violations == 0,
                 "violations=" + std::to_string(violations) +
                     " events=" + std::to_string(events)});
  return out;
}

std::vector<CheckResult> validate_oracle(std::uint64_t seed,
                                         std::int64_t replicates) {
  std::vector<CheckResult> out;

  // N=2, s=1, long horizon: fixation at the fitter type with probability
  // (1+s)/(2+s) = 2/3.
  {
    const auto rep = small_instance_oracle(2, 1.0, 10.0, replicates, seed);
    const double p_hat = rep.empirical_prob({1, 1});
    const double se = std::sqrt(p_hat * (1.0 - p_hat) /
                                static_cast<double>(replicates));
    const double target = 2.0 / 3.0;
    out.push_back({"oracle N=2 s=1 absorption at fitter type",
                   std::abs(p_hat - target) <= 3.0 * se,
                   "mc=" + fmt(p_hat) + " exact=" + fmt(target) +
                       " se=" + fmt(se)});
    out.push_back({"oracle N=2 uniformization matches absorption",
                   std::abs(rep.exact_prob({1, 1}) - target) <= 2e-9,
                   "exact=" + fmt(rep.exact_prob({1, 1}))});
  }

  // N=3, s=0.5, t=2: total variation against the uniformization law.
  {
    const auto rep = small_instance_oracle(3, 0.5, 2.0, replicates, seed ^ 0x3ULL);
    out.push_back({"oracle N=3 s=0.5 t=2 TV distance <= 0.02",
                   rep.tv_distance <= 0.02, "tv=" + fmt(rep.tv_distance)});
  }
  return out;
}

std::vector<CheckResult> validate_drift(std::uint64_t seed, int replicates,
                                        double horizon, int threads) {
  std::vector<CheckResult> out;
  const double qs[] = {0.0, 0.02, 0.5};
  std::vector<std::vector<TrajectoryRecord>> q002_runs;
  for (std::size_t qi = 0; qi < 3; ++qi) {
    const Params params{1000, 0.01, qs[qi], 0.01};
    std::vector<std::vector<TrajectoryRecord>> runs(
        static_cast<std::size_t>(replicates));
    detail::parallel_for(runs.size(), threads, [&](std::size_t r) {
      SimConfig cfg;
      cfg.params = params;
      cfg.horizon = horizon;
      cfg.record_interval = 1.0;
      cfg.seed = derive_stream_seed(seed, qi, r);
      runs[r] = simulate_classes(cfg, Population::point_mass(1000, 0)).records;
    });
    const auto rep = drift_identity_check(runs, params, 0.2);
    out.push_back({"drift identity q=" + fmt(qs[qi]), rep.sigma_units <= 3.0,
                   "rate=" + fmt(rep.estimate) + " predicted=" +
                       fmt(rep.predicted) + " sigma=" + fmt(rep.sigma_units)});
    if (qs[qi] == 0.02) q002_runs = std::move(runs);
  }
  const auto front = front_speed_check(q002_runs, 0.2);
  out.push_back({"front/mean speed identity q=0.02", front.sigma_units <= 3.0,
                 "kc_slope=" + fmt(front.estimate) + " m_slope=" +
                     fmt(front.predicted) + " sigma=" + fmt(front.sigma_units)});
  return out;
}

}  // namespace moran
