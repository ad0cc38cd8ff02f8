#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "moran/errors.hpp"
#include "moran/rng.hpp"
#include "moran/sim.hpp"

namespace moran {

void SimConfig::validate() const {
  params.validate();
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
  if (!(record_interval > 0.0))
    throw std::invalid_argument("record_interval must be > 0");
  if (record_interval > horizon)
    throw std::invalid_argument("record_interval must be <= horizon");
  if (!(kd_beta > 0.0 && kd_beta < 1.0))
    throw std::invalid_argument("kd_beta must be in (0, 1)");
  if (max_events == 0) throw std::invalid_argument("max_events must be > 0");
}

namespace {

// Dense occupancy window over fitness classes. The support width stays in
// the tens while N can reach 1e6, so per-event work is kept O(width).
class ClassWindow {
 public:
  explicit ClassWindow(const Population& p) {
    const std::int64_t lo_class = p.min_class();
    const std::int64_t hi_class = p.max_class();
    const std::size_t width = static_cast<std::size_t>(hi_class - lo_class) + 1;
    cnt_.assign(width + 2 * kMargin, 0);
    base_ = lo_class - static_cast<std::int64_t>(kMargin);
    lo_ = kMargin;
    hi_ = kMargin + width - 1;
    for (const auto& [k, c] : p.counts)
      cnt_[static_cast<std::size_t>(k - base_)] = c;
  }

  std::size_t lo() const { return lo_; }
  std::size_t hi() const { return hi_; }
  std::int64_t cls(std::size_t i) const {
    return base_ + static_cast<std::int64_t>(i);
  }
  std::int64_t count(std::size_t i) const { return cnt_[i]; }
  bool single_class() const { return lo_ == hi_; }

  // Index of the class holding the `individual`-th member (0-based),
  // scanning occupied classes upward.
  std::size_t locate(std::uint64_t individual) const {
    std::uint64_t acc = 0;
    for (std::size_t i = lo_;; ++i) {
      acc += static_cast<std::uint64_t>(cnt_[i]);
      if (individual < acc) return i;
    }
  }

  // Grows the window so `k` has a slot; existing indices shift by the
  // returned offset when the window is extended on the low side.
  void ensure(std::int64_t k) {
    if (k < base_) {
      const std::size_t grow = static_cast<std::size_t>(base_ - k) + kMargin;
      cnt_.insert(cnt_.begin(), grow, 0);
      base_ -= static_cast<std::int64_t>(grow);
      lo_ += grow;
      hi_ += grow;
    } else if (k >= base_ + static_cast<std::int64_t>(cnt_.size())) {
      const std::size_t need =
          static_cast<std::size_t>(k - base_) + 1 + kMargin;
      cnt_.resize(need, 0);
    }
  }

  std::size_t index_of(std::int64_t k) const {
    return static_cast<std::size_t>(k - base_);
  }

  // Apply add before remove so an occupied class always remains.
  void add_one(std::size_t i) {
    ++cnt_[i];
    if (i < lo_) lo_ = i;
    if (i > hi_) hi_ = i;
  }
  void remove_one(std::size_t i) {
    --cnt_[i];
    if (cnt_[i] == 0) {
      if (i == lo_)
        while (cnt_[lo_] == 0) ++lo_;
      if (i == hi_)
        while (cnt_[hi_] == 0) --hi_;
    }
  }

  Population to_population(std::int64_t total) const {
    Population p;
    p.total = total;
    for (std::size_t i = lo_; i <= hi_; ++i)
      if (cnt_[i] > 0) p.counts[cls(i)] = cnt_[i];
    return p;
  }

 private:
  static constexpr std::size_t kMargin = 64;
  std::vector<std::int64_t> cnt_;
  std::int64_t base_ = 0;  // fitness class of cnt_[0]
  std::size_t lo_ = 0, hi_ = 0;
};

// Scan-based draw from nonnegative weights with known total. Clamps to the
// last positive weight so threshold rounding can never fall off the end.
std::size_t pick_weighted(const std::vector<double>& w, double total,
                          double u01) {
  const double threshold = u01 * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  bool seen = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0.0) continue;
    last_positive = i;
    seen = true;
    acc += w[i];
    if (threshold < acc) return i;
  }
  assert(seen);
  (void)seen;
  return last_positive;
}

}  // namespace

ClassRunResult simulate_classes(const SimConfig& cfg, const Population& initial,
                                const EventObserver& observer) {
  cfg.validate();
  if (cfg.mode != SimMode::class_level)
    throw std::invalid_argument("simulate_classes requires mode class_level");
  initial.validate();
  if (initial.total != cfg.params.pop_size)
    throw std::invalid_argument("initial population total != pop_size");

  const std::int64_t n_int = cfg.params.pop_size;
  const double n = static_cast<double>(n_int);
  const double mu = cfg.params.mu;
  const double q = cfg.params.q;
  const double s = cfg.params.s;
  const double mut_rate = mu * n;
  const double res_rate = n;

  ClassWindow win(initial);
  RngEngine rng = make_engine(cfg.seed);

  // Selection bookkeeping, refreshed after every state change:
  //   selw[i] = (s/N) * cnt_i * (k_i * C_i - D_i)
  // with C_i / D_i the prefix count and weighted-count sums over classes
  // below i. sel_rate is their total, i.e. s*N*sum_{k>l}(k-l)P_k P_l.
  std::vector<double> selw, prefc, prefd;
  double sel_rate = 0.0;
  auto refresh_selection = [&] {
    const std::size_t lo = win.lo(), hi = win.hi();
    const std::size_t m = hi - lo + 1;
    selw.assign(m, 0.0);
    prefc.assign(m, 0.0);
    prefd.assign(m, 0.0);
    double c_acc = 0.0, d_acc = 0.0, total = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
      prefc[i - lo] = c_acc;
      prefd[i - lo] = d_acc;
      const double ci = static_cast<double>(win.count(i));
      const double k = static_cast<double>(win.cls(i));
      const double w = (s / n) * ci * (k * c_acc - d_acc);
      selw[i - lo] = w;
      total += w;
      c_acc += ci;
      d_acc += k * ci;
    }
    sel_rate = total;
  };
  if (s > 0.0) refresh_selection();

  std::vector<TrajectoryRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.horizon / cfg.record_interval) + 2);
  std::uint64_t rec_idx = 0;
  auto record_time = [&](std::uint64_t i) {
    return static_cast<double>(i) * cfg.record_interval;
  };
  auto emit_before = [&](double limit) {
    while (record_time(rec_idx) <= cfg.horizon && record_time(rec_idx) < limit) {
      records.push_back(
          make_record(record_time(rec_idx), win.to_population(n_int), cfg.kd_beta));
      ++rec_idx;
    }
  };

  EventCounters ctr;
  std::uint64_t events = 0;
  double t = 0.0;

  while (true) {
    // Frozen state: with no mutation and a single occupied class, every
    // remaining event is a no-op.
    if (mu == 0.0 && win.single_class()) break;

    const double total_rate = mut_rate + res_rate + sel_rate;
    const double te = t + exponential(rng, total_rate);
    emit_before(te);
    if (te > cfg.horizon) break;
    t = te;
    if (++events > cfg.max_events)
      throw BudgetExceeded("simulate_classes: event budget exceeded (" +
                           std::to_string(cfg.max_events) + ")");

    const double u = uniform_unit(rng) * total_rate;
    if (u < mut_rate) {
      const std::size_t i =
          win.locate(uniform_below(rng, static_cast<std::uint64_t>(n_int)));
      const bool up = uniform_unit(rng) < q;
      const std::int64_t from = win.cls(i);
      const std::int64_t to = from + (up ? 1 : -1);
      win.ensure(to);
      win.add_one(win.index_of(to));
      win.remove_one(win.index_of(from));
      if (up)
        ++ctr.mutation_up;
      else
        ++ctr.mutation_down;
      if (observer)
        observer(t, EventKind{up ? EventKind::Tag::mutation_up
                                 : EventKind::Tag::mutation_down,
                              from, to});
    } else if (u < mut_rate + res_rate) {
      const std::size_t src =
          win.locate(uniform_below(rng, static_cast<std::uint64_t>(n_int)));
      const std::size_t tgt =
          win.locate(uniform_below(rng, static_cast<std::uint64_t>(n_int)));
      ++ctr.resampling;
      const std::int64_t src_cls = win.cls(src);
      const std::int64_t tgt_cls = win.cls(tgt);
      if (src != tgt) {
        win.add_one(src);
        win.remove_one(tgt);
      }
      if (observer)
        observer(t, EventKind{EventKind::Tag::resampling, src_cls, tgt_cls});
    } else {
      // Source class k with weight cnt_k * (k*C_k - D_k), then target l < k
      // with weight (k-l) * cnt_l, both via the cached prefix sums.
      const std::size_t lo = win.lo();
      const std::size_t si = lo + pick_weighted(selw, sel_rate, uniform_unit(rng));
      const std::int64_t k = win.cls(si);
      const double target_total = static_cast<double>(k) * prefc[si - lo] -
                                  prefd[si - lo];
      const double threshold = uniform_unit(rng) * target_total;
      double acc = 0.0;
      std::size_t ti = si;
      bool seen = false;
      for (std::size_t j = lo; j < si; ++j) {
        const std::int64_t cj = win.count(j);
        if (cj == 0) continue;
        ti = j;  // clamps to the last positive weight on rounding overshoot
        seen = true;
        acc += static_cast<double>(k - win.cls(j)) * static_cast<double>(cj);
        if (threshold < acc) break;
      }
      assert(seen && win.cls(ti) < k);
      (void)seen;
      const std::int64_t l = win.cls(ti);
      win.add_one(si);
      win.remove_one(ti);
      ++ctr.selection_accepted;
      if (observer) observer(t, EventKind{EventKind::Tag::selection, k, l});
    }
    if (s > 0.0) refresh_selection();
  }

  emit_before(cfg.horizon + cfg.record_interval);  // flush remaining grid points
  return ClassRunResult{std::move(records), win.to_population(n_int), ctr};
}

}  // namespace moran
