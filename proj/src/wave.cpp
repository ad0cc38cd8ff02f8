#include "moran/wave.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace moran {

double drift_rate(const Params& params, double c2) {
  if (!(c2 >= 0.0)) throw std::invalid_argument("drift_rate requires c2 >= 0");
  return params.mu * (2.0 * params.q - 1.0) + params.s * c2;
}

double gaussian_central_moment(double c2, int n) {
  if (n < 2) throw std::invalid_argument("gaussian_central_moment requires n >= 2");
  if (!(c2 >= 0.0)) throw std::invalid_argument("gaussian_central_moment requires c2 >= 0");
  if (n % 2 == 1) return 0.0;
  double dfact = 1.0;  // (n-1)!!
  for (int k = n - 1; k > 1; k -= 2) dfact *= static_cast<double>(k);
  return dfact * std::pow(c2, n / 2);
}

double MomentVector::get(int n) const {
  if (n < 0) throw std::invalid_argument("moment index must be >= 0");
  if (n == 0) return 1.0;
  if (n == 1) return 0.0;
  if (n > n_max()) throw std::invalid_argument("moment index beyond n_max");
  return c[static_cast<std::size_t>(n - 2)];
}

MomentVector moment_ode_rhs(const MomentVector& m, double s) {
  if (m.n_max() < 3)
    throw std::invalid_argument("moment_ode_rhs requires n_max >= 3");
  const double c2 = m.get(2);
  const double closure = gaussian_central_moment(c2, m.n_max() + 1);
  MomentVector d;
  d.c.resize(m.c.size());
  for (int n = 2; n <= m.n_max(); ++n) {
    const double next = n < m.n_max() ? m.get(n + 1) : closure;
    d.c[static_cast<std::size_t>(n - 2)] =
        s * (next - static_cast<double>(n) * m.get(n - 1) * c2);
  }
  return d;
}

double lambert_w(double z) {
  if (!(z >= 0.0)) throw std::invalid_argument("lambert_w requires z >= 0");
  if (z == 0.0) return 0.0;

  // w e^w is increasing on [0, inf); ln(1+z)(1+z) >= z gives the bracket.
  double lo = 0.0;
  double hi = std::log1p(z);
  auto f = [z](double w) { return w * std::exp(w) - z; };
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  double w = 0.5 * (lo + hi);
  // Halley refinement.
  for (int i = 0; i < 4; ++i) {
    const double ew = std::exp(w);
    const double fw = w * ew - z;
    const double denom = ew * (w + 1.0) - (w + 2.0) * fw / (2.0 * w + 2.0);
    if (denom == 0.0) break;
    w -= fw / denom;
  }
  return w;
}

double solve_front_k(double log_n, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("solve_front_k requires s > 0");
  if (!(log_n > 0.0)) throw std::invalid_argument("solve_front_k requires log_n > 0");

  const double target = 2.0 * log_n;
  auto f = [s, target](double k) { return k * std::log(s * k) - target; };

  // On the branch sK > 1 the left side increases from 0 through the target.
  double lo = 1.0 / s;
  double hi = 2.0 / s;
  while (f(hi) <= 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (f(mid) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double predict_front_K(std::int64_t pop_size, double s) {
  if (pop_size < 3) throw std::invalid_argument("predict_front_K requires N >= 3");
  return solve_front_k(std::log(static_cast<double>(pop_size)), s);
}

WavePrediction predict_wave_speed(const Params& params) {
  params.validate();
  if (params.pop_size < 3)
    throw std::invalid_argument("predict_wave_speed requires N >= 3");
  if (!(params.s > 0.0))
    throw std::invalid_argument("predict_wave_speed requires s > 0");

  const double log_n = std::log(static_cast<double>(params.pop_size));
  WavePrediction out;
  out.K = solve_front_k(log_n, params.s);
  out.b = out.K / std::sqrt(2.0 * log_n);
  out.speed = params.mu * (2.0 * params.q - 1.0) +
              params.s * out.K * out.K / (2.0 * log_n);
  const double lead = params.s * out.K - params.mu;
  out.front_speed = lead > 1.0 ? lead / std::log(lead)
                               : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace moran
