#include "moran/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace moran {

double pgf_birth_death(double x, double t, double a, double b, std::int64_t z0) {
  if (!(a >= 0.0 && b >= 0.0)) throw std::invalid_argument("pgf: rates must be >= 0");
  if (a == b) throw std::invalid_argument("pgf: formula requires a != b");
  if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("pgf: x must be in [0, 1)");
  if (!(t >= 0.0)) throw std::invalid_argument("pgf: t must be >= 0");
  if (z0 < 1) throw std::invalid_argument("pgf: z0 must be >= 1");

  // Arrange the exponential factor to be <= 1 so it never overflows.
  double num, den;
  if (a > b) {
    const double e = std::exp(-(a - b) * t);
    num = b * (x - 1.0) - (a * x - b) * e;
    den = a * (x - 1.0) - (a * x - b) * e;
  } else {
    const double e = std::exp((a - b) * t);  // a < b, so e <= 1
    num = b * (x - 1.0) * e - (a * x - b);
    den = a * (x - 1.0) * e - (a * x - b);
  }
  const double ratio = std::clamp(num / den, 0.0, 1.0);
  return std::pow(ratio, static_cast<double>(z0));
}

double birth_death_tail_bound(double a, double b, double M, double t,
                              std::int64_t k, std::int64_t z0) {
  if (!(a > 0.0 && b >= 0.0 && a >= b))
    throw std::invalid_argument("tail bound requires a >= b >= 0 and a > 0");
  if (!(M >= 1.0)) throw std::invalid_argument("tail bound requires M >= 1");
  if (k < 0) throw std::invalid_argument("tail bound requires k >= 0");
  if (z0 < 1) throw std::invalid_argument("tail bound requires z0 >= 1");
  // +inf when a == b or b == 0, which rejects any finite t.
  const double threshold =
      std::max(std::log(2.0), std::log(a * M / b)) / (a - b);
  if (!(t >= threshold))
    throw std::invalid_argument(
        "tail bound requires t >= max(ln 2, ln(aM/b)) / (a - b)");
  return std::pow(1.0 - 1.0 / M, -static_cast<double>(k)) *
         std::pow(4.0 * b / a, static_cast<double>(z0));
}

double binomial_lower_tail_bound(std::int64_t n, double gamma) {
  if (n < 1) throw std::invalid_argument("binomial bound requires n >= 1");
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("binomial bound requires gamma in (0, 1]");
  return std::exp(-static_cast<double>(n) * gamma * gamma / 2.0);
}

double poisson_lower_tail_bound(double lambda, std::int64_t n) {
  if (!(lambda > 0.0)) throw std::invalid_argument("poisson bound requires lambda > 0");
  if (n < 1) throw std::invalid_argument("poisson bound requires n >= 1");
  const double nn = static_cast<double>(n);
  // log form keeps (lambda/n^2)^n out of the underflow range.
  return std::exp(-lambda - 1.0 / (2.0 * nn) - 0.5 * std::log(2.0 * M_PI) +
                  nn * (std::log(lambda) - 2.0 * std::log(nn)));
}

PoissonTailCheck poisson_upper_tail_check(std::int64_t n_pop, double mu) {
  if (n_pop < 1) throw std::invalid_argument("poisson tail check requires N >= 1");
  if (!(mu > 0.0)) throw std::invalid_argument("poisson tail check requires mu > 0");
  const double lambda = static_cast<double>(n_pop) * mu;
  const double n = static_cast<double>(n_pop) * static_cast<double>(n_pop);
  if (!(lambda < n))
    throw std::invalid_argument("poisson tail check requires N*mu < N^2");

  // P(Z >= n) = P(Z = n) * (1 + lambda/(n+1) + lambda^2/((n+1)(n+2)) + ...);
  // the series converges geometrically since lambda/n < 1.
  const double log_p_n = -lambda + n * std::log(lambda) - std::lgamma(n + 1.0);
  double series = 1.0, term = 1.0;
  for (double k = n + 1.0; term > 1e-20 * series; k += 1.0) {
    term *= lambda / k;
    series += term;
  }

  PoissonTailCheck out;
  out.log_tail = log_p_n + std::log(series);
  out.tail = std::exp(out.log_tail);
  const double n_log_n =
      static_cast<double>(n_pop) * std::log(static_cast<double>(n_pop));
  out.within_bound = out.log_tail <= -n_log_n + std::log(10.0);
  return out;
}

}  // namespace moran
