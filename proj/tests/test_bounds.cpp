#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "moran/bounds.hpp"

using namespace moran;

namespace {

// Test-side exact binomial lower tail, log-space summation.
double exact_binomial_cdf(std::int64_t n, double gamma, std::int64_t m) {
  if (gamma >= 1.0) return m >= n ? 1.0 : 0.0;
  double acc = 0.0;
  const double nn = static_cast<double>(n);
  for (std::int64_t k = 0; k <= m; ++k) {
    const double kk = static_cast<double>(k);
    acc += std::exp(std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) -
                    std::lgamma(nn - kk + 1.0) + kk * std::log(gamma) +
                    (nn - kk) * std::log1p(-gamma));
  }
  return acc;
}

// Test-side exact Poisson upper tail.
double exact_poisson_tail(double lambda, std::int64_t m) {
  double acc = 0.0;
  double term = std::exp(-lambda + static_cast<double>(m) * std::log(lambda) -
                         std::lgamma(static_cast<double>(m) + 1.0));
  for (std::int64_t k = m;; ++k) {
    acc += term;
    term *= lambda / static_cast<double>(k + 1);
    if (term < 1e-22 * acc) break;
  }
  return acc;
}

}  // namespace

TEST_CASE("pgf basics") {
  // t=0 is the initial condition x^z0.
  CHECK(pgf_birth_death(0.3, 0.0, 2.0, 1.0, 3) ==
        doctest::Approx(0.027).epsilon(1e-12));
  // x -> 1- gives PGF normalization.
  CHECK(std::abs(pgf_birth_death(1.0 - 1e-8, 1.0, 2.0, 1.0, 2) - 1.0) <= 1e-6);
  // b=0 reduces to the pure-birth form.
  const double x = 0.5, a = 1.0, t = 1.0;
  const double pure =
      std::pow(x * std::exp(-a * t) / (1.0 - x * (1.0 - std::exp(-a * t))), 2.0);
  CHECK(std::abs(pgf_birth_death(x, t, a, 0.0, 2) - pure) <= 1e-12);
  CHECK_THROWS_AS(pgf_birth_death(0.5, 1.0, 1.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(pgf_birth_death(1.2, 1.0, 2.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("pgf stays within [0,1], including subcritical long horizons") {
  for (double a : {0.5, 1.0, 2.0})
    for (double b : {0.1, 0.9, 3.0})
      for (double t : {0.5, 5.0, 500.0})
        for (double x : {0.0, 0.2, 0.8}) {
          if (a == b) continue;
          const double g = pgf_birth_death(x, t, a, b, 3);
          CHECK(g >= 0.0);
          CHECK(g <= 1.0);
          CHECK(std::isfinite(g));
        }
}

TEST_CASE("birth-death tail bound") {
  // k=0 makes the M factor exactly 1: bound is (4b/a)^z0.
  CHECK(birth_death_tail_bound(2.0, 0.25, 2.0, 3.0, 0, 4) ==
        doctest::Approx(0.0625).epsilon(1e-12));
  CHECK(birth_death_tail_bound(2.0, 0.25, 1e12, 3.0, 0, 4) ==
        doctest::Approx(0.0625).epsilon(1e-9));
  // t below the lemma threshold is rejected.
  CHECK_THROWS_AS(birth_death_tail_bound(2.0, 1.0, 2.0, 1.0, 3, 10),
                  std::invalid_argument);
  // a == b and b == 0 make the threshold infinite.
  CHECK_THROWS_AS(birth_death_tail_bound(1.0, 1.0, 2.0, 100.0, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(birth_death_tail_bound(1.0, 0.0, 2.0, 100.0, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(birth_death_tail_bound(2.0, 1.0, 0.5, 100.0, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("binomial bound dominates the exact CDF") {
  const double bound = binomial_lower_tail_bound(100, 0.3);
  CHECK(bound == doctest::Approx(std::exp(-4.5)).epsilon(1e-12));
  const double exact = exact_binomial_cdf(100, 0.3, 15);
  CHECK(exact == doctest::Approx(4.0499954194e-4).epsilon(1e-6));
  CHECK(exact <= bound);

  for (std::int64_t n = 10; n <= 200; n += 5)
    for (int gi = 1; gi <= 9; ++gi) {
      const double gamma = gi / 10.0;
      const std::int64_t m = static_cast<std::int64_t>(
          std::floor(static_cast<double>(n) * gamma / 2.0));
      CHECK(exact_binomial_cdf(n, gamma, m) <=
            binomial_lower_tail_bound(n, gamma));
    }

  // gamma = 1: Binomial(n,1) is the point mass at n.
  CHECK(exact_binomial_cdf(40, 1.0, 20) == 0.0);
  CHECK(binomial_lower_tail_bound(40, 1.0) ==
        doctest::Approx(std::exp(-20.0)).epsilon(1e-12));
}

TEST_CASE("poisson lower bound is dominated by the exact tail") {
  const double bound = poisson_lower_tail_bound(1.0, 2);
  CHECK(bound == doctest::Approx(0.00714368).epsilon(1e-5));
  const double exact = 1.0 - 2.0 / std::exp(1.0);
  CHECK(exact == doctest::Approx(exact_poisson_tail(1.0, 2)).epsilon(1e-10));
  CHECK(bound <= exact);

  for (double lambda : {0.5, 1.0, 2.0})
    for (std::int64_t n = 1; n <= 20; ++n)
      CHECK(poisson_lower_tail_bound(lambda, n) <=
            exact_poisson_tail(lambda, n));

  // n=1, large lambda: bound <= 1 - e^{-lambda} = P(Z >= 1)
  for (double lambda : {5.0, 10.0, 50.0})
    CHECK(poisson_lower_tail_bound(lambda, 1) <= 1.0 - std::exp(-lambda));
}

TEST_CASE("poisson upper tail check") {
  const auto c1 = poisson_upper_tail_check(10, 0.01);
  CHECK(c1.log_tail < -150.0 * std::log(10.0));  // tail < 1e-150
  CHECK(c1.within_bound);
  // Bracket the log tail with P(Z = n) <= tail <= P(Z = n)/(1 - lambda/n).
  {
    const double lambda = 0.1, n = 100.0;
    const double log_p_n =
        -lambda + n * std::log(lambda) - std::lgamma(n + 1.0);
    CHECK(c1.log_tail >= log_p_n - 1e-9);
    CHECK(c1.log_tail <= log_p_n - std::log1p(-lambda / n) + 1e-9);
  }

  const auto c2 = poisson_upper_tail_check(20, 1.0);
  CHECK(c2.within_bound);
  CHECK(c2.log_tail <= -20.0 * std::log(20.0) + std::log(10.0));

  double prev = 0.0;
  bool first = true;
  for (std::int64_t n : {10, 15, 20, 30}) {
    const auto c = poisson_upper_tail_check(n, 0.5);
    if (!first) CHECK(c.log_tail < prev);
    prev = c.log_tail;
    first = false;
  }
}
