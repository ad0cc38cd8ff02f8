#pragma once

#include <cstdint>

namespace moran {

// E[x^{Z_t}] for the linear birth-death chain started at z0, a != b,
// x in [0,1). Evaluated so the exponential term never overflows.
double pgf_birth_death(double x, double t, double a, double b, std::int64_t z0);

// Upper bound on P(Z(t) <= k): (1 - 1/M)^{-k} * (4b/a)^{z0}.
// Requires a >= b, M >= 1 and t >= max(ln 2, ln(aM/b)) / (a - b); the
// threshold is +inf when a == b or b == 0, so those are rejected.
double birth_death_tail_bound(double a, double b, double M, double t,
                              std::int64_t k, std::int64_t z0);

// Upper bound on P(Z <= n*gamma/2) for Z ~ Binomial(n, gamma): e^{-n gamma^2/2}.
double binomial_lower_tail_bound(std::int64_t n, double gamma);

// Lower bound on P(Z >= n) for Z ~ Poisson(lambda):
// e^{-lambda - 1/(2n)} / sqrt(2 pi) * (lambda/n^2)^n.
double poisson_lower_tail_bound(double lambda, std::int64_t n);

// Exact P(Z >= N^2) for Z ~ Poisson(N*mu), computed in log space, together
// with the comparison against e^{-N ln N} * C (C = 10). Intended for the
// test suite, not end users.
struct PoissonTailCheck {
  double log_tail = 0.0;  // natural log of the exact tail
  double tail = 0.0;      // exp(log_tail); underflows to 0 when tiny
  bool within_bound = false;
};
PoissonTailCheck poisson_upper_tail_check(std::int64_t n_pop, double mu);

}  // namespace moran
