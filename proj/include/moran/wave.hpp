#pragma once

#include <cstdint>
#include <vector>

#include "moran/params.hpp"

namespace moran {

// Mean-fitness drift: mu*(2q-1) + s*c2.
double drift_rate(const Params& params, double c2);

// Central moment of a normal distribution with variance c2:
// 0 for odd n, (n-1)!! * c2^(n/2) for even n. Requires n >= 2.
double gaussian_central_moment(double c2, int n);

// Central moments c_2..c_{n_max} with implicit c_0 = 1, c_1 = 0.
struct MomentVector {
  std::vector<double> c;  // c[i] holds c_{i+2}

  int n_max() const { return static_cast<int>(c.size()) + 1; }
  double get(int n) const;  // n >= 0
};

// Right-hand side of the central-moment system:
//   dc_n/dt = s * (c_{n+1} - n * c_{n-1} * c_2),  n = 2..n_max,
// with c_{n_max+1} closed by the Gaussian value at the current c_2.
// The Gaussian moment family is an exact fixed point.
MomentVector moment_ode_rhs(const MomentVector& m, double s);

// Principal-branch Lambert W for z >= 0: bracketed bisection plus Halley
// refinement; |w e^w - z| <= 1e-12 * max(1, z).
double lambert_w(double z);

// Root K of K*ln(s*K) = 2*log_n on the branch s*K > 1, where the left side
// increases from 0. log_n is ln of the population size. Residual <= 1e-9.
double solve_front_k(double log_n, double s);

// solve_front_k with log_n = ln(pop_size); pop_size >= 3.
double predict_front_K(std::int64_t pop_size, double s);

struct WavePrediction {
  double K = 0.0;      // front lead in fitness units
  double b = 0.0;      // wave width, K / sqrt(2 ln N)
  double speed = 0.0;  // mu*(2q-1) + s*K^2/(2 ln N)
  // Waiting-time diagnostic (s*K - mu)/ln(s*K - mu); agrees with `speed` up
  // to dropped mu terms. NaN when s*K - mu <= 1 (log not usable).
  double front_speed = 0.0;
};

// Requires pop_size >= 3 and s > 0.
WavePrediction predict_wave_speed(const Params& params);

}  // namespace moran
