#include "moran/birth_death.hpp"

#include <stdexcept>

#include "moran/rng.hpp"

namespace moran {

void BirthDeathConfig::validate() const {
  if (!(a >= 0.0)) throw std::invalid_argument("birth rate a must be >= 0");
  if (!(b >= 0.0)) throw std::invalid_argument("death rate b must be >= 0");
  if (z0 < 1) throw std::invalid_argument("z0 must be >= 1");
  if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be >= 0");
}

BirthDeathResult simulate_birth_death(const BirthDeathConfig& cfg) {
  cfg.validate();
  RngEngine rng = make_engine(cfg.seed);
  std::int64_t z = cfg.z0;
  double t = 0.0;
  BirthDeathResult out;
  const double birth_frac = cfg.a + cfg.b > 0.0 ? cfg.a / (cfg.a + cfg.b) : 0.0;

  while (z > 0) {
    const double rate = (cfg.a + cfg.b) * static_cast<double>(z);
    if (rate <= 0.0) break;
    t += exponential(rng, rate);
    if (t > cfg.horizon) break;
    z += uniform_unit(rng) < birth_frac ? 1 : -1;
    out.events.emplace_back(t, z);
  }
  out.final_count = z;
  return out;
}

}  // namespace moran
