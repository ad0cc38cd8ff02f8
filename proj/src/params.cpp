#include "moran/params.hpp"

#include <stdexcept>
#include <string>

namespace moran {

void Params::validate() const {
  if (pop_size < 1)
    throw std::invalid_argument("pop_size must be >= 1, got " +
                                std::to_string(pop_size));
  if (!(mu >= 0.0))
    throw std::invalid_argument("mu must be >= 0, got " + std::to_string(mu));
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("q must be in [0, 1], got " + std::to_string(q));
  if (!(s >= 0.0))
    throw std::invalid_argument("s must be >= 0, got " + std::to_string(s));
}

}  // namespace moran
