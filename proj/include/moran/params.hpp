#pragma once

#include <cstdint>

namespace moran {

// The model quadruple. mu is the total mutation rate per individual per
// generation, q the probability that a mutation is beneficial, s the
// selection coefficient per unit fitness difference.
struct Params {
  std::int64_t pop_size = 0;
  double mu = 0.0;
  double q = 0.0;
  double s = 0.0;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

}  // namespace moran
