#include "maglev/sim/driver.hpp"

#include <cmath>
#include <stdexcept>

namespace maglev::sim {

Vec8 driver_step(const Vec8& i_actual, const Vec8& i_setpoint, double fc, double dt) {
  if (!(fc > 0.0)) throw std::invalid_argument("driver_step: corner frequency must be positive");
  const double decay = std::exp(-2.0 * std::numbers::pi * fc * dt);
  return i_setpoint + (i_actual - i_setpoint) * decay;
}

}  // namespace maglev::sim
