#ifndef MAGLEV_SIM_DRIVER_HPP_
#define MAGLEV_SIM_DRIVER_HPP_

#include "maglev/types.hpp"

namespace maglev::sim {

/// First-order lag of the regulated coil currents with -3 dB corner fc:
/// i <- i_sp + (i - i_sp) exp(-2 pi fc dt), exact for a constant setpoint.
/// Throws std::invalid_argument unless fc > 0.
Vec8 driver_step(const Vec8& i_actual, const Vec8& i_setpoint, double fc, double dt);

}  // namespace maglev::sim

#endif  // MAGLEV_SIM_DRIVER_HPP_
