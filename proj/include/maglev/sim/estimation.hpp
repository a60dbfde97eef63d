#ifndef MAGLEV_SIM_ESTIMATION_HPP_
#define MAGLEV_SIM_ESTIMATION_HPP_

#include "maglev/types.hpp"

namespace maglev::sim {

/// Backward difference (p_k - p_km1) / Ts.
Vec3 estimate_velocity(const Vec3& p_k, const Vec3& p_km1, double Ts);

/// Body rate from the rotation increment: log(R_km1^T R_k) / Ts.
Vec3 estimate_body_rate(const Mat3& R_k, const Mat3& R_km1, double Ts);

}  // namespace maglev::sim

#endif  // MAGLEV_SIM_ESTIMATION_HPP_
