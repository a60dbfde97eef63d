#include "maglev/sim/estimation.hpp"

#include "maglev/so3.hpp"

namespace maglev::sim {

Vec3 estimate_velocity(const Vec3& p_k, const Vec3& p_km1, double Ts) {
  return (p_k - p_km1) / Ts;
}

Vec3 estimate_body_rate(const Mat3& R_k, const Mat3& R_km1, double Ts) {
  return so3::log(R_km1.transpose() * R_k) / Ts;
}

}  // namespace maglev::sim
