#include "maglev/allocation.hpp"

#include <algorithm>
#include <sstream>

namespace maglev {

Vec8 solve_currents(const Mat5x8& N_tilde, const ReducedWrench& wrench) {
  const Eigen::JacobiSVD<Mat5x8> svd(N_tilde, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec5 sv = svd.singularValues();
  if (!(sv(4) > 1e-12 * sv(0))) {
    std::ostringstream msg;
    msg << "reduced allocation matrix is rank deficient; singular values: "
        << sv.transpose();
    throw AllocationError(msg.str(), sv);
  }
  const Vec5 w = wrench.stacked();
  const Vec5 coeffs = (svd.matrixU().transpose() * w).cwiseQuotient(sv);
  return svd.matrixV().leftCols<5>() * coeffs;
}

bool SaturatedCurrents::any() const {
  return std::any_of(saturated.begin(), saturated.end(), [](bool s) { return s; });
}

unsigned SaturatedCurrents::mask() const {
  unsigned m = 0;
  for (std::size_t j = 0; j < saturated.size(); ++j) {
    if (saturated[j]) m |= 1u << j;
  }
  return m;
}

SaturatedCurrents saturate(const Vec8& currents, double limit) {
  if (!(limit > 0.0)) throw std::invalid_argument("saturate: limit must be positive");
  SaturatedCurrents out;
  for (int j = 0; j < kNumCoils; ++j) {
    out.currents(j) = std::clamp(currents(j), -limit, limit);
    out.saturated[static_cast<std::size_t>(j)] = out.currents(j) != currents(j);
  }
  return out;
}

Vec8 hover_currents(const FieldModel& model, const LevitatorParams& params, const Mat3& R,
                    const Vec3& p, double gravity) {
  ReducedWrench w;
  w.force = Vec3(0.0, 0.0, params.mass * gravity);
  return solve_currents(reduced_allocation_matrix(model, R, p, params.dipole_body), w);
}

}  // namespace maglev
