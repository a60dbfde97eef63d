#include "maglev/sim/stiffness.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace maglev::sim {

namespace {

Vec3 magnetic_force(const FieldModel& model, const Vec3& m_world, const Vec3& p,
                    const Vec8& currents) {
  return force_map(m_world) * model.gradient(p, currents).g;
}

}  // namespace

StiffnessReport stiffness_analysis(const FieldModel& model, const LevitatorParams& params,
                                   const Mat3& R, const Vec3& p, const Vec8& hover_currents,
                                   double gravity, double h) {
  const Vec3 m_world = R * params.dipole_body;
  StiffnessReport report;
  const Vec3 f0 = magnetic_force(model, m_world, p, hover_currents);
  report.force_residual = (f0 - params.mass * gravity * Vec3::UnitZ()).norm();
  if (!(report.force_residual < 1e-6)) {
    std::ostringstream msg;
    msg << "currents do not balance gravity at the pose (residual " << report.force_residual
        << " N)";
    throw std::invalid_argument(msg.str());
  }

  // (4 D(h) - D(2h)) / 3 cancels the h^2 term of the central difference.
  for (int k = 0; k < 3; ++k) {
    const Vec3 e = Vec3::Unit(k);
    const Vec3 d1 = (magnetic_force(model, m_world, p + h * e, hover_currents) -
                     magnetic_force(model, m_world, p - h * e, hover_currents)) / (2.0 * h);
    const Vec3 d2 = (magnetic_force(model, m_world, p + 2.0 * h * e, hover_currents) -
                     magnetic_force(model, m_world, p - 2.0 * h * e, hover_currents)) / (4.0 * h);
    report.K.col(k) = (4.0 * d1 - d2) / 3.0;
  }

  const Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (report.K + report.K.transpose()));
  report.eigenvalues = es.eigenvalues();
  report.eigenvectors = es.eigenvectors();
  report.k_max = report.eigenvalues(2);
  if (report.k_max > 0.0) report.divergence_time_constant = std::sqrt(params.mass / report.k_max);
  return report;
}

}  // namespace maglev::sim
