#include "maglev/translation_control.hpp"

#include <algorithm>
#include <cmath>

namespace maglev {

AxisModel discretize_axis(double mass, double Ts) {
  if (!(mass > 0.0) || !(Ts > 0.0)) {
    throw std::invalid_argument("discretize_axis: mass and Ts must be positive");
  }
  AxisModel m;
  m.A << 1.0, Ts, 0.0, 1.0;
  m.B << Ts * Ts / (2.0 * mass), Ts / mass;
  m.Ts = Ts;
  m.mass = mass;
  return m;
}

Normalization nominal_normalization(double mass, double xi, double velocity_factor,
                                    double input_factor) {
  Normalization n;
  n.Tx = Vec2(xi, velocity_factor * xi).asDiagonal();
  n.Tu = input_factor * mass * xi;
  return n;
}

LqrDesign design_axis_lqr(const AxisModel& model, const Mat2& Q_bar, double rho,
                          const Normalization& normalization) {
  if (!(rho > 0.0)) throw std::invalid_argument("design_axis_lqr: rho must be positive");
  if (!Q_bar.isApprox(Q_bar.transpose(), 1e-12) ||
      Eigen::SelfAdjointEigenSolver<Mat2>(Q_bar).eigenvalues().minCoeff() < -1e-12) {
    throw std::invalid_argument("design_axis_lqr: Q must be symmetric positive semidefinite");
  }
  const Mat2& Tx = normalization.Tx;
  const double Tu = normalization.Tu;
  if (std::abs(Tx.determinant()) == 0.0 || Tu == 0.0) {
    throw std::invalid_argument("design_axis_lqr: normalization must be invertible");
  }
  const Mat2 Tx_inv = Tx.inverse();
  const Mat2 A_bar = Tx_inv * model.A * Tx;
  const Vec2 B_bar = Tx_inv * model.B * Tu;

  LqrDesign d;
  d.Q = Q_bar;
  d.rho = rho;
  d.normalization = normalization;
  d.P_normalized = solve_dare<2>(A_bar, B_bar, Q_bar, rho);
  d.dare_residual = dare_residual<2>(A_bar, B_bar, Q_bar, rho, d.P_normalized);
  const RowVec2 K_bar = lqr_gain<2>(A_bar, B_bar, d.P_normalized, rho);
  d.K = Tu * K_bar * Tx_inv;

  const Mat2 closed = model.A - model.B * d.K;
  const Eigen::EigenSolver<Mat2> es(closed);
  d.closed_loop_eigenvalues = {es.eigenvalues()(0), es.eigenvalues()(1)};
  d.spectral_radius = es.eigenvalues().cwiseAbs().maxCoeff();
  return d;
}

LqrDesign design_axis_lqr(const AxisModel& model, const Mat2& Q_bar, double rho, double xi) {
  if (!(xi > 0.0)) throw std::invalid_argument("design_axis_lqr: xi must be positive");
  return design_axis_lqr(model, Q_bar, rho, nominal_normalization(model.mass, xi));
}

TranslationCommand translation_control(const Vec3& p, const Vec3& v, const Vec3& p_des,
                                       const Vec3& v_des, const TranslationGains& gains,
                                       const Vec3& integral, double dt) {
  const double windup_force = 0.5 * gains.mass * gains.gravity;
  TranslationCommand out;
  out.integral = integral + (p_des - p) * dt;
  for (int axis = 0; axis < 3; ++axis) {
    const double ki = gains.ki(axis);
    if (ki > 0.0) {
      const double bound = windup_force / ki;
      out.integral(axis) = std::clamp(out.integral(axis), -bound, bound);
    }
    const Vec2 error(p_des(axis) - p(axis), v_des(axis) - v(axis));
    out.force(axis) = gains.axes[static_cast<std::size_t>(axis)].K.dot(error) +
                      ki * out.integral(axis);
  }
  out.force.z() += gains.mass * gains.gravity;
  return out;
}

}  // namespace maglev
