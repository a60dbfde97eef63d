#ifndef MAGLEV_TRANSLATION_CONTROL_HPP_
#define MAGLEV_TRANSLATION_CONTROL_HPP_

#include <algorithm>
#include <array>
#include <complex>
#include <stdexcept>

#include "maglev/types.hpp"

namespace maglev {

using RowVec2 = Eigen::RowVector2d;

/// Zero-order-hold discretization of a double integrator driven by force.
struct AxisModel {
  Mat2 A = Mat2::Identity();
  Vec2 B = Vec2::Zero();
  double Ts = 0.0;
  double mass = 0.0;
};

AxisModel discretize_axis(double mass, double Ts);

class DareError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stabilizing solution of P = Q + A'PA - A'PB (r + B'PB)^-1 B'PA for a
/// single input, by fixed-point iteration from P = Q. Stops once
/// ||dP||_F <= 1e-12 ||P||_F; throws DareError after max_iterations.
template <int N>
Eigen::Matrix<double, N, N> solve_dare(const Eigen::Matrix<double, N, N>& A,
                                       const Eigen::Matrix<double, N, 1>& B,
                                       const Eigen::Matrix<double, N, N>& Q, double r,
                                       long max_iterations = 1'000'000) {
  if (!(r > 0.0)) throw DareError("solve_dare: input cost must be positive");
  Eigen::Matrix<double, N, N> P = Q;
  for (long it = 0; it < max_iterations; ++it) {
    const Eigen::Matrix<double, 1, N> BtPA = B.transpose() * P * A;
    const double s = r + B.dot(P * B);
    Eigen::Matrix<double, N, N> next = Q + A.transpose() * P * A - BtPA.transpose() * BtPA / s;
    next = 0.5 * (next + next.transpose());
    if (!next.allFinite()) throw DareError("solve_dare: iteration diverged");
    const double change = (next - P).norm();
    P = next;
    if (change <= 1e-12 * P.norm()) return P;
  }
  throw DareError("solve_dare: no convergence within iteration limit");
}

/// Gain K = (r + B'PB)^-1 B'PA.
template <int N>
Eigen::Matrix<double, 1, N> lqr_gain(const Eigen::Matrix<double, N, N>& A,
                                     const Eigen::Matrix<double, N, 1>& B,
                                     const Eigen::Matrix<double, N, N>& P, double r) {
  return (B.transpose() * P * A) / (r + B.dot(P * B));
}

/// ||P - (Q + A'PA - A'PB (r + B'PB)^-1 B'PA)||_F / max(||P||_F, 1).
template <int N>
double dare_residual(const Eigen::Matrix<double, N, N>& A, const Eigen::Matrix<double, N, 1>& B,
                     const Eigen::Matrix<double, N, N>& Q, double r,
                     const Eigen::Matrix<double, N, N>& P) {
  const Eigen::Matrix<double, 1, N> BtPA = B.transpose() * P * A;
  const Eigen::Matrix<double, N, N> rhs =
      Q + A.transpose() * P * A - BtPA.transpose() * BtPA / (r + B.dot(P * B));
  return (P - rhs).norm() / std::max(P.norm(), 1.0);
}

/// State/input normalization x_bar = Tx^-1 x, u_bar = Tu^-1 u.
struct Normalization {
  Mat2 Tx = Mat2::Identity();
  double Tu = 1.0;
};

/// Tx = diag(xi, velocity_factor * xi), Tu = input_factor * mass * xi.
Normalization nominal_normalization(double mass, double xi, double velocity_factor = 5.0,
                                    double input_factor = 5.0);

struct LqrDesign {
  Mat2 Q = Mat2::Zero();         // normalized state cost
  double rho = 1.0;              // normalized input cost
  Normalization normalization;
  RowVec2 K = RowVec2::Zero();   // physical units: N/m, N·s/m
  Mat2 P_normalized = Mat2::Zero();
  double dare_residual = 0.0;
  std::array<std::complex<double>, 2> closed_loop_eigenvalues{};
  double spectral_radius = 0.0;  // of A - B K
};

/// Discrete LQR designed in normalized coordinates, then denormalized as
/// K = Tu K_bar Tx^-1. Throws DareError, or std::invalid_argument for
/// invalid costs or normalization.
LqrDesign design_axis_lqr(const AxisModel& model, const Mat2& Q_bar, double rho,
                          const Normalization& normalization);

/// Same, with nominal_normalization(model.mass, xi).
LqrDesign design_axis_lqr(const AxisModel& model, const Mat2& Q_bar, double rho, double xi);

struct TranslationGains {
  std::array<LqrDesign, 3> axes;
  Vec3 ki = Vec3::Constant(10.0);  // N/(m·s)
  double mass = 0.0324;
  double gravity = kStandardGravity;
};

struct TranslationCommand {
  Vec3 force = Vec3::Zero();     // N, world frame
  Vec3 integral = Vec3::Zero();  // m·s
};

/// Per axis f = K (s_des - s) + ki * integral(p_des - p) plus m g e_z
/// feedforward. The integral is advanced by the rectangle rule and its force
/// contribution is clamped to +-0.5 m g per axis.
TranslationCommand translation_control(const Vec3& p, const Vec3& v, const Vec3& p_des,
                                       const Vec3& v_des, const TranslationGains& gains,
                                       const Vec3& integral, double dt);

}  // namespace maglev

#endif  // MAGLEV_TRANSLATION_CONTROL_HPP_
