#include "maglev/so3.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace maglev::so3 {

Mat3 skew(const Vec3& a) {
  Mat3 m;
  m << 0.0, -a.z(), a.y(),
       a.z(), 0.0, -a.x(),
       -a.y(), a.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) {
  return 0.5 * Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

Mat3 exp(const Vec3& phi) {
  const double angle = phi.norm();
  const Mat3 K = skew(phi);
  if (angle < 1e-8) {
    // Second-order series; the truncation error is below machine precision here.
    return Mat3::Identity() + K + 0.5 * K * K;
  }
  const double a = std::sin(angle) / angle;
  const double b = (1.0 - std::cos(angle)) / (angle * angle);
  return Mat3::Identity() + a * K + b * K * K;
}

Vec3 log(const Mat3& R) {
  const Eigen::AngleAxisd aa(R);
  return aa.angle() * aa.axis();
}

double orthonormality_error(const Mat3& R) {
  return (R.transpose() * R - Mat3::Identity()).norm();
}

bool is_rotation(const Mat3& R, double tol) {
  return R.allFinite() && orthonormality_error(R) < tol && R.determinant() > 0.0;
}

void require_rotation(const Mat3& R, double tol) {
  if (!is_rotation(R, tol)) {
    throw InvalidRotationError("matrix is not in SO(3): ||R^T R - I|| = " +
                               std::to_string(orthonormality_error(R)) +
                               ", det = " + std::to_string(R.determinant()));
  }
}

Mat3 project_to_rotation(const Mat3& M) {
  const Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 D = Mat3::Identity();
  D(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  return svd.matrixU() * D * svd.matrixV().transpose();
}

Mat3 rot_x(double angle) {
  return Eigen::AngleAxisd(angle, Vec3::UnitX()).toRotationMatrix();
}

Mat3 rot_y(double angle) {
  return Eigen::AngleAxisd(angle, Vec3::UnitY()).toRotationMatrix();
}

Mat3 rot_z(double angle) {
  return Eigen::AngleAxisd(angle, Vec3::UnitZ()).toRotationMatrix();
}

Mat3 from_euler_xyz(double roll, double pitch, double yaw) {
  return rot_x(roll) * rot_y(pitch) * rot_z(yaw);
}

Vec3 to_euler_xyz(const Mat3& R) {
  // R = Rx(a) Ry(b) Rz(c); R(0,2) = sin(b).
  const double pitch = std::asin(std::clamp(R(0, 2), -1.0, 1.0));
  const double roll = std::atan2(-R(1, 2), R(2, 2));
  const double yaw = std::atan2(-R(0, 1), R(0, 0));
  return {roll, pitch, yaw};
}

}  // namespace maglev::so3
