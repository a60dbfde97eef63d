#ifndef MAGLEV_SO3_HPP_
#define MAGLEV_SO3_HPP_

#include <Eigen/Geometry>

#include "maglev/types.hpp"

namespace maglev::so3 {

/// Skew-symmetric matrix such that skew(a) * b == a.cross(b).
Mat3 skew(const Vec3& a);

/// Inverse of skew() for a (nearly) skew-symmetric matrix.
Vec3 vee(const Mat3& m);

/// Rotation matrix exp([phi]x) via Rodrigues' formula.
Mat3 exp(const Vec3& phi);

/// Rotation vector phi with exp([phi]x) == R, |phi| in [0, pi].
Vec3 log(const Mat3& R);

/// Frobenius norm of R^T R - I.
double orthonormality_error(const Mat3& R);

/// True when ||R^T R - I||_F < tol and det(R) > 0.
bool is_rotation(const Mat3& R, double tol = 1e-9);

/// Throws InvalidRotationError unless is_rotation(R, tol).
void require_rotation(const Mat3& R, double tol = 1e-9);

/// Nearest rotation in the Frobenius sense (polar decomposition via SVD).
Mat3 project_to_rotation(const Mat3& M);

Mat3 rot_x(double angle);
Mat3 rot_y(double angle);
Mat3 rot_z(double angle);

/// R = Rx(roll) * Ry(pitch) * Rz(yaw): XYZ intrinsic Euler angles.
Mat3 from_euler_xyz(double roll, double pitch, double yaw);

/// Inverse of from_euler_xyz. Returns (roll, pitch, yaw).
Vec3 to_euler_xyz(const Mat3& R);

}  // namespace maglev::so3

#endif  // MAGLEV_SO3_HPP_
