#ifndef MAGLEV_TYPES_HPP_
#define MAGLEV_TYPES_HPP_

#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace maglev {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat3x5 = Eigen::Matrix<double, 3, 5>;
using Mat5x8 = Eigen::Matrix<double, 5, 8>;
using Mat6x8 = Eigen::Matrix<double, 6, 8>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

inline constexpr int kNumCoils = 8;

// Vacuum permeability, T·m/A.
inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi;
inline constexpr double kMu0Over4Pi = 1.0e-7;

inline constexpr double kStandardGravity = 9.81;

// Evaluation closer than this to a coil's magnetic center is rejected.
inline constexpr double kSingularityRadius = 1e-6;

class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidRotationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace maglev

#endif  // MAGLEV_TYPES_HPP_
