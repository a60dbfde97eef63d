#include "maglev/field_model.hpp"

#include <cmath>
#include <sstream>

namespace maglev {

namespace {

Vec3 offset_from_center(const CoilSource& src, const Vec3& p) {
  const Vec3 r = p - src.center;
  if (!(r.norm() > kSingularityRadius)) {
    std::ostringstream msg;
    msg << "field evaluated within " << kSingularityRadius
        << " m of a coil center (distance " << r.norm() << " m)";
    throw SingularityError(msg.str());
  }
  return r;
}

}  // namespace

Mat3 Gradient5::jacobian() const {
  Mat3 J;
  J << g(0), g(1), g(2),
       g(1), g(3), g(4),
       g(2), g(4), -(g(0) + g(3));
  return J;
}

Gradient5 Gradient5::from_jacobian(const Mat3& J) {
  Gradient5 out;
  out.g << J(0, 0), J(0, 1), J(0, 2), J(1, 1), J(1, 2);
  return out;
}

FieldModel::FieldModel(const std::array<CoilSource, kNumCoils>& coils) : coils_(coils) {
  for (std::size_t j = 0; j < coils_.size(); ++j) {
    const auto& c = coils_[j];
    if (!c.center.allFinite() || !c.axis.allFinite() || !std::isfinite(c.strength)) {
      throw std::invalid_argument("coil " + std::to_string(j) + ": non-finite parameter");
    }
    if (std::abs(c.axis.norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("coil " + std::to_string(j) + ": axis is not unit length");
    }
    if (!(c.strength > 0.0)) {
      throw std::invalid_argument("coil " + std::to_string(j) + ": strength must be positive");
    }
  }
}

Vec3 FieldModel::field(const Vec3& p, const Vec8& currents) const {
  Vec3 b = Vec3::Zero();
  for (int j = 0; j < kNumCoils; ++j) b += dipole_field(coil(j), p, currents(j));
  return b;
}

Gradient5 FieldModel::gradient(const Vec3& p, const Vec8& currents) const {
  Mat3 J = Mat3::Zero();
  for (int j = 0; j < kNumCoils; ++j) J += dipole_jacobian(coil(j), p, currents(j));
  return Gradient5::from_jacobian(J);
}

Mat8 FieldModel::actuation_matrix(const Vec3& p) const {
  Mat8 A;
  for (int j = 0; j < kNumCoils; ++j) {
    A.col(j).head<3>() = dipole_field(coil(j), p, 1.0);
    A.col(j).tail<5>() = dipole_gradient(coil(j), p, 1.0).g;
  }
  return A;
}

// B = k (3 (a.r) r / r^5 - a / r^3), k = mu0/(4 pi) * strength * current.
Vec3 dipole_field(const CoilSource& src, const Vec3& p, double current) {
  const Vec3 r = offset_from_center(src, p);
  const double r2 = r.squaredNorm();
  const double r_norm = std::sqrt(r2);
  const double inv_r3 = 1.0 / (r2 * r_norm);
  const double k = kMu0Over4Pi * src.strength * current;
  return k * inv_r3 * (3.0 * src.axis.dot(r) / r2 * r - src.axis);
}

// dB_i/dx_j = k (3 (a_j r_i + a_i r_j + (a.r) d_ij) / r^5 - 15 (a.r) r_i r_j / r^7)
Mat3 dipole_jacobian(const CoilSource& src, const Vec3& p, double current) {
  const Vec3 r = offset_from_center(src, p);
  const double r2 = r.squaredNorm();
  const double inv_r5 = 1.0 / (r2 * r2 * std::sqrt(r2));
  const double k = kMu0Over4Pi * src.strength * current;
  const double ar = src.axis.dot(r);
  const Vec3& a = src.axis;
  Mat3 J = 3.0 * (r * a.transpose() + a * r.transpose() + ar * Mat3::Identity()) -
           (15.0 * ar / r2) * (r * r.transpose());
  return (k * inv_r5) * J;
}

Gradient5 dipole_gradient(const CoilSource& src, const Vec3& p, double current) {
  return Gradient5::from_jacobian(dipole_jacobian(src, p, current));
}

Mat8 actuation_matrix(const FieldModel& model, const Vec3& p) {
  return model.actuation_matrix(p);
}

FieldModel default_field_model(double strength) {
  constexpr double kDeg = std::numbers::pi / 180.0;
  std::array<CoilSource, kNumCoils> coils;
  std::size_t j = 0;
  for (const double polar : {45.0, 100.0}) {
    for (const double azimuth : {0.0, 90.0, 180.0, 270.0}) {
      const double t = polar * kDeg;
      const double a = azimuth * kDeg;
      const Vec3 dir(std::sin(t) * std::cos(a), std::sin(t) * std::sin(a), std::cos(t));
      coils[j].center = kDefaultCoilRadius * dir;
      coils[j].axis = -dir.normalized();
      coils[j].strength = strength;
      ++j;
    }
  }
  return FieldModel(coils);
}

}  // namespace maglev
