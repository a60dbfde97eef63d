#ifndef MAGLEV_FIELD_MODEL_HPP_
#define MAGLEV_FIELD_MODEL_HPP_

#include <array>
#include <vector>

#include "maglev/types.hpp"

namespace maglev {

/// Dipole-term source model of one electromagnet. The dipole moment produced
/// by a coil current I is strength * I * axis, located at center.
struct CoilSource {
  Vec3 center = Vec3::Zero();  // m, world frame
  Vec3 axis = Vec3::UnitZ();   // unit vector
  double strength = 1.0;       // A·m² per A
};

/// The five independent field-gradient components
/// (dbx/dx, dbx/dy, dbx/dz, dby/dy, dby/dz), T/m.
struct Gradient5 {
  Vec5 g = Vec5::Zero();

  /// Full field Jacobian J(i, j) = dB_i/dx_j, reconstructed using the
  /// curl-free (symmetry) and divergence-free (zero trace) identities.
  Mat3 jacobian() const;

  /// Packs the independent entries of a field Jacobian.
  static Gradient5 from_jacobian(const Mat3& J);
};

struct FieldSample {
  Vec3 position = Vec3::Zero();     // m
  Vec8 coil_currents = Vec8::Zero();  // A
  Vec3 measured_field = Vec3::Zero();  // T
};

/// Eight-coil eMNS model. Coil order matches the current-vector order.
class FieldModel {
 public:
  /// Throws std::invalid_argument if any coil violates |axis| = 1 (1e-12)
  /// or strength > 0.
  explicit FieldModel(const std::array<CoilSource, kNumCoils>& coils);

  const std::array<CoilSource, kNumCoils>& coils() const { return coils_; }
  const CoilSource& coil(int j) const { return coils_[static_cast<std::size_t>(j)]; }

  /// Total field at p for the given currents.
  Vec3 field(const Vec3& p, const Vec8& currents) const;

  /// Total gradient at p for the given currents.
  Gradient5 gradient(const Vec3& p, const Vec8& currents) const;

  /// Column j is (field; Gradient5) at p for 1 A in coil j.
  Mat8 actuation_matrix(const Vec3& p) const;

 private:
  std::array<CoilSource, kNumCoils> coils_;
};

/// Point-dipole field of one coil at p, T. Linear in current.
/// Throws SingularityError if |p - center| <= kSingularityRadius.
Vec3 dipole_field(const CoilSource& src, const Vec3& p, double current);

/// Analytic field Jacobian dB_i/dx_j of one coil at p.
Mat3 dipole_jacobian(const CoilSource& src, const Vec3& p, double current);

/// Gradient5 of one coil at p. Same singularity rule as dipole_field.
Gradient5 dipole_gradient(const CoilSource& src, const Vec3& p, double current);

Mat8 actuation_matrix(const FieldModel& model, const Vec3& p);

/// Per-ampere strength of the default synthetic layout.
inline constexpr double kDefaultCoilStrength = 70.0;
inline constexpr double kDefaultCoilRadius = 0.12;

/// Synthetic eight-coil layout: two rings of four coils on a sphere of
/// radius 0.12 m (polar angles 45 and 100 deg, azimuths 0/90/180/270 deg),
/// axes pointing at the origin.
FieldModel default_field_model(double strength = kDefaultCoilStrength);

}  // namespace maglev

#endif  // MAGLEV_FIELD_MODEL_HPP_
