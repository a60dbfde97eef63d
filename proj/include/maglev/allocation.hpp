#ifndef MAGLEV_ALLOCATION_HPP_
#define MAGLEV_ALLOCATION_HPP_

#include <array>
#include <stdexcept>

#include "maglev/magnetics.hpp"

namespace maglev {

/// Thrown when the reduced allocation matrix loses row rank.
class AllocationError : public std::runtime_error {
 public:
  AllocationError(const std::string& what, const Vec5& singular_values)
      : std::runtime_error(what), singular_values_(singular_values) {}
  const Vec5& singular_values() const { return singular_values_; }

 private:
  Vec5 singular_values_;
};

/// Minimum-norm currents i = N^+ w via SVD. Throws AllocationError when the
/// smallest singular value is at most 1e-12 times the largest.
Vec8 solve_currents(const Mat5x8& N_tilde, const ReducedWrench& wrench);

struct SaturatedCurrents {
  Vec8 currents = Vec8::Zero();
  std::array<bool, kNumCoils> saturated{};

  bool any() const;
  /// Bit j set when coil j was clamped.
  unsigned mask() const;
};

/// Per-component clamp to [-limit, limit]. Throws std::invalid_argument if limit <= 0.
SaturatedCurrents saturate(const Vec8& currents, double limit);

/// Minimum-norm currents holding the levitator against gravity with zero torque.
Vec8 hover_currents(const FieldModel& model, const LevitatorParams& params, const Mat3& R,
                    const Vec3& p, double gravity = kStandardGravity);

}  // namespace maglev

#endif  // MAGLEV_ALLOCATION_HPP_
