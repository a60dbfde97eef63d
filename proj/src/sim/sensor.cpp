#include "maglev/sim/sensor.hpp"

#include "maglev/so3.hpp"

namespace maglev::sim {

PoseSensor::PoseSensor(int delay_ticks, double pos_noise_std, double att_noise_std,
                       std::uint64_t seed)
    : delay_ticks_(delay_ticks),
      pos_noise_std_(pos_noise_std),
      att_noise_std_(att_noise_std),
      rng_(seed) {}

Pose PoseSensor::measure(const Pose& truth) {
  Pose noisy = truth;
  if (pos_noise_std_ > 0.0) {
    for (int k = 0; k < 3; ++k) noisy.p(k) += pos_noise_std_ * normal_(rng_);
  }
  if (att_noise_std_ > 0.0) {
    Vec3 phi;
    for (int k = 0; k < 3; ++k) phi(k) = att_noise_std_ * normal_(rng_);
    noisy.R = truth.R * so3::exp(phi);
  }
  if (buffer_.empty()) buffer_.assign(static_cast<std::size_t>(delay_ticks_), noisy);
  buffer_.push_back(noisy);
  const Pose out = buffer_.front();
  buffer_.pop_front();
  return out;
}

}  // namespace maglev::sim
