#ifndef MAGLEV_SIM_SENSOR_HPP_
#define MAGLEV_SIM_SENSOR_HPP_

#include <cstdint>
#include <deque>
#include <random>

#include "maglev/types.hpp"

namespace maglev::sim {

struct Pose {
  Vec3 p = Vec3::Zero();
  Mat3 R = Mat3::Identity();
};

/// Motion-capture stand-in: each sample gets additive Gaussian position noise
/// and a small random rotation, then leaves a FIFO delay_ticks samples later.
/// The FIFO starts filled with the first measured pose.
class PoseSensor {
 public:
  PoseSensor(int delay_ticks, double pos_noise_std, double att_noise_std, std::uint64_t seed);

  Pose measure(const Pose& truth);

 private:
  int delay_ticks_;
  double pos_noise_std_;
  double att_noise_std_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::deque<Pose> buffer_;
};

}  // namespace maglev::sim

#endif  // MAGLEV_SIM_SENSOR_HPP_
