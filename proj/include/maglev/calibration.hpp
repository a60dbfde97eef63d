#ifndef MAGLEV_CALIBRATION_HPP_
#define MAGLEV_CALIBRATION_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "maglev/field_model.hpp"

namespace maglev {

struct FitOptions {
  int max_iterations = 200;
  // Converged once an accepted step lowers the cost by less than this fraction.
  double relative_cost_tolerance = 1e-12;
  double lambda_init = 1e-3;
  double lambda_factor = 10.0;
  // Give up on damping beyond this; the iterate is then a numerical minimum.
  double lambda_max = 1e16;
  double condition_warning = 1e12;
};

struct FitReport {
  double residual_rms = 0.0;  // T, per scalar residual
  double initial_cost = 0.0;  // T², sum of squared residuals
  double final_cost = 0.0;
  int iterations = 0;
  bool converged = false;
  bool rank_deficient = false;
  double jacobian_condition = 0.0;
};

struct FitResult {
  FieldModel model;
  FitReport report;
};

/// Least-squares fit of all 8 coils' dipole parameters (center, axis,
/// strength) to field measurements, by Levenberg–Marquardt. Axes are updated
/// through a two-parameter tangent-plane step and renormalized.
///
/// Throws std::invalid_argument when there are fewer than 56 scalar
/// residuals or when the initial coil centers are not distinct. A fit that
/// hits the iteration cap returns its best iterate with converged = false.
FitResult fit_mpem(std::span<const FieldSample> samples, const FieldModel& initial_guess,
                   const FitOptions& options = {});

/// Synthetic calibration campaign: a grid x grid x grid sensor cube placed at
/// each offset in `placements`, with `excitations` random current vectors
/// per position and optional multiplicative Gaussian field noise.
struct DatasetOptions {
  int grid = 4;
  double spacing = 0.015;  // m between neighbouring sensors
  std::vector<Vec3> placements = {Vec3(0.0, 0.0, 0.0), Vec3(0.01, 0.0, 0.0),
                                  Vec3(-0.01, 0.0, 0.0), Vec3(0.0, 0.01, 0.0),
                                  Vec3(0.0, -0.01, 0.0)};
  int excitations = 8;
  double max_current = 4.0;     // A
  double noise_fraction = 0.0;  // relative std of each field component
  std::uint64_t seed = 7;
};

std::vector<FieldSample> synthetic_calibration_data(const FieldModel& model,
                                                    const DatasetOptions& options = {});

/// Model prediction for every sample, stacked as (bx, by, bz) triples.
Eigen::VectorXd predict_fields(const FieldModel& model, std::span<const FieldSample> samples);

}  // namespace maglev

#endif  // MAGLEV_CALIBRATION_HPP_
