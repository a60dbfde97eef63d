#include "maglev/calibration.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace maglev {

namespace {

constexpr int kParamsPerCoil = 6;  // center 3, axis tangent 2, strength 1
constexpr int kNumParams = kParamsPerCoil * kNumCoils;

using ParamVec = Eigen::Matrix<double, kNumParams, 1>;
using NormalMat = Eigen::Matrix<double, kNumParams, kNumParams>;

// Orthonormal basis of the plane perpendicular to a.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& a) {
  const Vec3 helper = std::abs(a.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 t1 = a.cross(helper).normalized();
  return {t1, a.cross(t1)};
}

Eigen::VectorXd residuals(const FieldModel& model, std::span<const FieldSample> samples) {
  Eigen::VectorXd r(3 * static_cast<Eigen::Index>(samples.size()));
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    r.segment<3>(3 * static_cast<Eigen::Index>(k)) =
        s.measured_field - model.field(s.position, s.coil_currents);
  }
  return r;
}

// Jacobian of the predicted fields with respect to the local parameters.
Eigen::MatrixXd prediction_jacobian(const FieldModel& model,
                                    std::span<const FieldSample> samples) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(3 * static_cast<Eigen::Index>(samples.size()),
                                            kNumParams);
  std::array<Eigen::Matrix<double, 3, 2>, kNumCoils> tangents;
  for (int j = 0; j < kNumCoils; ++j) {
    const auto [t1, t2] = tangent_basis(model.coil(j).axis);
    tangents[static_cast<std::size_t>(j)] << t1, t2;
  }
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    const Eigen::Index row = 3 * static_cast<Eigen::Index>(k);
    for (int j = 0; j < kNumCoils; ++j) {
      const double current = s.coil_currents(j);
      if (current == 0.0) continue;
      const CoilSource& src = model.coil(j);
      const int col = kParamsPerCoil * j;
      // Field depends on the center only through r = p - center.
      J.block<3, 3>(row, col) = -dipole_jacobian(src, s.position, current);
      const Vec3 r = s.position - src.center;
      const double r2 = r.squaredNorm();
      const double k_over_r3 = kMu0Over4Pi * src.strength * current / (r2 * std::sqrt(r2));
      const Mat3 d_axis = k_over_r3 * (3.0 * r * r.transpose() / r2 - Mat3::Identity());
      J.block<3, 2>(row, col + 3) = d_axis * tangents[static_cast<std::size_t>(j)];
      J.block<3, 1>(row, col + 5) = dipole_field(src, s.position, current) / src.strength;
    }
  }
  return J;
}

FieldModel apply_step(const FieldModel& model, const ParamVec& delta) {
  auto coils = model.coils();
  for (int j = 0; j < kNumCoils; ++j) {
    auto& c = coils[static_cast<std::size_t>(j)];
    const auto d = delta.segment<kParamsPerCoil>(kParamsPerCoil * j);
    const auto [t1, t2] = tangent_basis(c.axis);
    c.center += d.head<3>();
    c.axis = (c.axis + d(3) * t1 + d(4) * t2).normalized();
    c.strength += d(5);
    if (!(c.strength > 0.0)) return model;  // caller sees no decrease and rejects
  }
  return FieldModel(coils);
}

void check_preconditions(std::span<const FieldSample> samples, const FieldModel& initial) {
  if (3 * samples.size() < static_cast<std::size_t>(kNumCoils * 7)) {
    throw std::invalid_argument("fit_mpem: need at least 56 scalar residuals, got " +
                                std::to_string(3 * samples.size()));
  }
  for (int a = 0; a < kNumCoils; ++a) {
    for (int b = a + 1; b < kNumCoils; ++b) {
      if ((initial.coil(a).center - initial.coil(b).center).norm() < kSingularityRadius) {
        throw std::invalid_argument("fit_mpem: initial coil centers " + std::to_string(a) +
                                    " and " + std::to_string(b) + " coincide");
      }
    }
  }
  for (const auto& s : samples) {
    if (!s.position.allFinite() || !s.coil_currents.allFinite() ||
        !s.measured_field.allFinite()) {
      throw std::invalid_argument("fit_mpem: non-finite sample");
    }
  }
}

}  // namespace

Eigen::VectorXd predict_fields(const FieldModel& model, std::span<const FieldSample> samples) {
  Eigen::VectorXd out(3 * static_cast<Eigen::Index>(samples.size()));
  for (std::size_t k = 0; k < samples.size(); ++k) {
    out.segment<3>(3 * static_cast<Eigen::Index>(k)) =
        model.field(samples[k].position, samples[k].coil_currents);
  }
  return out;
}

std::vector<FieldSample> synthetic_calibration_data(const FieldModel& model,
                                                    const DatasetOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> current(-options.max_current, options.max_current);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double half = 0.5 * (options.grid - 1) * options.spacing;

  std::vector<FieldSample> samples;
  for (const Vec3& offset : options.placements) {
    for (int ix = 0; ix < options.grid; ++ix) {
      for (int iy = 0; iy < options.grid; ++iy) {
        for (int iz = 0; iz < options.grid; ++iz) {
          const Vec3 p = offset + Vec3(ix * options.spacing - half, iy * options.spacing - half,
                                       iz * options.spacing - half);
          for (int e = 0; e < options.excitations; ++e) {
            FieldSample s;
            s.position = p;
            for (int j = 0; j < kNumCoils; ++j) s.coil_currents(j) = current(rng);
            s.measured_field = model.field(p, s.coil_currents);
            if (options.noise_fraction > 0.0) {
              for (int k = 0; k < 3; ++k) {
                s.measured_field(k) *= 1.0 + options.noise_fraction * noise(rng);
              }
            }
            samples.push_back(s);
          }
        }
      }
    }
  }
  return samples;
}

FitResult fit_mpem(std::span<const FieldSample> samples, const FieldModel& initial_guess,
                   const FitOptions& options) {
  check_preconditions(samples, initial_guess);

  FieldModel model = initial_guess;
  Eigen::VectorXd r = residuals(model, samples);
  double cost = r.squaredNorm();

  FitReport report;
  report.initial_cost = cost;
  double lambda = options.lambda_init;

  while (report.iterations < options.max_iterations) {
    ++report.iterations;
    const Eigen::MatrixXd J = prediction_jacobian(model, samples);
    const NormalMat JtJ = J.transpose() * J;
    const ParamVec Jtr = J.transpose() * r;
    // Floor keeps parameters that no sample excites (zero columns) solvable.
    const ParamVec scale = JtJ.diagonal().cwiseMax(
        1e-12 * std::max(JtJ.diagonal().maxCoeff(), std::numeric_limits<double>::min()));

    bool accepted = false;
    while (lambda <= options.lambda_max) {
      NormalMat H = JtJ;
      H.diagonal() += lambda * scale;
      const ParamVec delta = H.ldlt().solve(Jtr);
      const FieldModel candidate = apply_step(model, delta);
      const Eigen::VectorXd r_new = residuals(candidate, samples);
      const double cost_new = r_new.squaredNorm();
      if (std::isfinite(cost_new) && cost_new < cost) {
        const double decrease = (cost - cost_new) / cost;
        model = candidate;
        r = r_new;
        cost = cost_new;
        lambda = std::max(lambda / options.lambda_factor, 1e-12);
        accepted = true;
        if (decrease < options.relative_cost_tolerance) report.converged = true;
        break;
      }
      lambda *= options.lambda_factor;
    }
    // No damping level reduces the cost: the iterate is a numerical minimum.
    if (!accepted) report.converged = true;
    if (report.converged || cost == 0.0) {
      report.converged = true;
      break;
    }
  }

  const Eigen::MatrixXd J = prediction_jacobian(model, samples);
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(J);
  const auto& sv = svd.singularValues();
  report.jacobian_condition = sv(sv.size() - 1) > 0.0
                                  ? sv(0) / sv(sv.size() - 1)
                                  : std::numeric_limits<double>::infinity();
  report.rank_deficient = report.jacobian_condition > options.condition_warning;
  report.final_cost = cost;
  report.residual_rms = std::sqrt(cost / static_cast<double>(r.size()));
  return {model, report};
}

}  // namespace maglev
