// Command-line front end: simulate, calibrate, design-lqr, analyze-stiffness,
// make-dataset.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maglev/allocation.hpp"
#include "maglev/calibration.hpp"
#include "maglev/io/model_io.hpp"
#include "maglev/io/scenario.hpp"
#include "maglev/io/sim_log_io.hpp"
#include "maglev/sim/closed_loop.hpp"
#include "maglev/sim/stiffness.hpp"
#include "maglev/so3.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace maglev;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitSolver = 3;

json vec_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

fs::path with_suffix(const fs::path& path, const std::string& suffix) {
  fs::path p = path;
  p.replace_filename(path.stem().string() + suffix);
  return p;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string scenario;
  std::string out = "sim_log.csv";
  int seeds = 1;
  bool quiet = false;
};

void print_summary(const sim::SimSummary& s, const sim::SimLog& log, std::uint64_t seed) {
  std::printf("seed %llu: %d ticks, position RMS (%.3e, %.3e, %.3e) m, attitude RMS %.3e rad, "
              "max |i| %.3f A, saturated %.1f%%%s\n",
              static_cast<unsigned long long>(seed), s.ticks, s.position_rms.x(),
              s.position_rms.y(), s.position_rms.z(), s.attitude_rms, s.max_abs_current,
              100.0 * s.saturation_fraction,
              log.diverged ? (", DIVERGED: " + log.divergence_reason).c_str() : "");
}

int cmd_simulate(const SimulateArgs& args) {
  sim::SimConfig base;
  try {
    base = io::load_scenario(args.scenario);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  const int n = std::max(1, args.seeds);
  const fs::path out = args.out;
  if (out.has_parent_path()) fs::create_directories(out.parent_path());

  std::vector<sim::SimLog> logs(static_cast<std::size_t>(n));
  std::vector<std::string> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < n; k = next++) {
      sim::SimConfig c = base;
      c.seed = base.seed + static_cast<std::uint64_t>(k);
      try {
        logs[static_cast<std::size_t>(k)] = sim::run_closed_loop(c);
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(k)] = e.what();
      }
    }
  };
  const int workers =
      std::min(n, std::max(1, static_cast<int>(std::thread::hardware_concurrency())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& e : errors) {
    if (!e.empty()) {
      std::cerr << "error: " << e << '\n';
      return kExitConfig;
    }
  }

  bool any_diverged = false;
  json runs = json::array();
  for (int k = 0; k < n; ++k) {
    const sim::SimLog& log = logs[static_cast<std::size_t>(k)];
    const std::uint64_t seed = base.seed + static_cast<std::uint64_t>(k);
    const fs::path csv = n == 1 ? out : with_suffix(out, "_seed" + std::to_string(seed) + ".csv");
    io::save_sim_log_csv(log, csv);
    const sim::SimSummary s = sim::summarize(log);
    json summary = json::parse(io::summary_to_json(s, log));
    summary["seed"] = seed;
    summary["log"] = csv.filename().string();
    runs.push_back(summary);
    any_diverged = any_diverged || log.diverged;
    if (!args.quiet) print_summary(s, log, seed);
  }
  const json doc = n == 1 ? runs[0] : json{{"runs", runs}};
  write_text(with_suffix(out, ".summary.json"), doc.dump(2) + "\n");
  const fs::path script = out.parent_path() / "plot_log.py";
  write_text(script, io::plot_script());
  if (!args.quiet) {
    std::printf("wrote %s, %s and %s\n", out.string().c_str(),
                with_suffix(out, ".summary.json").string().c_str(), script.string().c_str());
  }
  if (any_diverged) {
    std::cerr << "simulation diverged\n";
    return kExitDiverged;
  }
  return kExitOk;
}

// --------------------------------------------------------------- calibrate

struct CalibrateArgs {
  std::string data;
  std::string init;
  std::string out = "fitted_model.json";
  int holdout_every = 5;
  bool quiet = false;
};

int cmd_calibrate(const CalibrateArgs& args) {
  std::vector<FieldSample> samples;
  FieldModel initial = default_field_model();
  try {
    samples = io::load_calibration_csv(args.data);
    if (!args.init.empty()) initial = io::load_field_model(args.init);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  // Every holdout_every-th sample is kept out of the fit for validation.
  std::vector<FieldSample> train, held_out;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const bool hold = args.holdout_every > 1 &&
                      k % static_cast<std::size_t>(args.holdout_every) ==
                          static_cast<std::size_t>(args.holdout_every) - 1;
    (hold ? held_out : train).push_back(samples[k]);
  }

  FitResult fit{initial, {}};
  try {
    fit = fit_mpem(train, initial);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  io::save_field_model(fit.model, args.out);

  json report = {
      {"samples", samples.size()},
      {"train_samples", train.size()},
      {"held_out_samples", held_out.size()},
      {"residual_rms", fit.report.residual_rms},
      {"initial_cost", fit.report.initial_cost},
      {"final_cost", fit.report.final_cost},
      {"iterations", fit.report.iterations},
      {"converged", fit.report.converged},
      {"rank_deficient", fit.report.rank_deficient},
      {"jacobian_condition", fit.report.jacobian_condition},
  };
  if (!held_out.empty()) {
    const Eigen::VectorXd predicted = predict_fields(fit.model, held_out);
    double err = 0.0, mag = 0.0;
    for (std::size_t k = 0; k < held_out.size(); ++k) {
      const Vec3 b = held_out[k].measured_field;
      err += (predicted.segment<3>(3 * static_cast<Eigen::Index>(k)) - b).squaredNorm();
      mag += b.squaredNorm();
    }
    report["held_out_rms_error"] = std::sqrt(err / (3.0 * held_out.size()));
    report["held_out_relative_error"] = mag > 0.0 ? std::sqrt(err / mag) : 0.0;
  }
  json coils = json::array();
  for (const auto& c : fit.model.coils()) {
    coils.push_back({{"center", vec_json(c.center)},
                     {"axis", vec_json(c.axis)},
                     {"strength", c.strength}});
  }
  report["coils"] = coils;
  const fs::path report_path = with_suffix(args.out, ".report.json");
  write_text(report_path, report.dump(2) + "\n");

  if (!args.quiet) {
    std::printf("fit: %d iterations, residual RMS %.3e T, %s\n", fit.report.iterations,
                fit.report.residual_rms, fit.report.converged ? "converged" : "NOT converged");
    if (report.contains("held_out_relative_error")) {
      std::printf("held-out error: %.3e T RMS (%.3f%% of field)\n",
                  report["held_out_rms_error"].get<double>(),
                  100.0 * report["held_out_relative_error"].get<double>());
    }
    if (fit.report.rank_deficient) {
      std::printf("warning: Jacobian condition number %.3e; parameters poorly determined\n",
                  fit.report.jacobian_condition);
    }
    std::printf("wrote %s and %s\n", args.out.c_str(), report_path.string().c_str());
  }
  return fit.report.converged ? kExitOk : kExitSolver;
}

// ------------------------------------------------------------ make-dataset

struct DatasetArgs {
  std::string model;
  std::string out = "calibration.csv";
  double noise = 0.0;
  std::uint64_t seed = 7;
  int excitations = 8;
};

int cmd_make_dataset(const DatasetArgs& args) {
  FieldModel model = default_field_model();
  try {
    if (!args.model.empty()) model = io::load_field_model(args.model);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  DatasetOptions opts;
  opts.noise_fraction = args.noise;
  opts.seed = args.seed;
  opts.excitations = args.excitations;
  const auto samples = synthetic_calibration_data(model, opts);
  io::save_calibration_csv(samples, args.out);
  std::printf("wrote %zu samples to %s\n", samples.size(), args.out.c_str());
  return kExitOk;
}

// -------------------------------------------------------------- design-lqr

int cmd_design_lqr(const std::string& scenario) {
  sim::SimConfig c;
  try {
    c = io::load_scenario(scenario);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  const auto& g = c.gains;
  const double period = g.design_period > 0.0 ? g.design_period : c.controller_period;
  const AxisModel model = discretize_axis(c.levitator.mass, period);
  const Normalization n =
      nominal_normalization(c.levitator.mass, g.xi, g.velocity_factor, g.input_factor);
  std::printf("mass %.4g kg, Ts %.4g s, xi %.4g m, Tx = diag(%.4g, %.4g), Tu = %.4g\n",
              c.levitator.mass, period, g.xi, n.Tx(0, 0), n.Tx(1, 1), n.Tu);
  bool all_stable = true;
  const char* names[] = {"x", "y", "z"};
  for (std::size_t axis = 0; axis < 3; ++axis) {
    LqrDesign d;
    try {
      d = design_axis_lqr(model, g.Q[axis], g.rho, n);
    } catch (const DareError& e) {
      std::cerr << "error: axis " << names[axis] << ": " << e.what() << '\n';
      return kExitSolver;
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: axis " << names[axis] << ": " << e.what() << '\n';
      return kExitConfig;
    }
    const bool stable = d.spectral_radius < 1.0;
    all_stable = all_stable && stable;
    std::printf(
        "%s: Q = diag(%g, %g), rho = %g\n"
        "   K = [%.6g N/m, %.6g N s/m]\n"
        "   closed-loop eigenvalues %.6f%+.6fi, %.6f%+.6fi (spectral radius %.6f, %s)\n"
        "   DARE residual %.3e\n",
        names[axis], d.Q(0, 0), d.Q(1, 1), d.rho, d.K(0), d.K(1),
        d.closed_loop_eigenvalues[0].real(), d.closed_loop_eigenvalues[0].imag(),
        d.closed_loop_eigenvalues[1].real(), d.closed_loop_eigenvalues[1].imag(),
        d.spectral_radius, stable ? "stable" : "NOT stable", d.dare_residual);
  }
  if (!all_stable) std::printf("warning: not every axis design is Schur stable\n");
  return kExitOk;
}

// ------------------------------------------------------- analyze-stiffness

int cmd_analyze_stiffness(const std::string& scenario, const std::vector<double>& pose) {
  sim::SimConfig c;
  try {
    c = io::load_scenario(scenario);
    if (!pose.empty() && pose.size() != 3 && pose.size() != 6) {
      throw ConfigError("--pose takes x y z [roll pitch yaw]");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  Vec3 p = c.trajectory.center;
  Mat3 R = Mat3::Identity();
  if (pose.size() >= 3) p = Vec3(pose[0], pose[1], pose[2]);
  if (pose.size() == 6) R = so3::from_euler_xyz(pose[3], pose[4], pose[5]);

  Vec8 currents;
  sim::StiffnessReport r;
  try {
    currents = hover_currents(c.field_model, c.levitator, R, p, c.gravity);
    r = sim::stiffness_analysis(c.field_model, c.levitator, R, p, currents, c.gravity);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  const Vec3 rpy = so3::to_euler_xyz(R);
  std::printf("pose p = (%g, %g, %g) m, roll/pitch/yaw = (%g, %g, %g) rad\n", p.x(), p.y(),
              p.z(), rpy.x(), rpy.y(), rpy.z());
  std::printf("hover currents [A]:");
  for (int j = 0; j < kNumCoils; ++j) std::printf(" %.4f", currents(j));
  std::printf("\n");
  if (currents.cwiseAbs().maxCoeff() > c.levitator.current_limit) {
    std::printf("warning: hover exceeds the %.3g A current limit\n", c.levitator.current_limit);
  }
  std::printf("force residual %.3e N\n", r.force_residual);
  std::printf("K_s [N/m]:\n");
  for (int i = 0; i < 3; ++i) {
    std::printf("  % .6e % .6e % .6e\n", r.K(i, 0), r.K(i, 1), r.K(i, 2));
  }
  std::printf("trace(K_s) = %.3e N/m\n", r.K.trace());
  std::printf("eigenvalues [N/m]: %.6e %.6e %.6e\n", r.eigenvalues(0), r.eigenvalues(1),
              r.eigenvalues(2));
  std::printf("most unstable stiffness %.6e N/m along (%.4f, %.4f, %.4f)\n", r.k_max,
              r.eigenvectors(0, 2), r.eigenvectors(1, 2), r.eigenvectors(2, 2));
  if (r.divergence_time_constant) {
    std::printf("divergence time constant %.6e s\n", *r.divergence_time_constant);
  } else {
    std::printf("no unstable direction\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magnetic levitation simulation and design tools"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run a closed-loop simulation");
  simulate->add_option("--scenario", sim_args.scenario, "Scenario JSON")->required();
  simulate->add_option("--out", sim_args.out, "CSV log path");
  simulate->add_option("--seeds", sim_args.seeds, "Number of independent seeds")
      ->check(CLI::PositiveNumber);
  simulate->add_flag("--quiet", sim_args.quiet, "Suppress the summary");

  CalibrateArgs cal_args;
  auto* calibrate = app.add_subcommand("calibrate", "Fit the coil model to field data");
  calibrate->add_option("--data", cal_args.data, "Calibration CSV")->required();
  calibrate->add_option("--init", cal_args.init, "Initial model JSON (default layout if omitted)");
  calibrate->add_option("--out", cal_args.out, "Fitted model JSON");
  calibrate->add_option("--holdout-every", cal_args.holdout_every,
                        "Hold out every n-th sample for validation (1 disables)")
      ->check(CLI::PositiveNumber);
  calibrate->add_flag("--quiet", cal_args.quiet, "Suppress the report");

  DatasetArgs data_args;
  auto* dataset = app.add_subcommand("make-dataset", "Write a synthetic calibration CSV");
  dataset->add_option("--model", data_args.model, "Generating model JSON (default layout)");
  dataset->add_option("--out", data_args.out, "CSV path");
  dataset->add_option("--noise", data_args.noise, "Relative field noise")
      ->check(CLI::NonNegativeNumber);
  dataset->add_option("--seed", data_args.seed, "Random seed");
  dataset->add_option("--excitations", data_args.excitations, "Current vectors per position")
      ->check(CLI::PositiveNumber);

  std::string lqr_scenario;
  auto* design = app.add_subcommand("design-lqr", "Print the translational LQR designs");
  design->add_option("--scenario", lqr_scenario, "Scenario JSON")->required();

  std::string stiffness_scenario;
  std::vector<double> pose;
  auto* stiffness = app.add_subcommand("analyze-stiffness", "Open-loop stiffness at a hover pose");
  stiffness->add_option("--scenario", stiffness_scenario, "Scenario JSON")->required();
  stiffness->add_option("--pose", pose, "x y z [roll pitch yaw] (default: trajectory center)")
      ->expected(3, 6);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(sim_args);
    if (*calibrate) return cmd_calibrate(cal_args);
    if (*dataset) return cmd_make_dataset(data_args);
    if (*design) return cmd_design_lqr(lqr_scenario);
    if (*stiffness) return cmd_analyze_stiffness(stiffness_scenario, pose);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
