#include "maglev/io/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "maglev/so3.hpp"

namespace maglev::io {

namespace {

using nlohmann::json;

bool is_annotation(const std::string& key) {
  return key == "comment" || (key.size() > 8 && key.ends_with("_comment"));
}

// Read access to one JSON object that remembers which keys were consumed.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) {
    used_.insert(key);
    return j_.contains(key);
  }

  const json& raw(const std::string& key) {
    if (!has(key)) throw ConfigError("missing required key '" + key_path(key) + "'");
    return j_.at(key);
  }

  Section section(const std::string& key) { return Section(raw(key), key_path(key)); }

  double number(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(key_path(key) + ": expected a number");
    return v.get<double>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError(key_path(key) + ": expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(key_path(key) + ": expected a string");
    return v.get<std::string>();
  }

  Vec3 vec3(const std::string& key, const Vec3& fallback) {
    return has(key) ? vec3_value(j_.at(key), key_path(key)) : fallback;
  }

  static Vec3 vec3_value(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3) throw ConfigError(where + ": expected 3 numbers");
    Vec3 out;
    for (std::size_t k = 0; k < 3; ++k) {
      if (!v[k].is_number()) throw ConfigError(where + ": expected 3 numbers");
      out(static_cast<Eigen::Index>(k)) = v[k].get<double>();
    }
    return out;
  }

  // [a, b] is diag(a, b); [[a, b], [c, d]] is a full matrix.
  Mat2 mat2(const std::string& key, const Mat2& fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    const std::string where = key_path(key);
    auto num = [&](const json& x) {
      if (!x.is_number()) throw ConfigError(where + ": expected numbers");
      return x.get<double>();
    };
    if (v.is_array() && v.size() == 2 && v[0].is_number()) {
      return Vec2(num(v[0]), num(v[1])).asDiagonal();
    }
    if (v.is_array() && v.size() == 2 && v[0].is_array() && v[1].is_array() &&
        v[0].size() == 2 && v[1].size() == 2) {
      Mat2 m;
      m << num(v[0][0]), num(v[0][1]), num(v[1][0]), num(v[1][1]);
      return m;
    }
    throw ConfigError(where + ": expected [a, b] or [[a, b], [c, d]]");
  }

  /// Throws on any key that was never looked up.
  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!used_.contains(key) && !is_annotation(key)) {
        throw ConfigError("unknown key '" + key_path(key) + "'");
      }
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

FieldModel parse_field_model(const json& j, const std::filesystem::path& base_dir) {
  if (j.is_string()) {
    if (j.get<std::string>() != "default") {
      throw ConfigError("field_model: expected \"default\", an object with 'coils', 'path' or 'layout'");
    }
    return default_field_model();
  }
  Section s(j, "field_model");
  const int choices = static_cast<int>(j.contains("coils")) + static_cast<int>(j.contains("path")) +
                      static_cast<int>(j.contains("layout"));
  if (choices != 1) {
    throw ConfigError("field_model: give exactly one of 'coils', 'path' or 'layout'");
  }
  FieldModel model = default_field_model();
  if (s.has("coils")) {
    try {
      model = field_model_from_json(json{{"coils", s.raw("coils")}}.dump());
    } catch (const ParseError& e) {
      throw ConfigError(std::string("field_model.") + e.what());
    }
  } else if (s.has("path")) {
    std::filesystem::path path = s.string("path");
    if (path.is_relative()) path = base_dir / path;
    try {
      model = load_field_model(path);
    } catch (const ParseError& e) {
      throw ConfigError(std::string("field_model.path: ") + e.what());
    }
  } else {
    if (s.string("layout") != "default") {
      throw ConfigError("field_model.layout: only \"default\" is available");
    }
    model = default_field_model(s.number("strength", kDefaultCoilStrength));
  }
  s.finish();
  return model;
}

LevitatorParams parse_levitator(Section s) {
  LevitatorParams p = reference_levitator();
  p.mass = s.number("mass", p.mass);
  p.inertia = s.vec3("inertia", p.inertia);
  p.current_limit = s.number("current_limit", p.current_limit);
  const int dipole_choices = static_cast<int>(s.has("dipole_body")) +
                             static_cast<int>(s.has("dipole_strength")) +
                             static_cast<int>(s.has("remanence"));
  if (dipole_choices > 1) {
    throw ConfigError("levitator: give at most one of dipole_body, dipole_strength, remanence");
  }
  if (s.has("dipole_body")) {
    p.dipole_body = s.vec3("dipole_body", p.dipole_body);
  } else if (s.has("dipole_strength")) {
    p.dipole_body = Vec3(0.0, 0.0, -s.number("dipole_strength"));
  } else if (s.has("remanence")) {
    const double volume = s.number("magnet_volume", kReferenceMagnetVolume);
    p.dipole_body = Vec3(0.0, 0.0, -dipole_strength(s.number("remanence"), volume));
  }
  if (s.has("magnet_volume") && !s.has("remanence")) {
    throw ConfigError("levitator.magnet_volume requires levitator.remanence");
  }
  s.finish();
  p.validate();
  return p;
}

void parse_gains(Section s, sim::ControllerGains& g, const LevitatorParams& lev) {
  g.attitude.integral_torque_limit = default_attitude_integral_limit(lev);
  if (s.has("attitude")) {
    Section a = s.section("attitude");
    g.attitude.Kd = a.mat2("Kd", g.attitude.Kd);
    g.attitude.kp = a.number("kp", g.attitude.kp);
    g.attitude.ki = a.number("ki", g.attitude.ki);
    g.attitude.integral_torque_limit =
        a.number("integral_torque_limit", g.attitude.integral_torque_limit);
    a.finish();
  }
  if (s.has("translation")) {
    Section t = s.section("translation");
    if (t.has("Q")) {
      Section q = t.section("Q");
      g.Q[0] = q.mat2("x", g.Q[0]);
      g.Q[1] = q.mat2("y", g.Q[1]);
      g.Q[2] = q.mat2("z", g.Q[2]);
      q.finish();
    }
    g.rho = t.number("rho", g.rho);
    g.xi = t.number("xi", g.xi);
    g.velocity_factor = t.number("velocity_factor", g.velocity_factor);
    g.input_factor = t.number("input_factor", g.input_factor);
    g.design_period = t.number("design_period", g.design_period);
    if (t.has("ki")) {
      const json& ki = t.raw("ki");
      g.ki = ki.is_number() ? Vec3::Constant(ki.get<double>())
                            : Section::vec3_value(ki, t.key_path("ki"));
    }
    t.finish();
  }
  g.integrators = s.boolean("integrators", g.integrators);
  s.finish();
}

void parse_sim(Section s, sim::SimConfig& c) {
  c.controller_period = s.number("Ts", c.controller_period);
  c.physics_step = s.number("physics_step", c.physics_step);
  c.duration = s.number("duration", c.duration);
  c.corner_frequency = s.number("fc", c.corner_frequency);
  c.loop_delay = s.number("delay", c.loop_delay);
  if (s.has("noise")) {
    Section n = s.section("noise");
    c.pos_noise_std = n.number("position", c.pos_noise_std);
    c.att_noise_std = n.number("attitude", c.att_noise_std);
    n.finish();
  }
  if (s.has("seed")) {
    const json& seed = s.raw("seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
      throw ConfigError("sim.seed: expected a non-negative integer");
    }
    c.seed = seed.get<std::uint64_t>();
  }
  c.gravity = s.number("gravity", c.gravity);
  c.disturbance_force = s.vec3("disturbance_force", c.disturbance_force);
  c.divergence_position = s.number("divergence_position", c.divergence_position);
  c.divergence_rate = s.number("divergence_rate", c.divergence_rate);
  c.start_at_hover_currents = s.boolean("start_at_hover_currents", c.start_at_hover_currents);
  s.finish();
}

sim::TrajectorySpec parse_trajectory(Section s) {
  sim::TrajectorySpec t;
  t.kind = sim::parse_trajectory_kind(s.string("kind"));
  t.center = s.vec3("center", t.center);
  t.amplitude_x = s.number("amplitude_x", t.amplitude_x);
  t.amplitude_y = s.number("amplitude_y", t.amplitude_y);
  t.period = s.number("period", t.period);
  if (!(t.period > 0.0)) throw ConfigError("trajectory.period must be positive");
  const double hold = s.number("hold", 2.0);
  if (t.kind == sim::TrajectoryKind::kAttitudeSteps) t.attitude_steps = sim::default_attitude_steps(hold);
  if (s.has("steps")) {
    const json& steps = s.raw("steps");
    if (!steps.is_array()) throw ConfigError("trajectory.steps: expected an array");
    t.attitude_steps.clear();
    for (std::size_t k = 0; k < steps.size(); ++k) {
      Section step(steps[k], "trajectory.steps[" + std::to_string(k) + "]");
      if (t.kind == sim::TrajectoryKind::kPositionSteps) {
        t.position_steps.push_back({step.number("t"), step.vec3("position", t.center)});
      } else if (t.kind == sim::TrajectoryKind::kAttitudeSteps) {
        t.attitude_steps.push_back(
            {step.number("t"), step.number("roll", 0.0), step.number("pitch", 0.0)});
      } else {
        throw ConfigError("trajectory.steps: only used by attitude_steps and position_steps");
      }
      step.finish();
    }
  }
  s.finish();
  return t;
}

RigidBodyState parse_initial_state(Section s) {
  RigidBodyState st;
  st.p = s.vec3("position", st.p);
  st.v = s.vec3("velocity", st.v);
  const Vec3 rpy = s.vec3("roll_pitch_yaw", Vec3::Zero());
  st.R = so3::from_euler_xyz(rpy.x(), rpy.y(), rpy.z());
  st.omega_body = s.vec3("omega", st.omega_body);
  s.finish();
  return st;
}

}  // namespace

sim::SimConfig parse_scenario(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  Section root(doc, "");
  sim::SimConfig c;
  c.field_model = parse_field_model(root.raw("field_model"), base_dir);
  c.levitator = parse_levitator(root.section("levitator"));
  parse_gains(root.section("gains"), c.gains, c.levitator);
  parse_sim(root.section("sim"), c);
  c.trajectory = parse_trajectory(root.section("trajectory"));
  if (root.has("initial_state")) {
    c.initial_state = parse_initial_state(root.section("initial_state"));
  } else {
    c.initial_state.p = sim::trajectory(0.0, c.trajectory).p_des;
  }
  root.finish();
  c.validate();
  return c;
}

sim::SimConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.parent_path());
}

}  // namespace maglev::io
