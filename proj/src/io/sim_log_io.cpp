#include "maglev/io/sim_log_io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include <Eigen/Geometry>
#include <json.hpp>

#include "maglev/so3.hpp"

namespace maglev::io {

std::string sim_log_header() {
  std::string h =
      "t,px,py,pz,vx,vy,vz,qw,qx,qy,qz,roll,pitch,yaw,wx,wy,wz,px_des,py_des,pz_des,"
      "gx_des,gy_des,gz_des,tau_x,tau_y,fx,fy,fz";
  for (int j = 1; j <= kNumCoils; ++j) h += ",i" + std::to_string(j);
  return h + ",sat_flags";
}

void write_sim_log_csv(std::ostream& out, const sim::SimLog& log) {
  out << sim_log_header() << '\n' << std::setprecision(17);
  for (const auto& row : log.rows) {
    const auto& s = row.truth;
    Eigen::Quaterniond q(s.R);
    if (q.w() < 0.0) q.coeffs() = -q.coeffs();
    const Vec3 rpy = so3::to_euler_xyz(s.R);
    auto put = [&out](const auto& v) {
      for (Eigen::Index k = 0; k < v.size(); ++k) out << ',' << v(k);
    };
    out << row.t;
    put(s.p);
    put(s.v);
    out << ',' << q.w() << ',' << q.x() << ',' << q.y() << ',' << q.z();
    put(rpy);
    put(s.omega_body);
    put(row.setpoint.p_des);
    put(row.setpoint.gamma_des);
    put(row.wrench_cmd.torque_xy);
    put(row.wrench_cmd.force);
    put(row.i_cmd);
    out << ',' << row.sat_mask << '\n';
  }
}

void save_sim_log_csv(const sim::SimLog& log, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write_sim_log_csv(out, log);
}

std::string summary_to_json(const sim::SimSummary& summary, const sim::SimLog& log) {
  using nlohmann::json;
  json gains = json::array();
  for (const auto& d : log.designs) gains.push_back({d.K(0), d.K(1)});
  json doc = {
      {"position_rms", {summary.position_rms.x(), summary.position_rms.y(),
                        summary.position_rms.z()}},
      {"attitude_rms", summary.attitude_rms},
      {"max_abs_current", summary.max_abs_current},
      {"saturation_fraction", summary.saturation_fraction},
      {"ticks", summary.ticks},
      {"diverged", summary.diverged},
      {"allocation_failures", log.allocation_failures},
      {"lqr_gains", gains},
  };
  if (log.diverged) {
    doc["divergence_time"] = log.divergence_time;
    doc["divergence_reason"] = log.divergence_reason;
  }
  return doc.dump(2);
}

std::string plot_script() {
  return R"PY(#!/usr/bin/env python3
"""Plot a levitation log: python3 plot_log.py run.csv [out.png]"""
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

log = np.genfromtxt(sys.argv[1], delimiter=",", names=True)
t = log["t"]
fig, ax = plt.subplots(4, 1, sharex=True, figsize=(9, 10))
for k in "xyz":
    line, = ax[0].plot(t, 1e3 * log["p" + k], label=k)
    ax[0].plot(t, 1e3 * log["p" + k + "_des"], "--", color=line.get_color())
ax[0].set_ylabel("position [mm]")
for k in ("roll", "pitch", "yaw"):
    ax[1].plot(t, np.degrees(log[k]), label=k)
ax[1].set_ylabel("angle [deg]")
for k in "xyz":
    ax[2].plot(t, log["f" + k], label="f" + k)
ax[2].set_ylabel("force cmd [N]")
for j in range(1, 9):
    ax[3].plot(t, log["i%d" % j], label="i%d" % j)
ax[3].set_ylabel("current [A]")
ax[3].set_xlabel("t [s]")
for a in ax:
    a.grid(True)
    a.legend(loc="upper right", fontsize="small", ncol=4)
fig.tight_layout()
fig.savefig(sys.argv[2] if len(sys.argv) > 2 else sys.argv[1].rsplit(".", 1)[0] + ".png")
)PY";
}

}  // namespace maglev::io
