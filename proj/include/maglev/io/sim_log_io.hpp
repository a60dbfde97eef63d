#ifndef MAGLEV_IO_SIM_LOG_IO_HPP_
#define MAGLEV_IO_SIM_LOG_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "maglev/sim/closed_loop.hpp"

namespace maglev::io {

/// CSV header of the simulation log.
std::string sim_log_header();

/// One row per controller tick. i1..i8 are the current setpoints sent to
/// the drivers; sat_flags is a bit mask with bit j set when coil j+1 was
/// clamped.
void write_sim_log_csv(std::ostream& out, const sim::SimLog& log);
void save_sim_log_csv(const sim::SimLog& log, const std::filesystem::path& path);

std::string summary_to_json(const sim::SimSummary& summary, const sim::SimLog& log);

/// Matplotlib script plotting any log written by save_sim_log_csv.
std::string plot_script();

}  // namespace maglev::io

#endif  // MAGLEV_IO_SIM_LOG_IO_HPP_
