#ifndef MAGLEV_IO_SCENARIO_HPP_
#define MAGLEV_IO_SCENARIO_HPP_

#include <filesystem>
#include <string>

#include "maglev/io/model_io.hpp"
#include "maglev/sim/closed_loop.hpp"

namespace maglev::io {

/// Builds a SimConfig from a scenario document with the sections
/// field_model, levitator, gains, sim and trajectory (plus an optional
/// initial_state). Unknown keys are rejected; keys named "comment" or
/// ending in "_comment" are annotations and ignored. Relative model paths
/// resolve against base_dir.
///
/// Throws ParseError for malformed JSON and ConfigError for schema
/// violations; both name the offending key or location.
sim::SimConfig parse_scenario(const std::string& text, const std::filesystem::path& base_dir = {});
sim::SimConfig load_scenario(const std::filesystem::path& path);

}  // namespace maglev::io

#endif  // MAGLEV_IO_SCENARIO_HPP_
