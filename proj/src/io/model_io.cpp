#include "maglev/io/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace maglev::io {

namespace {

using nlohmann::json;

Vec3 vec3_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ParseError(where + ": expected an array of 3 numbers");
  Vec3 v;
  for (std::size_t k = 0; k < 3; ++k) {
    if (!j[k].is_number()) throw ParseError(where + ": expected an array of 3 numbers");
    v(static_cast<Eigen::Index>(k)) = j[k].get<double>();
  }
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& text, int line, const std::string& column) {
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("line " + std::to_string(line) + ", column " + column +
                     ": not a number: '" + text + "'");
  }
  return value;
}

const std::vector<std::string>& calibration_columns() {
  static const std::vector<std::string> columns = {"px", "py", "pz", "i1", "i2", "i3", "i4",
                                                   "i5", "i6", "i7", "i8", "bx", "by", "bz"};
  return columns;
}

}  // namespace

std::string field_model_to_json(const FieldModel& model, int indent) {
  json coils = json::array();
  for (const auto& c : model.coils()) {
    coils.push_back({{"center", {c.center.x(), c.center.y(), c.center.z()}},
                     {"axis", {c.axis.x(), c.axis.y(), c.axis.z()}},
                     {"strength", c.strength}});
  }
  return json{{"coils", coils}}.dump(indent);
}

FieldModel field_model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("field model: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("coils")) throw ParseError("field model: missing 'coils'");
  for (const auto& [key, value] : doc.items()) {
    if (key != "coils" && key != "comment") throw ParseError("field model: unknown key '" + key + "'");
  }
  const json& coils = doc["coils"];
  if (!coils.is_array() || coils.size() != kNumCoils) {
    throw ParseError("field model: 'coils' must be an array of exactly 8 entries");
  }
  std::array<CoilSource, kNumCoils> sources;
  for (std::size_t j = 0; j < sources.size(); ++j) {
    const std::string where = "coils[" + std::to_string(j) + "]";
    const json& c = coils[j];
    if (!c.is_object()) throw ParseError(where + ": expected an object");
    for (const auto& [key, value] : c.items()) {
      if (key != "center" && key != "axis" && key != "strength") {
        throw ParseError(where + ": unknown key '" + key + "'");
      }
    }
    if (!c.contains("center") || !c.contains("axis") || !c.contains("strength")) {
      throw ParseError(where + ": requires center, axis and strength");
    }
    sources[j].center = vec3_from(c["center"], where + ".center");
    // Tolerate rounding in hand-written files; the model requires unit axes.
    sources[j].axis = vec3_from(c["axis"], where + ".axis").normalized();
    if (!c["strength"].is_number()) throw ParseError(where + ".strength: expected a number");
    sources[j].strength = c["strength"].get<double>();
  }
  try {
    return FieldModel(sources);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("field model: ") + e.what());
  }
}

FieldModel load_field_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open field model '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return field_model_from_json(ss.str());
}

void save_field_model(const FieldModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << field_model_to_json(model) << '\n';
}

std::vector<FieldSample> read_calibration_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("calibration CSV is empty");
  const auto header = split_csv_line(line);
  std::vector<std::size_t> index;
  for (const auto& name : calibration_columns()) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError("calibration CSV: missing column '" + name + "'");
    index.push_back(static_cast<std::size_t>(it - header.begin()));
  }

  std::vector<FieldSample> samples;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    double v[14];
    for (std::size_t c = 0; c < index.size(); ++c) {
      v[c] = parse_number(fields[index[c]], line_no, calibration_columns()[c]);
    }
    FieldSample s;
    s.position = Vec3(v[0], v[1], v[2]);
    for (int j = 0; j < kNumCoils; ++j) s.coil_currents(j) = v[3 + j];
    s.measured_field = Vec3(v[11], v[12], v[13]);
    samples.push_back(s);
  }
  return samples;
}

std::vector<FieldSample> load_calibration_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open calibration data '" + path.string() + "'");
  return read_calibration_csv(in);
}

void write_calibration_csv(std::ostream& out, const std::vector<FieldSample>& samples) {
  const auto& columns = calibration_columns();
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n' << std::setprecision(17);
  for (const auto& s : samples) {
    out << s.position.x() << ',' << s.position.y() << ',' << s.position.z();
    for (int j = 0; j < kNumCoils; ++j) out << ',' << s.coil_currents(j);
    out << ',' << s.measured_field.x() << ',' << s.measured_field.y() << ','
        << s.measured_field.z() << '\n';
  }
}

void save_calibration_csv(const std::vector<FieldSample>& samples,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write_calibration_csv(out, samples);
}

}  // namespace maglev::io
