#ifndef MAGLEV_IO_MODEL_IO_HPP_
#define MAGLEV_IO_MODEL_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "maglev/field_model.hpp"

namespace maglev::io {

/// Parse failures in any input file; the message names the offending item.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"coils":[{"center":[x,y,z],"axis":[x,y,z],"strength":s}, ...8]}.
std::string field_model_to_json(const FieldModel& model, int indent = 2);
FieldModel field_model_from_json(const std::string& text);
FieldModel load_field_model(const std::filesystem::path& path);
void save_field_model(const FieldModel& model, const std::filesystem::path& path);

/// Calibration data, header px,py,pz,i1,...,i8,bx,by,bz (columns matched by name).
std::vector<FieldSample> read_calibration_csv(std::istream& in);
std::vector<FieldSample> load_calibration_csv(const std::filesystem::path& path);
void write_calibration_csv(std::ostream& out, const std::vector<FieldSample>& samples);
void save_calibration_csv(const std::vector<FieldSample>& samples,
                          const std::filesystem::path& path);

}  // namespace maglev::io

#endif  // MAGLEV_IO_MODEL_IO_HPP_
