#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "uppe/field.hpp"

namespace uppe {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes `<dir>/<name>.bin` (interleaved little-endian complex64, row-major
/// with t fastest) and `<dir>/<name>.json`, a sidecar carrying everything
/// needed to reload it: shape, axes, per-axis representation, steps, c.
/// Returns the sidecar path.
std::filesystem::path write_field(const std::filesystem::path& dir, const std::string& name, const Field& f,
                                  const nlohmann::ordered_json& extra = nlohmann::ordered_json::object());

/// Writes one z slice of a field as a field with n_z = 1; the sidecar records
/// the slice's z coordinate.
std::filesystem::path write_z_slice(const std::filesystem::path& dir, const std::string& name, const Field& f,
                                    std::size_t iz);

/// Loaded samples with their sidecar. Values are widened back to double.
struct LoadedField {
  std::array<std::size_t, 4> shape{};
  std::array<double, 4> steps{};
  std::array<Rep, 4> rep{};
  double c = 1.0;
  std::vector<cplx> values;
  nlohmann::ordered_json sidecar;
};

LoadedField read_field(const std::filesystem::path& sidecar);

/// RFC 4180: CRLF line ends, fields quoted when they contain a comma, quote,
/// CR or LF, with embedded quotes doubled.
std::string csv_escape(const std::string& field);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Shortest decimal that round-trips.
std::string format_double(double x);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace uppe
