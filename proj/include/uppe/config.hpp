#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uppe/green.hpp"
#include "uppe/propagator.hpp"

namespace uppe {

enum class Experiment { fundamental, paraxial, theorem1, theorem2, propagate, causality, checks };

const char* to_string(Experiment e);
std::optional<Experiment> experiment_from_string(std::string_view s);

enum class Route { march, convolution };

const char* to_string(Route r);

/// Parse or validation failure; `line` is 0 when no single line is at fault.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::fundamental;
  std::uint64_t seed = 20240607;
  int threads = 0;  ///< 0 = OpenMP default

  GridSpec grid;

  double sigma_r = 0.0;
  double sigma_t = 0.0;
  double epsilon = 0.0;
  BranchPolicy branch = BranchPolicy::evanescent_decay;

  SourceSpec source;

  Route route = Route::march;
  std::size_t substeps = 1;
  ConvolutionMode mode = ConvolutionMode::linear;
  ZRule rule = ZRule::linear_source;
  std::vector<double> z_slices;  ///< empty = every slice

  std::string out_dir;  ///< empty = not set in the file
  bool write_fields = true;
  bool write_csv = true;

  GreenSpec green_spec() const;
  PropagatorSpec propagator_spec() const;
};

/// Flat key = value lines, `[section]` headers, `#` comments. Sections: top
/// level (experiment, seed, threads), [grid], [green], [source], [propagate],
/// [output]. Missing widths default to two steps and ε to 1e−6·dω/c.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// The effective configuration in the input format; parses back to itself.
std::string echo_config(const ExperimentConfig& c);

}  // namespace uppe
