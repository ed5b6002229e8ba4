#pragma once

#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "landau/h_fourier.hpp"
#include "landau/mode_evolution.hpp"

namespace landau {

/// Configuration or input validation failure. `field` names the offending
/// key; `line` is the 1-based config file line, or 0 when the value did not
/// come from a file.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, int line, const std::string& message)
      : std::runtime_error(message), field_(std::move(field)), line_(line) {}
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

/// Flat key=value scenario description. String-valued entries (profile, u0,
/// u1) keep their raw spelling here and are materialized by the make_*
/// helpers below, so overrides stay cheap and order-independent.
struct ScenarioConfig {
  double field_strength = 1.0;   // key: B
  int level_cap = 8;             // key: level_cap
  int angular_cap = 8;           // key: angular_cap
  std::string profile = "const:1.0";
  double horizon = 1.0;          // key: T
  double dt = 1e-3;
  double sobolev_index = 0.0;    // key: s
  std::string u0 = "zero";
  std::string u1 = "zero";
  std::vector<double> output_times;  // empty: 11 evenly spaced over [0, T]
  std::vector<int> truncations = {4, 8, 16};
  int radial_order = 0;    // 0: derived from the caps
  int angular_count = 0;   // 0: derived from the caps
  double c_max = 0.0;      // 0: certificate from the profile bounds
  bool trajectory = false;
  std::string samples;     // CSV path overriding u0 for transform runs
};

/// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
/// Unknown keys and malformed values raise ScenarioError with the line number.
ScenarioConfig parse_scenario(std::istream& in);

/// Applies one "key=value" override (same grammar as a config line, line
/// number reported as 0).
void apply_override(ScenarioConfig& config, const std::string& assignment);

/// Resolved output times: the explicit list, or the default spacing.
std::vector<double> resolved_output_times(const ScenarioConfig& config);

/// Builds the propagation speed from the profile string:
///   const:<c>   sine:<c0>,<amp>,<freq>   poly:<c0>,<c1>,...
SpeedProfile make_profile(const ScenarioConfig& config);

/// Closed-form field for an initial-data spec; "zero" yields a null function.
///   gaussian:<x0>,<y0>,<width>
///   modes:<family>,<xi1>,<xi2>,<re>,<im>[;...]
FieldFn make_field(const std::string& spec, const std::string& field_name,
                   FieldStrength field);

/// Coefficients for an initial-data spec on the given table. "modes:" entries
/// are placed directly; "gaussian:" is projected through the grid.
SpectralCoefficients make_initial_data(const std::string& spec,
                                       const std::string& field_name,
                                       std::shared_ptr<const ModeTable> table,
                                       const QuadratureGrid& grid);

}  // namespace landau
