#include "landau/scenario.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <string_view>

namespace landau {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(s.substr(start)));
      return out;
    }
    out.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
}

double parse_number(std::string_view text, const std::string& field,
                    int line) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() ||
      !std::isfinite(value))
    throw ScenarioError(field, line,
                        field + ": bad number '" + std::string(text) + "'");
  return value;
}

int parse_integer(std::string_view text, const std::string& field, int line) {
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ScenarioError(field, line,
                        field + ": bad integer '" + std::string(text) + "'");
  return value;
}

std::uint32_t parse_index(std::string_view text, const std::string& field,
                          int line) {
  int value = parse_integer(text, field, line);
  if (value < 0)
    throw ScenarioError(field, line, field + ": index must be >= 0");
  return std::uint32_t(value);
}

std::vector<double> parse_number_list(std::string_view text,
                                      const std::string& field, int line) {
  std::vector<double> out;
  for (std::string_view part : split(text, ','))
    out.push_back(parse_number(part, field, line));
  return out;
}

std::vector<double> parse_time_list(std::string_view text,
                                    const std::string& field, int line) {
  if (text.starts_with("linspace:")) {
    auto parts = split(text.substr(9), ',');
    if (parts.size() != 3)
      throw ScenarioError(field, line,
                          field + ": linspace needs start,stop,count");
    double a = parse_number(parts[0], field, line);
    double b = parse_number(parts[1], field, line);
    int n = parse_integer(parts[2], field, line);
    if (n < 2 || b <= a)
      throw ScenarioError(field, line,
                          field + ": linspace needs count >= 2, stop > start");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
      out[i] = a + (b - a) * double(i) / double(n - 1);
    out.back() = b;
    return out;
  }
  std::vector<double> out = parse_number_list(text, field, line);
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1])
      throw ScenarioError(field, line, field + ": times must ascend");
  return out;
}

bool parse_flag(std::string_view text, const std::string& field, int line) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ScenarioError(field, line,
                      field + ": expected true/false, got '" +
                          std::string(text) + "'");
}

void apply_entry(ScenarioConfig& config, std::string_view key,
                 std::string_view value, int line) {
  const std::string field(key);
  if (key == "B") {
    config.field_strength = parse_number(value, field, line);
    if (config.field_strength <= 0.0)
      throw ScenarioError(field, line, "B must be positive");
  } else if (key == "level_cap") {
    config.level_cap = parse_integer(value, field, line);
    if (config.level_cap < 0)
      throw ScenarioError(field, line, "level_cap must be >= 0");
  } else if (key == "angular_cap") {
    config.angular_cap = parse_integer(value, field, line);
    if (config.angular_cap < 0)
      throw ScenarioError(field, line, "angular_cap must be >= 0");
  } else if (key == "profile") {
    config.profile = std::string(value);
  } else if (key == "T") {
    config.horizon = parse_number(value, field, line);
    if (config.horizon <= 0.0)
      throw ScenarioError(field, line, "T must be positive");
  } else if (key == "dt") {
    config.dt = parse_number(value, field, line);
    if (config.dt <= 0.0)
      throw ScenarioError(field, line, "dt must be positive");
  } else if (key == "s") {
    config.sobolev_index = parse_number(value, field, line);
  } else if (key == "u0") {
    config.u0 = std::string(value);
  } else if (key == "u1") {
    config.u1 = std::string(value);
  } else if (key == "output_times") {
    config.output_times = parse_time_list(value, field, line);
  } else if (key == "truncations") {
    config.truncations.clear();
    for (std::string_view part : split(value, ',')) {
      int cap = parse_integer(part, field, line);
      if (cap < 0)
        throw ScenarioError(field, line, "truncations must be >= 0");
      config.truncations.push_back(cap);
    }
    if (config.truncations.empty())
      throw ScenarioError(field, line, "truncations must not be empty");
  } else if (key == "radial_order") {
    config.radial_order = parse_integer(value, field, line);
    if (config.radial_order < 0)
      throw ScenarioError(field, line, "radial_order must be >= 0");
  } else if (key == "angular_count") {
    config.angular_count = parse_integer(value, field, line);
    if (config.angular_count < 0)
      throw ScenarioError(field, line, "angular_count must be >= 0");
  } else if (key == "c_max") {
    config.c_max = parse_number(value, field, line);
    if (config.c_max < 0.0)
      throw ScenarioError(field, line, "c_max must be >= 0");
  } else if (key == "trajectory") {
    config.trajectory = parse_flag(value, field, line);
  } else if (key == "samples") {
    config.samples = std::string(value);
  } else {
    throw ScenarioError(field, line, "unknown key '" + field + "'");
  }
}

}  // namespace

ScenarioConfig parse_scenario(std::istream& in) {
  ScenarioConfig config;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    size_t eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ScenarioError("config", line, "expected key=value");
    apply_entry(config, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line);
  }
  return config;
}

void apply_override(ScenarioConfig& config, const std::string& assignment) {
  std::string_view s = trim(assignment);
  size_t eq = s.find('=');
  if (eq == std::string_view::npos)
    throw ScenarioError("set", 0, "override needs key=value, got '" +
                                      std::string(s) + "'");
  apply_entry(config, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), 0);
}

std::vector<double> resolved_output_times(const ScenarioConfig& config) {
  if (!config.output_times.empty()) {
    if (config.output_times.back() > config.horizon * (1.0 + 1e-12))
      throw ScenarioError("output_times", 0,
                          "output_times exceed the horizon T");
    return config.output_times;
  }
  constexpr int kDefaultCount = 11;
  std::vector<double> out(kDefaultCount);
  for (int i = 0; i < kDefaultCount; ++i)
    out[i] = config.horizon * double(i) / double(kDefaultCount - 1);
  out.back() = config.horizon;
  return out;
}

SpeedProfile make_profile(const ScenarioConfig& config) {
  const std::string field = "profile";
  std::string_view spec = config.profile;
  size_t colon = spec.find(':');
  std::string_view kind = colon == std::string_view::npos
                              ? spec
                              : std::string_view(spec).substr(0, colon);
  std::string_view body =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  try {
    if (kind == "const") {
      auto nums = parse_number_list(body, field, 0);
      if (nums.size() != 1)
        throw ScenarioError(field, 0, "const profile needs 1 number");
      return SpeedProfile::constant(nums[0], config.horizon);
    }
    if (kind == "sine") {
      auto nums = parse_number_list(body, field, 0);
      if (nums.size() != 3)
        throw ScenarioError(field, 0,
                            "sine profile needs 3 numbers (c0,amp,freq), got " +
                                std::to_string(nums.size()));
      return SpeedProfile::sine(nums[0], nums[1], nums[2], config.horizon);
    }
    if (kind == "poly") {
      auto nums = parse_number_list(body, field, 0);
      if (nums.empty())
        throw ScenarioError(field, 0, "poly profile needs coefficients");
      return SpeedProfile::polynomial(std::move(nums), config.horizon);
    }
  } catch (const std::domain_error& e) {
    throw ScenarioError(field, 0, e.what());
  }
  throw ScenarioError(field, 0,
                      "unknown profile kind '" + std::string(kind) + "'");
}

namespace {

struct ModeTerm {
  ModeIndex index;
  cplx value;
};

std::vector<ModeTerm> parse_mode_terms(std::string_view body,
                                       const std::string& field_name) {
  std::vector<ModeTerm> terms;
  for (std::string_view group : split(body, ';')) {
    auto parts = split(group, ',');
    if (parts.size() != 5)
      throw ScenarioError(field_name, 0,
                          field_name +
                              ": each mode term needs family,xi1,xi2,re,im");
    ModeTerm term;
    if (parts[0] == "F1" || parts[0] == "1")
      term.index.family = Family::F1;
    else if (parts[0] == "F2" || parts[0] == "2")
      term.index.family = Family::F2;
    else
      throw ScenarioError(field_name, 0,
                          field_name + ": bad family '" +
                              std::string(parts[0]) + "'");
    term.index.xi1 = parse_index(parts[1], field_name, 0);
    term.index.xi2 = parse_index(parts[2], field_name, 0);
    try {
      validate_index(term.index);
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(field_name, 0, e.what());
    }
    term.value = cplx(parse_number(parts[3], field_name, 0),
                      parse_number(parts[4], field_name, 0));
    terms.push_back(term);
  }
  return terms;
}

}  // namespace

FieldFn make_field(const std::string& spec, const std::string& field_name,
                   FieldStrength field) {
  std::string_view s = trim(spec);
  if (s == "zero") return FieldFn{};
  if (s.starts_with("gaussian:")) {
    auto nums = parse_number_list(s.substr(9), field_name, 0);
    if (nums.size() != 3)
      throw ScenarioError(field_name, 0,
                          field_name + ": gaussian needs x0,y0,width");
    double x0 = nums[0], y0 = nums[1], w = nums[2];
    if (w <= 0.0)
      throw ScenarioError(field_name, 0,
                          field_name + ": gaussian width must be positive");
    return [x0, y0, w](double x, double y) {
      double dx = x - x0, dy = y - y0;
      return cplx(std::exp(-(dx * dx + dy * dy) / (w * w)), 0.0);
    };
  }
  if (s.starts_with("modes:")) {
    auto terms = parse_mode_terms(s.substr(6), field_name);
    struct NormalizedTerm {
      ModeIndex index;
      cplx scaled;
    };
    std::vector<NormalizedTerm> scaled;
    scaled.reserve(terms.size());
    for (const ModeTerm& term : terms)
      scaled.push_back(
          {term.index,
           term.value / std::sqrt(basis_norm_sq(term.index, field))});
    return [scaled = std::move(scaled), field](double x, double y) {
      cplx sum = 0.0;
      for (const NormalizedTerm& term : scaled)
        sum += term.scaled * basis_eval(term.index, x, y, field);
      return sum;
    };
  }
  throw ScenarioError(field_name, 0,
                      field_name + ": unknown initial data '" +
                          std::string(s) + "'");
}

SpectralCoefficients make_initial_data(const std::string& spec,
                                       const std::string& field_name,
                                       std::shared_ptr<const ModeTable> table,
                                       const QuadratureGrid& grid) {
  std::string_view s = trim(spec);
  if (s == "zero") return SpectralCoefficients::zero(std::move(table));
  if (s.starts_with("modes:")) {
    auto terms = parse_mode_terms(s.substr(6), field_name);
    SpectralCoefficients c = SpectralCoefficients::zero(table);
    for (const ModeTerm& term : terms) {
      auto slot = table->find(term.index);
      if (!slot)
        throw ScenarioError(field_name, 0,
                            field_name +
                                ": mode term falls outside the enabled table");
      c.values[*slot] += term.value;
    }
    return c;
  }
  FieldFn f = make_field(spec, field_name, table->field());
  return forward_transform(f, grid, std::move(table));
}

}  // namespace landau
