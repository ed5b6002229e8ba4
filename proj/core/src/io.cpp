#include "landau/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace landau {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

[[noreturn]] void fail_line(int line, const std::string& message) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + message);
}

double parse_double_field(std::string_view field, int line) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    fail_line(line, "bad number '" + std::string(field) + "'");
  return value;
}

std::uint32_t parse_uint_field(std::string_view field, int line) {
  std::uint32_t value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    fail_line(line, "bad index '" + std::string(field) + "'");
  return value;
}

Family parse_family_field(std::string_view field, int line) {
  if (field == "F1" || field == "1") return Family::F1;
  if (field == "F2" || field == "2") return Family::F2;
  fail_line(line, "bad family '" + std::string(field) + "'");
}

const char* family_name(Family f) { return f == Family::F1 ? "F1" : "F2"; }

json config_object(const Provenance& config) {
  json obj = json::object();
  for (const auto& [key, value] : config) obj[key] = value;
  return obj;
}

json mode_index_json(const ModeIndex& m) {
  return json{{"family", family_name(m.family)},
              {"xi1", m.xi1},
              {"xi2", m.xi2}};
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

void write_provenance(std::ostream& out, const Provenance& config) {
  for (const auto& [key, value] : config) out << "# " << key << '=' << value << '\n';
}

void write_coefficients_csv(std::ostream& out, const SpectralCoefficients& c,
                            const Provenance& config) {
  if (!c.table) throw std::invalid_argument("coefficients have no mode table");
  write_provenance(out, config);
  out << "family,xi1,xi2,re,im\n";
  const ModeTable& table = *c.table;
  for (size_t i = 0; i < table.size(); ++i) {
    const ModeIndex& m = table[i].index;
    out << family_name(m.family) << ',' << m.xi1 << ',' << m.xi2 << ','
        << format_double(c.values[i].real()) << ','
        << format_double(c.values[i].imag()) << '\n';
  }
}

std::vector<CoefficientRow> read_coefficient_rows_csv(std::istream& in) {
  std::vector<CoefficientRow> rows;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    if (s.starts_with("family")) continue;
    auto fields = split_fields(s);
    if (fields.size() != 5) fail_line(line, "expected 5 fields");
    CoefficientRow row;
    row.index.family = parse_family_field(fields[0], line);
    row.index.xi1 = parse_uint_field(fields[1], line);
    row.index.xi2 = parse_uint_field(fields[2], line);
    row.value = cplx(parse_double_field(fields[3], line),
                     parse_double_field(fields[4], line));
    rows.push_back(row);
  }
  return rows;
}

SpectralCoefficients assemble_coefficients(
    std::span<const CoefficientRow> rows,
    std::shared_ptr<const ModeTable> table) {
  if (!table) throw std::invalid_argument("null mode table");
  if (rows.size() != table->size())
    throw std::runtime_error("coefficient row count " +
                             std::to_string(rows.size()) +
                             " does not match table size " +
                             std::to_string(table->size()));
  SpectralCoefficients c = SpectralCoefficients::zero(table);
  std::vector<char> seen(table->size(), 0);
  for (const CoefficientRow& row : rows) {
    auto slot = table->find(row.index);
    if (!slot)
      throw std::runtime_error("coefficient row names a mode outside the table");
    if (seen[*slot])
      throw std::runtime_error("duplicate coefficient row");
    seen[*slot] = 1;
    c.values[*slot] = row.value;
  }
  return c;
}

void write_coefficients_json(std::ostream& out, const SpectralCoefficients& c,
                             const Provenance& config) {
  if (!c.table) throw std::invalid_argument("coefficients have no mode table");
  json doc;
  doc["field_strength"] = c.table->field().B;
  doc["level_cap"] = c.table->level_cap();
  doc["angular_cap"] = c.table->angular_cap();
  json modes = json::array();
  const ModeTable& records = *c.table;
  for (size_t i = 0; i < records.size(); ++i) {
    json entry = mode_index_json(records[i].index);
    entry["re"] = c.values[i].real();
    entry["im"] = c.values[i].imag();
    modes.push_back(std::move(entry));
  }
  doc["modes"] = std::move(modes);
  doc["config"] = config_object(config);
  out << doc.dump(2) << '\n';
}

SpectralCoefficients read_coefficients_json(std::istream& in) {
  json doc = json::parse(in);
  FieldStrength field(doc.at("field_strength").get<double>());
  int level_cap = doc.at("level_cap").get<int>();
  int angular_cap = doc.at("angular_cap").get<int>();
  auto table = std::make_shared<const ModeTable>(
      enumerate_modes(level_cap, angular_cap, field));
  std::vector<CoefficientRow> rows;
  for (const json& entry : doc.at("modes")) {
    CoefficientRow row;
    std::string fam = entry.at("family").get<std::string>();
    row.index.family = parse_family_field(fam, 0);
    row.index.xi1 = entry.at("xi1").get<std::uint32_t>();
    row.index.xi2 = entry.at("xi2").get<std::uint32_t>();
    row.value = cplx(entry.at("re").get<double>(), entry.at("im").get<double>());
    rows.push_back(row);
  }
  return assemble_coefficients(rows, table);
}

void write_field_samples_csv(std::ostream& out,
                             std::span<const FieldSample> samples,
                             const Provenance& config) {
  write_provenance(out, config);
  out << "x,y,re,im\n";
  for (const FieldSample& s : samples)
    out << format_double(s.x) << ',' << format_double(s.y) << ','
        << format_double(s.value.real()) << ','
        << format_double(s.value.imag()) << '\n';
}

std::vector<FieldSample> read_field_samples_csv(std::istream& in) {
  std::vector<FieldSample> samples;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    if (s.starts_with("x,")) continue;
    auto fields = split_fields(s);
    if (fields.size() != 4) fail_line(line, "expected 4 fields");
    FieldSample sample;
    sample.x = parse_double_field(fields[0], line);
    sample.y = parse_double_field(fields[1], line);
    sample.value = cplx(parse_double_field(fields[2], line),
                        parse_double_field(fields[3], line));
    samples.push_back(sample);
  }
  return samples;
}

void write_solution_csv(std::ostream& out, const SolutionRecord& record,
                        const Provenance& config) {
  write_provenance(out, config);
  out << "t,sobolev_u,sobolev_du,total_energy,ratio,certificate\n";
  for (const TimeSlice& slice : record.slices)
    out << format_double(slice.t) << ',' << format_double(slice.sobolev_u)
        << ',' << format_double(slice.sobolev_du) << ','
        << format_double(slice.total_energy) << ','
        << format_double(slice.ratio) << ','
        << format_double(record.certificate) << '\n';
}

void write_solution_json(std::ostream& out, const SolutionRecord& record,
                         const EstimateVerdict& verdict,
                         const Provenance& config) {
  json doc;
  doc["sup_ratio"] = verdict.sup_ratio;
  doc["certificate"] = verdict.certificate;
  doc["pass"] = verdict.pass;
  doc["initial_sq"] = record.initial_sq;
  doc["sobolev_index"] = record.s;
  json times = json::array();
  for (const TimeSlice& slice : record.slices) times.push_back(slice.t);
  doc["output_times"] = std::move(times);
  doc["config"] = config_object(config);
  out << doc.dump(2) << '\n';
}

void write_trajectory_csv(std::ostream& out, const ModeTable& table,
                          std::span<const ModeTrajectory> trajectories,
                          const Provenance& config) {
  if (trajectories.size() != table.size())
    throw std::invalid_argument("trajectory count does not match table size");
  write_provenance(out, config);
  out << "t,family,xi1,xi2,re_v,im_v,re_dv,im_dv,energy,bound\n";
  const size_t n_times =
      trajectories.empty() ? 0 : trajectories.front().states.size();
  for (size_t ti = 0; ti < n_times; ++ti) {
    for (size_t mi = 0; mi < trajectories.size(); ++mi) {
      const ModeTrajectory& traj = trajectories[mi];
      if (traj.states.size() != n_times)
        throw std::invalid_argument("trajectories disagree on output times");
      const ModeState& state = traj.states[ti];
      const EnergyRecord& energy = traj.energy[ti];
      const ModeIndex& m = table[mi].index;
      const double root = std::sqrt(table[mi].eigenvalue);
      const cplx v = state.V1 / cplx(0.0, root);
      out << format_double(state.t) << ',' << family_name(m.family) << ','
          << m.xi1 << ',' << m.xi2 << ',' << format_double(v.real()) << ','
          << format_double(v.imag()) << ',' << format_double(state.V2.real())
          << ',' << format_double(state.V2.imag()) << ','
          << format_double(energy.energy) << ','
          << format_double(energy.bound) << '\n';
    }
  }
}

void write_study_csv(std::ostream& out, std::span<const StudyRow> rows,
                     const Provenance& config) {
  write_provenance(out, config);
  out << "level_cap,sup_ratio,certificate,pass\n";
  for (const StudyRow& row : rows)
    out << row.level_cap << ',' << format_double(row.sup_ratio) << ','
        << format_double(row.certificate) << ','
        << (row.pass ? "true" : "false") << '\n';
}

void write_study_json(std::ostream& out, std::span<const StudyRow> rows,
                      const Provenance& config) {
  json doc;
  json arr = json::array();
  for (const StudyRow& row : rows)
    arr.push_back(json{{"level_cap", row.level_cap},
                       {"sup_ratio", row.sup_ratio},
                       {"certificate", row.certificate},
                       {"pass", row.pass}});
  doc["rows"] = std::move(arr);
  doc["config"] = config_object(config);
  out << doc.dump(2) << '\n';
}

}  // namespace landau
