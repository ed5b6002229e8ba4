#include "landau/runner.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "landau/io.hpp"
#include "landau/parallel.hpp"
#include "landau/wellposedness.hpp"

namespace landau {

namespace {

using nlohmann::json;

const char* mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::BasisCheck: return "basis-check";
    case RunMode::Transform: return "transform";
    case RunMode::Solve: return "solve";
    case RunMode::EstimateStudy: return "estimate-study";
  }
  return "?";
}

std::string join_doubles(std::span<const double> values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

std::string join_ints(std::span<const int> values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

/// The full resolved configuration, embedded into every artifact.
Provenance resolved_provenance(RunMode mode, const ScenarioConfig& c,
                               std::span<const double> times, int radial_order,
                               int angular_count) {
  Provenance p;
  p.emplace_back("mode", mode_name(mode));
  p.emplace_back("B", format_double(c.field_strength));
  p.emplace_back("level_cap", std::to_string(c.level_cap));
  p.emplace_back("angular_cap", std::to_string(c.angular_cap));
  p.emplace_back("profile", c.profile);
  p.emplace_back("T", format_double(c.horizon));
  p.emplace_back("dt", format_double(c.dt));
  p.emplace_back("s", format_double(c.sobolev_index));
  p.emplace_back("u0", c.u0);
  p.emplace_back("u1", c.u1);
  p.emplace_back("output_times", join_doubles(times));
  p.emplace_back("truncations", join_ints(c.truncations));
  p.emplace_back("radial_order", std::to_string(radial_order));
  p.emplace_back("angular_count", std::to_string(angular_count));
  p.emplace_back("c_max", format_double(c.c_max));
  p.emplace_back("trajectory", c.trajectory ? "true" : "false");
  p.emplace_back("samples", c.samples);
  return p;
}

json config_object(const Provenance& config) {
  json obj = json::object();
  for (const auto& [key, value] : config) obj[key] = value;
  return obj;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open output file " + path.string());
  return out;
}

std::shared_ptr<const ModeTable> build_table(const ScenarioConfig& c) {
  return std::make_shared<const ModeTable>(enumerate_modes(
      c.level_cap, c.angular_cap, FieldStrength(c.field_strength)));
}

int resolved_radial_order(const ScenarioConfig& c) {
  return c.radial_order > 0
             ? c.radial_order
             : suggested_radial_order(c.level_cap, c.angular_cap);
}

int resolved_angular_count(const ScenarioConfig& c) {
  return c.angular_count > 0
             ? c.angular_count
             : suggested_angular_count(c.level_cap, c.angular_cap);
}

/// Deterministic generator for the eigenrelation sample points.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
};

double quadrature_l2(const QuadratureGrid& grid, std::span<const cplx> g) {
  std::vector<cplx> sq(g.size());
  for (size_t i = 0; i < g.size(); ++i) sq[i] = std::norm(g[i]);
  double value = grid.integrate(sq).real();
  return value > 0.0 ? std::sqrt(value) : 0.0;
}

std::vector<std::filesystem::path> run_basis_check(
    const ScenarioConfig& config, const RunOptions& options) {
  auto table = build_table(config);
  QuadratureGrid grid =
      QuadratureGrid::build(table->field(), resolved_radial_order(config),
                            resolved_angular_count(config));
  const size_t n = table->size();

  double max_offdiag = 0.0;
  double max_diag_dev = 0.0;
  for (size_t a = 0; a < n; ++a) {
    const ModeRecord& rec = (*table)[a];
    const ModeIndex idx = rec.index;
    const FieldStrength field = table->field();
    const double scale = 1.0 / std::sqrt(rec.norm_sq);
    SpectralCoefficients row = forward_transform(
        [idx, field, scale](double x, double y) {
          return scale * basis_eval(idx, x, y, field);
        },
        grid, table);
    for (size_t b = 0; b < n; ++b) {
      if (b == a)
        max_diag_dev = std::max(max_diag_dev, std::abs(row.values[b] - 1.0));
      else
        max_offdiag = std::max(max_offdiag, std::abs(row.values[b]));
    }
  }

  // Residual of the eigenrelation at pseudo-random points of the disk
  // r <= 4 / sqrt(B), normalized by 1 + |kernel|.
  const FieldStrength field = table->field();
  const double radius = 4.0 / std::sqrt(field.B);
  SplitMix64 rng{0x1db5a1c3290fa2e7ULL};
  double max_residual = 0.0;
  constexpr int kPoints = 200;
  for (int p = 0; p < kPoints; ++p) {
    const double r = radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * M_PI * rng.uniform();
    const double x = r * std::cos(theta), y = r * std::sin(theta);
    for (size_t a = 0; a < n; ++a) {
      const ModeRecord& rec = (*table)[a];
      const cplx e = basis_eval(rec.index, x, y, field);
      const cplx h = hamiltonian_apply_exact(rec.index, x, y, field);
      const double resid =
          std::abs(h - rec.eigenvalue * e) / (1.0 + std::abs(e));
      max_residual = std::max(max_residual, resid);
    }
  }

  Provenance prov = resolved_provenance(RunMode::BasisCheck, config, {},
                                        grid.radial_order(),
                                        grid.angular_count());
  json doc;
  doc["gram_max_offdiag"] = max_offdiag;
  doc["gram_max_diag_dev"] = max_diag_dev;
  doc["eigen_max_residual"] = max_residual;
  doc["mode_count"] = n;
  doc["config"] = config_object(prov);

  std::filesystem::path path = options.out_dir / "basis_check.json";
  open_output(path) << doc.dump(2) << '\n';
  return {path};
}

std::vector<std::filesystem::path> run_transform(const ScenarioConfig& config,
                                                 const RunOptions& options) {
  auto table = build_table(config);
  QuadratureGrid grid =
      QuadratureGrid::build(table->field(), resolved_radial_order(config),
                            resolved_angular_count(config));
  const auto points = grid.points();

  std::vector<cplx> samples(points.size(), cplx(0.0));
  if (!config.samples.empty()) {
    std::ifstream in(config.samples);
    if (!in)
      throw ScenarioError("samples", 0,
                          "cannot read samples file " + config.samples);
    std::vector<FieldSample> rows;
    try {
      rows = read_field_samples_csv(in);
    } catch (const std::runtime_error& e) {
      throw ScenarioError("samples", 0, e.what());
    }
    if (rows.size() != points.size())
      throw ScenarioError("samples", 0,
                          "samples file has " + std::to_string(rows.size()) +
                              " rows, grid has " +
                              std::to_string(points.size()) + " points");
    for (size_t i = 0; i < rows.size(); ++i) {
      const double tol_x = 1e-9 * (1.0 + std::abs(points[i].x));
      const double tol_y = 1e-9 * (1.0 + std::abs(points[i].y));
      if (std::abs(rows[i].x - points[i].x) > tol_x ||
          std::abs(rows[i].y - points[i].y) > tol_y)
        throw ScenarioError("samples", int(i) + 1,
                            "sample coordinates do not match the grid");
      samples[i] = rows[i].value;
    }
  } else if (config.u0.starts_with("modes:")) {
    SpectralCoefficients direct =
        make_initial_data(config.u0, "u0", table, grid);
    samples = inverse_transform(direct, points);
  } else {
    FieldFn f = make_field(config.u0, "u0", table->field());
    if (f)
      for (size_t i = 0; i < points.size(); ++i)
        samples[i] = f(points[i].x, points[i].y);
  }

  SpectralCoefficients coeffs = forward_transform(samples, grid, table);
  std::vector<cplx> recon = inverse_transform(coeffs, points);

  std::vector<cplx> diff(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) diff[i] = recon[i] - samples[i];
  const double norm_f = quadrature_l2(grid, samples);
  const double norm_diff = quadrature_l2(grid, diff);
  const double round_trip = norm_f == 0.0 ? 0.0 : norm_diff / norm_f;
  const double pl = plancherel_norm(coeffs);
  const double parseval =
      std::abs(pl * pl - norm_f * norm_f) / (1.0 + norm_f * norm_f);

  Provenance prov = resolved_provenance(RunMode::Transform, config, {},
                                        grid.radial_order(),
                                        grid.angular_count());
  std::vector<std::filesystem::path> written;

  std::filesystem::path csv_path = options.out_dir / "coefficients.csv";
  {
    auto out = open_output(csv_path);
    write_coefficients_csv(out, coeffs, prov);
  }
  written.push_back(csv_path);

  std::filesystem::path json_path = options.out_dir / "coefficients.json";
  {
    auto out = open_output(json_path);
    write_coefficients_json(out, coeffs, prov);
  }
  written.push_back(json_path);

  json doc;
  doc["round_trip_rel_l2"] = round_trip;
  doc["parseval_mismatch"] = parseval;
  doc["field_l2"] = norm_f;
  doc["plancherel"] = pl;
  if (auto decay = decay_diagnostic(coeffs))
    doc["decay"] = json{{"slope", decay->slope},
                        {"max_residual", decay->max_residual},
                        {"levels_used", decay->levels_used}};
  else
    doc["decay"] = nullptr;
  doc["mode_count"] = table->size();
  doc["config"] = config_object(prov);

  std::filesystem::path summary_path = options.out_dir / "transform.json";
  open_output(summary_path) << doc.dump(2) << '\n';
  written.push_back(summary_path);
  return written;
}

std::vector<std::filesystem::path> run_solve(const ScenarioConfig& config,
                                             const RunOptions& options) {
  auto table = build_table(config);
  QuadratureGrid grid =
      QuadratureGrid::build(table->field(), resolved_radial_order(config),
                            resolved_angular_count(config));

  CauchyProblem problem{
      .u0 = make_initial_data(config.u0, "u0", table, grid),
      .u1 = make_initial_data(config.u1, "u1", table, grid),
      .profile = make_profile(config),
      .s = config.sobolev_index,
      .output_times = resolved_output_times(config)};

  std::vector<ModeTrajectory> trajectories;
  SolutionRecord record =
      solve_cauchy(problem, config.dt,
                   config.trajectory ? &trajectories : nullptr);
  EstimateVerdict verdict = config.c_max > 0.0
                                ? verify_estimate(record, config.c_max)
                                : verify_estimate(record);

  Provenance prov = resolved_provenance(RunMode::Solve, config,
                                        problem.output_times,
                                        grid.radial_order(),
                                        grid.angular_count());
  std::vector<std::filesystem::path> written;

  std::filesystem::path csv_path = options.out_dir / "solution.csv";
  {
    auto out = open_output(csv_path);
    write_solution_csv(out, record, prov);
  }
  written.push_back(csv_path);

  std::filesystem::path json_path = options.out_dir / "solution.json";
  {
    auto out = open_output(json_path);
    write_solution_json(out, record, verdict, prov);
  }
  written.push_back(json_path);

  if (config.trajectory) {
    std::filesystem::path traj_path = options.out_dir / "trajectory.csv";
    auto out = open_output(traj_path);
    write_trajectory_csv(out, *table, trajectories, prov);
    written.push_back(traj_path);
  }

  if (options.snapshot) {
    const SnapshotGrid& snap = *options.snapshot;
    std::vector<GridPoint> pts;
    pts.reserve(size_t(snap.nx) * size_t(snap.ny));
    for (int iy = 0; iy < snap.ny; ++iy) {
      const double y = snap.ny == 1 ? 0.0
                                    : -snap.extent + 2.0 * snap.extent *
                                                         double(iy) /
                                                         double(snap.ny - 1);
      for (int ix = 0; ix < snap.nx; ++ix) {
        const double x = snap.nx == 1
                             ? 0.0
                             : -snap.extent + 2.0 * snap.extent * double(ix) /
                                                  double(snap.nx - 1);
        pts.push_back({x, y});
      }
    }
    for (size_t k = 0; k < record.slices.size(); ++k) {
      std::vector<cplx> values = inverse_transform(record.slices[k].u, pts);
      std::vector<FieldSample> rows(pts.size());
      for (size_t i = 0; i < pts.size(); ++i)
        rows[i] = {pts[i].x, pts[i].y, values[i]};
      Provenance snap_prov = prov;
      snap_prov.emplace_back("snapshot_time",
                             format_double(record.slices[k].t));
      std::ostringstream name;
      name << "snapshot_" << k << ".csv";
      std::filesystem::path snap_path = options.out_dir / name.str();
      auto out = open_output(snap_path);
      write_field_samples_csv(out, rows, snap_prov);
      written.push_back(snap_path);
    }
  }
  return written;
}

std::vector<std::filesystem::path> run_study(const ScenarioConfig& config,
                                             const RunOptions& options) {
  const FieldStrength field(config.field_strength);
  FieldFn u0 = make_field(config.u0, "u0", field);
  if (!u0)
    throw ScenarioError("u0", 0,
                        "estimate-study needs closed-form nonzero u0 data");
  FieldFn u1 = make_field(config.u1, "u1", field);

  StudyProblem problem{.field = field,
                       .u0 = std::move(u0),
                       .u1 = std::move(u1),
                       .profile = make_profile(config),
                       .s = config.sobolev_index,
                       .output_times = resolved_output_times(config),
                       .dt = config.dt};
  std::vector<StudyRow> rows =
      constant_stability_study(problem, config.truncations);

  Provenance prov = resolved_provenance(RunMode::EstimateStudy, config,
                                        problem.output_times, 0, 0);
  std::vector<std::filesystem::path> written;

  std::filesystem::path csv_path = options.out_dir / "study.csv";
  {
    auto out = open_output(csv_path);
    write_study_csv(out, rows, prov);
  }
  written.push_back(csv_path);

  std::filesystem::path json_path = options.out_dir / "study.json";
  {
    auto out = open_output(json_path);
    write_study_json(out, rows, prov);
  }
  written.push_back(json_path);
  return written;
}

}  // namespace

std::optional<RunMode> parse_run_mode(std::string_view text) {
  if (text == "basis-check") return RunMode::BasisCheck;
  if (text == "transform") return RunMode::Transform;
  if (text == "solve") return RunMode::Solve;
  if (text == "estimate-study") return RunMode::EstimateStudy;
  return std::nullopt;
}

std::vector<std::filesystem::path> run_scenario(RunMode mode,
                                                const ScenarioConfig& config,
                                                const RunOptions& options) {
  if (options.threads < 0)
    throw ScenarioError("threads", 0, "threads must be >= 0");
  if (options.snapshot) {
    if (options.snapshot->nx < 1 || options.snapshot->ny < 1 ||
        !(options.snapshot->extent > 0.0))
      throw ScenarioError("snapshot-grid", 0,
                          "snapshot grid needs nx >= 1, ny >= 1, extent > 0");
  }
  set_max_threads(options.threads);
  std::filesystem::create_directories(options.out_dir);
  switch (mode) {
    case RunMode::BasisCheck: return run_basis_check(config, options);
    case RunMode::Transform: return run_transform(config, options);
    case RunMode::Solve: return run_solve(config, options);
    case RunMode::EstimateStudy: return run_study(config, options);
  }
  throw std::logic_error("unreachable run mode");
}

}  // namespace landau
