// Batch front end: parses a scenario config, dispatches one run mode, and
// writes all artifacts under --out-dir. Any validation failure prints a
// single-line JSON error to stderr and exits nonzero.

#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "landau/runner.hpp"

namespace {

int fail(const std::string& field, int line, const std::string& message) {
  // Keep the diagnostic on one line so batch drivers can parse it.
  std::string clean = message;
  for (char& c : clean)
    if (c == '\n' || c == '"') c = ' ';
  std::cerr << "{\"error\":{\"field\":\"" << field << "\",\"line\":" << line
            << ",\"message\":\"" << clean << "\"}}" << std::endl;
  return 2;
}

bool parse_snapshot_spec(const std::string& text, landau::SnapshotGrid& grid) {
  const char* p = text.data();
  const char* end = p + text.size();
  auto r1 = std::from_chars(p, end, grid.nx);
  if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ',') return false;
  auto r2 = std::from_chars(r1.ptr + 1, end, grid.ny);
  if (r2.ec != std::errc{} || r2.ptr == end || *r2.ptr != ',') return false;
  auto r3 = std::from_chars(r2.ptr + 1, end, grid.extent);
  return r3.ec == std::errc{} && r3.ptr == end;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Landau eigenbasis wave solver"};

  std::string mode_text;
  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;
  std::string snapshot_spec;
  std::vector<std::string> overrides;

  app.add_option("--mode", mode_text,
                 "basis-check | transform | solve | estimate-study")
      ->required();
  app.add_option("--config", config_path, "scenario file of key=value lines");
  app.add_option("--out-dir", out_dir, "directory for output artifacts");
  app.add_option("--threads", threads, "worker cap, 0 = hardware");
  app.add_option("--snapshot-grid", snapshot_spec,
                 "nx,ny,extent field snapshots per output time (solve mode)");
  app.add_option("--set", overrides, "key=value override, repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    return fail("cli", 0, e.what());
  }

  try {
    auto mode = landau::parse_run_mode(mode_text);
    if (!mode)
      return fail("mode", 0, "unknown mode '" + mode_text + "'");

    landau::ScenarioConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in)
        return fail("config", 0, "cannot read config file " + config_path);
      config = landau::parse_scenario(in);
    }
    for (const std::string& assignment : overrides)
      landau::apply_override(config, assignment);

    landau::RunOptions options;
    options.out_dir = out_dir;
    options.threads = threads;
    if (!snapshot_spec.empty()) {
      landau::SnapshotGrid grid;
      if (!parse_snapshot_spec(snapshot_spec, grid))
        return fail("snapshot-grid", 0,
                    "expected nx,ny,extent, got '" + snapshot_spec + "'");
      options.snapshot = grid;
    }

    auto written = landau::run_scenario(*mode, config, options);
    for (const auto& path : written)
      std::cout << "wrote " << path.string() << '\n';
    return 0;
  } catch (const landau::ScenarioError& e) {
    return fail(e.field(), e.line(), e.what());
  } catch (const std::exception& e) {
    return fail("runtime", 0, e.what());
  }
}
