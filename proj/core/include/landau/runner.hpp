#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "landau/scenario.hpp"

namespace landau {

enum class RunMode { BasisCheck, Transform, Solve, EstimateStudy };

/// Accepts "basis-check", "transform", "solve", "estimate-study".
std::optional<RunMode> parse_run_mode(std::string_view text);

/// Uniform nx-by-ny sampling of [-extent, extent]^2 for field snapshots.
struct SnapshotGrid {
  int nx = 0;
  int ny = 0;
  double extent = 0.0;
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  int threads = 0;  // 0: hardware concurrency
  std::optional<SnapshotGrid> snapshot;
};

/// Executes one run mode and writes its artifacts into out_dir. Returns the
/// paths written, in write order. Validation failures raise ScenarioError;
/// filesystem failures raise std::runtime_error.
std::vector<std::filesystem::path> run_scenario(RunMode mode,
                                                const ScenarioConfig& config,
                                                const RunOptions& options);

}  // namespace landau
