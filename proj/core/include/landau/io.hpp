#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "landau/h_fourier.hpp"
#include "landau/mode_evolution.hpp"
#include "landau/wellposedness.hpp"

namespace landau {

/// Resolved configuration embedded into every output file, either as
/// "# key=value" comment lines (CSV) or a "config" object (JSON).
using Provenance = std::vector<std::pair<std::string, std::string>>;

/// Shortest decimal form that parses back to the same 64-bit float.
std::string format_double(double v);

void write_provenance(std::ostream& out, const Provenance& config);

void write_coefficients_csv(std::ostream& out, const SpectralCoefficients& c,
                            const Provenance& config);

struct CoefficientRow {
  ModeIndex index;
  cplx value;
};
/// Parses rows written by write_coefficients_csv; '#' lines and the column
/// header are skipped. Throws std::runtime_error with a line number on
/// malformed input.
std::vector<CoefficientRow> read_coefficient_rows_csv(std::istream& in);

/// Places rows onto the table; every row must name a table mode and the row
/// count must match the table size.
SpectralCoefficients assemble_coefficients(
    std::span<const CoefficientRow> rows,
    std::shared_ptr<const ModeTable> table);

/// JSON document with the field strength and caps embedded, so the table can
/// be rebuilt on read.
void write_coefficients_json(std::ostream& out, const SpectralCoefficients& c,
                             const Provenance& config);
SpectralCoefficients read_coefficients_json(std::istream& in);

struct FieldSample {
  double x, y;
  cplx value;
};
void write_field_samples_csv(std::ostream& out,
                             std::span<const FieldSample> samples,
                             const Provenance& config);
std::vector<FieldSample> read_field_samples_csv(std::istream& in);

void write_solution_csv(std::ostream& out, const SolutionRecord& record,
                        const Provenance& config);
void write_solution_json(std::ostream& out, const SolutionRecord& record,
                         const EstimateVerdict& verdict,
                         const Provenance& config);

/// Per-mode trajectories, time-major: one row per (time, mode).
void write_trajectory_csv(std::ostream& out, const ModeTable& table,
                          std::span<const ModeTrajectory> trajectories,
                          const Provenance& config);

void write_study_csv(std::ostream& out, std::span<const StudyRow> rows,
                     const Provenance& config);
void write_study_json(std::ostream& out, std::span<const StudyRow> rows,
                      const Provenance& config);

}  // namespace landau
