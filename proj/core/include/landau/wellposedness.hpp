#pragma once

#include <span>
#include <vector>

#include "landau/h_fourier.hpp"
#include "landau/mode_evolution.hpp"
#include "landau/spectral_basis.hpp"

namespace landau {

/// Cauchy data for the variable-speed wave equation in mode space. u0 and u1
/// must share one mode table; output_times ascend within the profile horizon.
struct CauchyProblem {
  SpectralCoefficients u0;
  SpectralCoefficients u1;
  SpeedProfile profile;
  double s = 0.0;  // Sobolev index of the estimate
  std::vector<double> output_times;
};

/// One output time of a solved problem.
struct TimeSlice {
  double t;
  SpectralCoefficients u;   // coefficients of u(t)
  SpectralCoefficients du;  // coefficients of du/dt(t)
  double sobolev_u;         // ||u||_{H^{1+s}}
  double sobolev_du;        // ||du||_{H^s}
  double total_energy;      // sum of per-mode symmetrizer energies
  double ratio;             // R(t); 0 when the initial norm vanishes
};

struct SolutionRecord {
  std::vector<TimeSlice> slices;
  double initial_sq;   // ||u0||^2_{H^{1+s}} + ||u1||^2_{H^s}
  double s;
  SpeedProfile profile;
  double certificate;  // (max(a1,1)/min(a0,1)) exp(c' T)
};

/// Certified bound on sup_t R(t) over the profile horizon.
double certificate_constant(const SpeedProfile& profile);

/// Evolves every mode and assembles norms, energies and the estimate ratio
/// per output time. Throws std::invalid_argument when u0/u1 tables differ or
/// the table is empty. When trajectories_out is non-null it receives the
/// per-mode trajectories in table order.
SolutionRecord solve_cauchy(const CauchyProblem& problem, double dt,
                            std::vector<ModeTrajectory>* trajectories_out =
                                nullptr);

struct EstimateVerdict {
  double sup_ratio;
  double certificate;
  bool pass;
};

/// sup_t R(t) against the record's certificate (or an explicit bound). The
/// comparison carries a 1e-9 relative slack so integrator roundoff cannot
/// flag sharp cases (sup == bound in exact arithmetic) as violations.
EstimateVerdict verify_estimate(const SolutionRecord& record);
EstimateVerdict verify_estimate(const SolutionRecord& record, double c_max);

/// Truncation study: the same closed-form data solved at several level caps.
/// The angular cap follows the level cap; forward transforms use the
/// suggested exact grid per truncation.
struct StudyProblem {
  FieldStrength field;
  FieldFn u0;           // required
  FieldFn u1;           // may be null for zero initial velocity
  SpeedProfile profile;
  double s = 0.0;
  std::vector<double> output_times;
  double dt = 1e-3;
};

struct StudyRow {
  int level_cap;
  double sup_ratio;
  double certificate;
  bool pass;
};

std::vector<StudyRow> constant_stability_study(const StudyProblem& problem,
                                               std::span<const int> truncations);

}  // namespace landau
