#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "landau/spectral_basis.hpp"

namespace landau {

enum class SpeedKind : std::uint8_t { Constant, Polynomial, SinePerturbed };

/// Propagation speed profile a(t) on a horizon [0, T], carrying certified
/// bounds a0 <= a(t) <= a1 and |a'(t)| <= d1. Construction validates strict
/// hyperbolicity (a0 > 0) and throws std::domain_error otherwise. Bounds are
/// closed-form for the constant and sine kinds; polynomial bounds come from
/// dense sampling refined at derivative sign changes.
class SpeedProfile {
 public:
  static SpeedProfile constant(double c, double horizon);
  static SpeedProfile polynomial(std::vector<double> coeffs, double horizon);
  /// c0 + amplitude * sin(frequency * t + phase).
  static SpeedProfile sine(double c0, double amplitude, double frequency,
                           double horizon, double phase = 0.0);

  double operator()(double t) const { return value(t); }
  double value(double t) const;
  double derivative(double t) const;

  double a0() const { return a0_; }
  double a1() const { return a1_; }
  double d1() const { return d1_; }
  double horizon() const { return horizon_; }
  SpeedKind kind() const { return kind_; }

  /// Growth rate c' = d1 / min(a0, 1) of the energy bound.
  double gronwall_rate() const;

  /// Profile traversed backwards: t -> a(T - t) on the same horizon.
  SpeedProfile time_reversed() const;

 private:
  SpeedProfile() = default;

  SpeedKind kind_ = SpeedKind::Constant;
  std::vector<double> coeffs_;          // polynomial kind
  double c0_ = 0, amp_ = 0, freq_ = 0;  // sine kind
  double phase_ = 0;
  double horizon_ = 0;
  double a0_ = 0, a1_ = 0, d1_ = 0;
};

struct SpeedBounds {
  double a0, a1, d1;
};

/// Certified bounds of the profile over its horizon.
SpeedBounds speed_validate(const SpeedProfile& profile);

/// Diagonal symmetrizer S(t) = diag(2 a(t), 2) of the first-order system;
/// S A - A* S vanishes identically.
struct Symmetrizer {
  double s11, s22;
};
Symmetrizer symmetrizer(double t, const SpeedProfile& profile);

/// First-order state of one mode: V1 = i sqrt(lambda) v, V2 = dv/dt.
struct ModeState {
  double t;
  cplx V1, V2;
};

/// Symmetrizer energy E = 2 a(t) |V1|^2 + 2 |V2|^2.
double mode_energy(const ModeState& state, const SpeedProfile& profile);

/// Right side of the Gronwall inequality: E0 * exp(c' t).
double gronwall_bound(double initial_energy, double t,
                      const SpeedProfile& profile);

/// Closed-form solution of v'' + a lambda v = 0 with constant a:
/// returns (v(t), v'(t)) for data (v0, v1).
std::pair<cplx, cplx> mode_solve_const(double lambda, double a, cplx v0,
                                       cplx v1, double t);

struct EnergyRecord {
  double t;
  double energy;
  double bound;
};

struct ModeTrajectory {
  std::vector<ModeState> states;     // one per requested time
  std::vector<EnergyRecord> energy;  // aligned with states
  bool stability_warning = false;    // requested step too coarse
  double dt_effective = 0.0;         // step actually used
};

/// Integrates dV/dt = i sqrt(lambda) A(t) V, A = [[0,1],[a(t),0]], with the
/// classical fourth-order one-step scheme from data (v0, v1) at t = 0,
/// reporting states at the requested times (ascending, within the profile
/// horizon). The step is min(dt, 0.1 / sqrt(a1 * lambda)); a requested dt
/// with dt * sqrt(lambda * a1) > 0.5 sets stability_warning instead of
/// aborting.
ModeTrajectory evolve_mode(double lambda, cplx v0, cplx v1,
                           const SpeedProfile& profile,
                           std::span<const double> times, double dt);

}  // namespace landau
