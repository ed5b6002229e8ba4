#include "landau/mode_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace landau {

namespace {

constexpr double kPi = std::numbers::pi;

double poly_eval(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
  return v;
}

std::vector<double> poly_derive(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * double(i));
  if (d.empty()) d.push_back(0.0);
  return d;
}

// Sign-change roots of f on [0, T], located on a dense grid and sharpened by
// bisection. Plateau values are covered separately by the grid samples.
std::vector<double> sign_change_roots(const std::vector<double>& f, double T) {
  constexpr int kSamples = 4096;
  std::vector<double> roots;
  double prev_t = 0.0, prev_v = poly_eval(f, 0.0);
  for (int i = 1; i <= kSamples; ++i) {
    double t = T * double(i) / kSamples;
    double v = poly_eval(f, t);
    if (prev_v == 0.0) {
      roots.push_back(prev_t);
    } else if ((prev_v < 0.0) != (v < 0.0) && v != 0.0) {
      double lo = prev_t, hi = t, flo = prev_v;
      for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(T, 1.0); ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = poly_eval(f, mid);
        if (fm == 0.0) {
          lo = hi = mid;
        } else if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_t = t;
    prev_v = v;
  }
  if (prev_v == 0.0) roots.push_back(prev_t);
  return roots;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::invalid_argument(std::string(what) + " must be finite");
}

void require_hyperbolic(double a0) {
  if (a0 <= 0.0)
    throw std::domain_error(
        "strict hyperbolicity violated: min a(t) = " + std::to_string(a0) +
        " <= 0 on the horizon");
}

}  // namespace

double SpeedProfile::value(double t) const {
  switch (kind_) {
    case SpeedKind::Constant:
      return c0_;
    case SpeedKind::Polynomial:
      return poly_eval(coeffs_, t);
    case SpeedKind::SinePerturbed:
      return c0_ + amp_ * std::sin(freq_ * t + phase_);
  }
  return 0.0;
}

double SpeedProfile::derivative(double t) const {
  switch (kind_) {
    case SpeedKind::Constant:
      return 0.0;
    case SpeedKind::Polynomial:
      return poly_eval(poly_derive(coeffs_), t);
    case SpeedKind::SinePerturbed:
      return amp_ * freq_ * std::cos(freq_ * t + phase_);
  }
  return 0.0;
}

SpeedProfile SpeedProfile::constant(double c, double horizon) {
  require_finite(c, "speed");
  require_finite(horizon, "horizon");
  if (horizon <= 0.0) throw std::invalid_argument("horizon must be > 0");
  if (c <= 0.0)
    throw std::domain_error("strict hyperbolicity violated: a(t) = " +
                            std::to_string(c) + " <= 0");
  SpeedProfile p;
  p.kind_ = SpeedKind::Constant;
  p.c0_ = c;
  p.horizon_ = horizon;
  p.a0_ = p.a1_ = c;
  p.d1_ = 0.0;
  return p;
}

SpeedProfile SpeedProfile::polynomial(std::vector<double> coeffs,
                                      double horizon) {
  if (coeffs.empty())
    throw std::invalid_argument("polynomial profile needs coefficients");
  for (double c : coeffs) require_finite(c, "polynomial coefficient");
  require_finite(horizon, "horizon");
  if (horizon <= 0.0) throw std::invalid_argument("horizon must be > 0");

  SpeedProfile p;
  p.kind_ = SpeedKind::Polynomial;
  p.coeffs_ = std::move(coeffs);
  p.horizon_ = horizon;

  auto d1coeffs = poly_derive(p.coeffs_);
  auto d2coeffs = poly_derive(d1coeffs);

  // Candidates for extrema of a: endpoints, grid samples, roots of a'.
  constexpr int kSamples = 4096;
  double a0 = poly_eval(p.coeffs_, 0.0), a1 = a0;
  for (int i = 1; i <= kSamples; ++i) {
    double v = poly_eval(p.coeffs_, horizon * double(i) / kSamples);
    a0 = std::min(a0, v);
    a1 = std::max(a1, v);
  }
  for (double r : sign_change_roots(d1coeffs, horizon)) {
    double v = poly_eval(p.coeffs_, r);
    a0 = std::min(a0, v);
    a1 = std::max(a1, v);
  }

  // Candidates for max |a'|: endpoints, grid samples, roots of a''.
  double d1 = 0.0;
  for (int i = 0; i <= kSamples; ++i)
    d1 = std::max(
        d1, std::abs(poly_eval(d1coeffs, horizon * double(i) / kSamples)));
  for (double r : sign_change_roots(d2coeffs, horizon))
    d1 = std::max(d1, std::abs(poly_eval(d1coeffs, r)));

  require_hyperbolic(a0);
  p.a0_ = a0;
  p.a1_ = a1;
  p.d1_ = d1;
  return p;
}

SpeedProfile SpeedProfile::sine(double c0, double amplitude, double frequency,
                                double horizon, double phase) {
  require_finite(c0, "base speed");
  require_finite(amplitude, "amplitude");
  require_finite(frequency, "frequency");
  require_finite(phase, "phase");
  require_finite(horizon, "horizon");
  if (horizon <= 0.0) throw std::invalid_argument("horizon must be > 0");

  SpeedProfile p;
  p.kind_ = SpeedKind::SinePerturbed;
  p.c0_ = c0;
  p.amp_ = amplitude;
  p.freq_ = frequency;
  p.phase_ = phase;
  p.horizon_ = horizon;

  double a0, a1, d1;
  if (frequency == 0.0 || amplitude == 0.0) {
    a0 = a1 = c0 + amplitude * std::sin(phase);
    d1 = 0.0;
  } else {
    // Extrema of sin(freq t + phase) on [0, T]: endpoints plus interior
    // points with cos = 0; max |cos| similarly uses points with sin = 0.
    double u0 = phase, u1 = frequency * horizon + phase;
    double ulo = std::min(u0, u1), uhi = std::max(u0, u1);
    double smin = std::min(std::sin(u0), std::sin(u1));
    double smax = std::max(std::sin(u0), std::sin(u1));
    double cmax = std::max(std::abs(std::cos(u0)), std::abs(std::cos(u1)));
    // u = pi/2 + k pi inside (ulo, uhi) for the sine extrema.
    long klo = long(std::ceil((ulo - kPi / 2) / kPi));
    for (long k = klo;; ++k) {
      double u = kPi / 2 + double(k) * kPi;
      if (u >= uhi) break;
      if (u <= ulo) continue;
      double s = (((k % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
      smin = std::min(smin, s);
      smax = std::max(smax, s);
    }
    // u = k pi inside (ulo, uhi) for |cos| = 1.
    klo = long(std::ceil(ulo / kPi));
    for (long k = klo;; ++k) {
      double u = double(k) * kPi;
      if (u >= uhi) break;
      if (u <= ulo) continue;
      cmax = 1.0;
      break;
    }
    a0 = c0 + (amplitude >= 0 ? amplitude * smin : amplitude * smax);
    a1 = c0 + (amplitude >= 0 ? amplitude * smax : amplitude * smin);
    d1 = std::abs(amplitude * frequency) * cmax;
  }
  require_hyperbolic(a0);
  p.a0_ = a0;
  p.a1_ = a1;
  p.d1_ = d1;
  return p;
}

SpeedBounds speed_validate(const SpeedProfile& profile) {
  return {profile.a0(), profile.a1(), profile.d1()};
}

Symmetrizer symmetrizer(double t, const SpeedProfile& profile) {
  return {2.0 * profile.value(t), 2.0};
}

double mode_energy(const ModeState& state, const SpeedProfile& profile) {
  return 2.0 * profile.value(state.t) * std::norm(state.V1) +
         2.0 * std::norm(state.V2);
}

double SpeedProfile::gronwall_rate() const {
  return d1_ / std::min(a0_, 1.0);
}

double gronwall_bound(double initial_energy, double t,
                      const SpeedProfile& profile) {
  return initial_energy * std::exp(profile.gronwall_rate() * t);
}

std::pair<cplx, cplx> mode_solve_const(double lambda, double a, cplx v0,
                                       cplx v1, double t) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("lambda must be finite and > 0");
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("speed must be finite and > 0");
  double omega = std::sqrt(a * lambda);
  double c = std::cos(omega * t), s = std::sin(omega * t);
  return {c * v0 + (s / omega) * v1, -omega * s * v0 + c * v1};
}

SpeedProfile SpeedProfile::time_reversed() const {
  switch (kind_) {
    case SpeedKind::Constant:
      return *this;
    case SpeedKind::SinePerturbed:
      // a(T-t) = c0 + A sin(freq t + (pi - freq T - phase)).
      return sine(c0_, amp_, freq_, horizon_,
                  kPi - freq_ * horizon_ - phase_);
    case SpeedKind::Polynomial: {
      // Coefficients of p(T - t) by binomial expansion.
      std::vector<double> out(coeffs_.size(), 0.0);
      for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        double binom = 1.0;  // C(i, j) T^(i-j) (-1)^j accumulated over j
        double tpow = std::pow(horizon_, double(i));
        for (std::size_t j = 0; j <= i; ++j) {
          out[j] += coeffs_[i] * binom * tpow * (j % 2 ? -1.0 : 1.0);
          binom = binom * double(i - j) / double(j + 1);
          if (horizon_ != 0.0) tpow /= horizon_;
        }
      }
      return polynomial(std::move(out), horizon_);
    }
  }
  throw std::logic_error("unreachable profile kind");
}

ModeTrajectory evolve_mode(double lambda, cplx v0, cplx v1,
                           const SpeedProfile& profile,
                           std::span<const double> times, double dt) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("lambda must be finite and > 0");
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("dt must be finite and > 0");
  const double horizon_slack = profile.horizon() * (1.0 + 1e-12);
  double prev = 0.0;
  for (double t : times) {
    if (!std::isfinite(t) || t < 0.0 || t > horizon_slack)
      throw std::invalid_argument("requested time outside [0, horizon]");
    if (t < prev) throw std::invalid_argument("requested times must ascend");
    prev = t;
  }

  const double nu = std::sqrt(lambda);
  ModeTrajectory traj;
  traj.stability_warning = dt * nu * std::sqrt(profile.a1()) > 0.5;
  traj.dt_effective = std::min(dt, 0.1 / std::sqrt(profile.a1() * lambda));
  traj.states.reserve(times.size());
  traj.energy.reserve(times.size());

  cplx V1 = cplx(0.0, nu) * v0;  // i sqrt(lambda) v0
  cplx V2 = v1;
  const double E0 =
      2.0 * profile.value(0.0) * std::norm(V1) + 2.0 * std::norm(V2);

  auto rhs = [&](double t, cplx y1, cplx y2, cplx& d1c, cplx& d2c) {
    const cplx inu(0.0, nu);
    d1c = inu * y2;
    d2c = inu * (profile.value(t) * y1);
  };

  double t_now = 0.0;
  for (double target : times) {
    double delta = target - t_now;
    if (delta > 0.0) {
      long steps = long(std::ceil(delta / traj.dt_effective - 1e-12));
      if (steps < 1) steps = 1;
      double h = delta / double(steps);
      for (long s = 0; s < steps; ++s) {
        double ts = t_now + h * double(s);
        cplx k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
        rhs(ts, V1, V2, k1a, k1b);
        rhs(ts + h / 2, V1 + (h / 2) * k1a, V2 + (h / 2) * k1b, k2a, k2b);
        rhs(ts + h / 2, V1 + (h / 2) * k2a, V2 + (h / 2) * k2b, k3a, k3b);
        rhs(ts + h, V1 + h * k3a, V2 + h * k3b, k4a, k4b);
        V1 += (h / 6) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        V2 += (h / 6) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
      }
      t_now = target;
    }
    ModeState st{target, V1, V2};
    traj.states.push_back(st);
    traj.energy.push_back(
        {target, mode_energy(st, profile), gronwall_bound(E0, target, profile)});
  }
  return traj;
}

}  // namespace landau
