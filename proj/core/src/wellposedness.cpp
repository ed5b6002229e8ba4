#include "landau/wellposedness.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "landau/parallel.hpp"

namespace landau {

double certificate_constant(const SpeedProfile& profile) {
  double c1_over_c0 =
      std::max(profile.a1(), 1.0) / std::min(profile.a0(), 1.0);
  return c1_over_c0 * std::exp(profile.gronwall_rate() * profile.horizon());
}

SolutionRecord solve_cauchy(const CauchyProblem& problem, double dt,
                            std::vector<ModeTrajectory>* trajectories_out) {
  const auto& u0 = problem.u0;
  const auto& u1 = problem.u1;
  if (!u0.table || !u1.table)
    throw std::invalid_argument("initial data carry no mode table");
  if (u0.table != u1.table && !u0.table->compatible(*u1.table))
    throw std::invalid_argument("u0 and u1 must share one mode table");
  const ModeTable& table = *u0.table;
  if (table.size() == 0) throw std::invalid_argument("empty mode table");
  if (u0.values.size() != table.size() || u1.values.size() != table.size())
    throw std::invalid_argument("coefficient count does not match table");
  for (double t : problem.output_times)
    if (!std::isfinite(t) || t < 0.0 ||
        t > problem.profile.horizon() * (1.0 + 1e-12))
      throw std::invalid_argument("output time outside [0, horizon]");

  // One global step bound keyed to the fastest mode.
  const double lambda_max = table.max_eigenvalue();
  const double dt_global =
      std::min(dt, 0.1 / std::sqrt(problem.profile.a1() * lambda_max));

  const std::size_t n_modes = table.size();
  const std::size_t n_times = problem.output_times.size();
  std::vector<ModeTrajectory> trajectories(n_modes);
  parallel_for(n_modes, [&](std::size_t i) {
    trajectories[i] =
        evolve_mode(table[i].eigenvalue, u0.values[i], u1.values[i],
                    problem.profile, problem.output_times, dt_global);
  });

  SolutionRecord record{.slices = {},
                        .initial_sq = 0.0,
                        .s = problem.s,
                        .profile = problem.profile,
                        .certificate = certificate_constant(problem.profile)};
  {
    double nu = sobolev_norm(u0, 1.0 + problem.s);
    double nv = sobolev_norm(u1, problem.s);
    record.initial_sq = nu * nu + nv * nv;
  }

  record.slices.reserve(n_times);
  for (std::size_t k = 0; k < n_times; ++k) {
    TimeSlice slice;
    slice.t = problem.output_times[k];
    slice.u = SpectralCoefficients::zero(u0.table);
    slice.du = SpectralCoefficients::zero(u0.table);
    double energy = 0.0;
    for (std::size_t i = 0; i < n_modes; ++i) {
      const ModeState& st = trajectories[i].states[k];
      // v = V1 / (i sqrt(lambda)), dv = V2.
      cplx v = st.V1 / cplx(0.0, std::sqrt(table[i].eigenvalue));
      slice.u.values[i] = v;
      slice.du.values[i] = st.V2;
      energy += trajectories[i].energy[k].energy;
    }
    slice.sobolev_u = sobolev_norm(slice.u, 1.0 + problem.s);
    slice.sobolev_du = sobolev_norm(slice.du, problem.s);
    slice.total_energy = energy;
    slice.ratio =
        record.initial_sq == 0.0
            ? 0.0
            : (slice.sobolev_u * slice.sobolev_u +
               slice.sobolev_du * slice.sobolev_du) /
                  record.initial_sq;
    record.slices.push_back(std::move(slice));
  }
  if (trajectories_out) *trajectories_out = std::move(trajectories);
  return record;
}

EstimateVerdict verify_estimate(const SolutionRecord& record, double c_max) {
  double sup = 0.0;
  for (const TimeSlice& slice : record.slices)
    sup = std::max(sup, slice.ratio);
  // The bound holds in exact arithmetic; the relative slack keeps integrator
  // roundoff from reporting sharp cases (constant unit speed, sup == c_max)
  // as violations.
  constexpr double kSlack = 1e-9;
  return {sup, c_max, sup <= c_max * (1.0 + kSlack)};
}

EstimateVerdict verify_estimate(const SolutionRecord& record) {
  return verify_estimate(record, record.certificate);
}

std::vector<StudyRow> constant_stability_study(
    const StudyProblem& problem, std::span<const int> truncations) {
  if (!problem.u0) throw std::invalid_argument("study needs initial data");
  std::vector<StudyRow> rows;
  rows.reserve(truncations.size());
  for (int cap : truncations) {
    if (cap < 0) throw std::invalid_argument("negative level cap");
    auto table = std::make_shared<const ModeTable>(
        enumerate_modes(cap, cap, problem.field));
    QuadratureGrid grid = grid_for_table(*table);
    CauchyProblem cauchy{
        .u0 = forward_transform(problem.u0, grid, table),
        .u1 = problem.u1 ? forward_transform(problem.u1, grid, table)
                         : SpectralCoefficients::zero(table),
        .profile = problem.profile,
        .s = problem.s,
        .output_times = problem.output_times};
    SolutionRecord record = solve_cauchy(cauchy, problem.dt);
    EstimateVerdict verdict = verify_estimate(record);
    rows.push_back(
        {cap, verdict.sup_ratio, verdict.certificate, verdict.pass});
  }
  return rows;
}

}  // namespace landau
