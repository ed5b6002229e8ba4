#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "doctest.h"
#include "landau/wellposedness.hpp"
#include "testutil.hpp"

using namespace landau;
using testutil::SplitMix64;

namespace {

std::shared_ptr<const ModeTable> make_table(int n, int k, double b) {
  return std::make_shared<const ModeTable>(
      enumerate_modes(n, k, FieldStrength(b)));
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * double(i) / (n - 1);
  out.back() = b;
  return out;
}

SpectralCoefficients random_coeffs(std::shared_ptr<const ModeTable> table,
                                   std::uint64_t seed) {
  SpectralCoefficients c = SpectralCoefficients::zero(std::move(table));
  SplitMix64 rng(seed);
  for (cplx& v : c.values) v = rng.complex_unit_box();
  return c;
}

}  // namespace

TEST_CASE("certificate constant") {
  CHECK(certificate_constant(SpeedProfile::constant(1.0, 3.0)) == 1.0);
  CHECK(certificate_constant(SpeedProfile::sine(2.0, 1.0, 1.0, 3.0)) ==
        doctest::Approx(3.0 * std::exp(3.0)).epsilon(1e-12));
}

TEST_CASE("single mode under unit speed solves the harmonic oscillator") {
  auto table = make_table(2, 2, 1.0);
  SpectralCoefficients u0 = SpectralCoefficients::zero(table);
  u0.values[*table->find({Family::F1, 0, 0})] = 1.0;  // eigenvalue 1
  CauchyProblem problem{.u0 = u0,
                        .u1 = SpectralCoefficients::zero(table),
                        .profile = SpeedProfile::constant(1.0, M_PI),
                        .s = 0.37,
                        .output_times = linspace(0.0, M_PI, 9)};
  SolutionRecord record = solve_cauchy(problem, 1e-3);
  REQUIRE(record.slices.size() == 9);
  for (const TimeSlice& slice : record.slices) {
    const double expect = std::abs(std::cos(slice.t));
    CHECK(std::abs(slice.sobolev_u - expect) <= 1e-8);
    CHECK(std::abs(slice.ratio - 1.0) <= 1e-6);
  }
  EstimateVerdict verdict = verify_estimate(record);
  CHECK(verdict.pass);
  CHECK(verdict.sup_ratio <= 1.0 + 1e-6);
}

TEST_CASE("zero data stays zero") {
  auto table = make_table(3, 3, 1.0);
  CauchyProblem problem{.u0 = SpectralCoefficients::zero(table),
                        .u1 = SpectralCoefficients::zero(table),
                        .profile = SpeedProfile::sine(2.0, 1.0, 1.0, 2.0),
                        .s = 0.0,
                        .output_times = linspace(0.0, 2.0, 5)};
  SolutionRecord record = solve_cauchy(problem, 1e-3);
  CHECK(record.initial_sq == 0.0);
  for (const TimeSlice& slice : record.slices) {
    CHECK(slice.sobolev_u == 0.0);
    CHECK(slice.sobolev_du == 0.0);
    CHECK(slice.total_energy == 0.0);
    CHECK(slice.ratio == 0.0);
  }
  CHECK(verify_estimate(record).sup_ratio == 0.0);
}

TEST_CASE("unit speed conserves the wave energy of mixed data") {
  auto table = make_table(4, 3, 1.0);  // 26 modes
  CauchyProblem problem{.u0 = random_coeffs(table, 0xaaaaULL),
                        .u1 = random_coeffs(table, 0xbbbbULL),
                        .profile = SpeedProfile::constant(1.0, 2.0),
                        .s = 0.0,
                        .output_times = linspace(0.0, 2.0, 21)};
  SolutionRecord record = solve_cauchy(problem, 1e-3);

  // H^1-energy: ||u||_{H^1}^2 + ||du||^2 with a == 1
  std::vector<double> h1(record.slices.size());
  for (size_t k = 0; k < record.slices.size(); ++k) {
    const TimeSlice& slice = record.slices[k];
    const double nu = sobolev_norm(slice.u, 1.0);
    const double nv = sobolev_norm(slice.du, 0.0);
    h1[k] = nu * nu + nv * nv;
  }
  for (double e : h1) CHECK(std::abs(e - h1.front()) <= 1e-6 * h1.front());

  CHECK(verify_estimate(record).sup_ratio <= 1.0 + 1e-6);
}

TEST_CASE("estimate ratio is bounded by the certificate") {
  auto table = make_table(4, 4, 1.0);
  SpeedProfile profile = SpeedProfile::sine(2.0, 1.0, 1.0, 3.0);
  CauchyProblem problem{.u0 = random_coeffs(table, 0xccccULL),
                        .u1 = random_coeffs(table, 0xddddULL),
                        .profile = profile,
                        .s = -0.5,
                        .output_times = linspace(0.0, 3.0, 31)};
  SolutionRecord record = solve_cauchy(problem, 1e-3);
  EstimateVerdict verdict = verify_estimate(record);
  CHECK(verdict.certificate == doctest::Approx(3.0 * std::exp(3.0)));
  CHECK(verdict.pass);
  CHECK(verdict.sup_ratio <= verdict.certificate);

  SUBCASE("explicit bound override") {
    EstimateVerdict strict = verify_estimate(record, verdict.sup_ratio * 0.5);
    CHECK_FALSE(strict.pass);
    EstimateVerdict loose = verify_estimate(record, verdict.sup_ratio * 2.0);
    CHECK(loose.pass);
  }

  SUBCASE("per-mode weighted estimate shares one constant") {
    const double cert = record.certificate;
    const ModeTable& modes = *table;
    for (const TimeSlice& slice : record.slices) {
      for (size_t i = 0; i < modes.size(); ++i) {
        const double lam = modes[i].eigenvalue;
        const double w1 = std::pow(lam, 1.0 + problem.s);
        const double w0 = std::pow(lam, problem.s);
        const double lhs = w1 * std::norm(slice.u.values[i]) +
                           w0 * std::norm(slice.du.values[i]);
        const double rhs = w1 * std::norm(problem.u0.values[i]) +
                           w0 * std::norm(problem.u1.values[i]);
        CHECK(lhs <= cert * rhs * (1.0 + 1e-9));
      }
    }
  }
}

TEST_CASE("ratio is homogeneous in the initial data") {
  auto table = make_table(3, 3, 1.0);
  SpeedProfile profile = SpeedProfile::sine(2.0, 0.8, 1.7, 2.0);
  CauchyProblem problem{.u0 = random_coeffs(table, 0x1111ULL),
                        .u1 = random_coeffs(table, 0x2222ULL),
                        .profile = profile,
                        .s = 0.5,
                        .output_times = linspace(0.0, 2.0, 9)};
  SolutionRecord base = solve_cauchy(problem, 1e-3);

  const cplx scale(2.7, -1.3);
  CauchyProblem scaled = problem;
  for (cplx& v : scaled.u0.values) v *= scale;
  for (cplx& v : scaled.u1.values) v *= scale;
  SolutionRecord rescaled = solve_cauchy(scaled, 1e-3);

  for (size_t k = 0; k < base.slices.size(); ++k)
    CHECK(std::abs(rescaled.slices[k].ratio - base.slices[k].ratio) <=
          1e-12 * (1.0 + base.slices[k].ratio));
}

TEST_CASE("reversed evolution returns to the initial data") {
  auto table = make_table(4, 4, 1.0);
  const double horizon = 2.0;
  SpectralCoefficients u0 = random_coeffs(table, 0x3333ULL);
  SpectralCoefficients u1 = random_coeffs(table, 0x4444ULL);

  auto run_reversal = [&](const SpeedProfile& profile) {
    CauchyProblem forward{.u0 = u0,
                          .u1 = u1,
                          .profile = profile,
                          .s = 0.2,
                          .output_times = {horizon}};
    SolutionRecord at_end = solve_cauchy(forward, 1e-3);
    const TimeSlice& last = at_end.slices.back();

    // w(t) = u(T - t) solves the reversed problem with data (u(T), -du(T))
    SpectralCoefficients w0 = last.u;
    SpectralCoefficients w1 = last.du;
    for (cplx& v : w1.values) v = -v;
    CauchyProblem backward{.u0 = w0,
                           .u1 = w1,
                           .profile = profile.time_reversed(),
                           .s = 0.2,
                           .output_times = {horizon}};
    SolutionRecord back = solve_cauchy(backward, 1e-3);
    const TimeSlice& recovered = back.slices.back();

    const double n_u0 = sobolev_norm(u0, 1.2);
    const double n_u1 = sobolev_norm(u1, 0.2);
    CHECK(std::abs(recovered.sobolev_u - n_u0) <= 1e-6 * n_u0);
    CHECK(std::abs(recovered.sobolev_du - n_u1) <= 1e-6 * n_u1);
    for (size_t i = 0; i < u0.values.size(); ++i) {
      CHECK(std::abs(recovered.u.values[i] - u0.values[i]) <= 1e-6);
      CHECK(std::abs(-recovered.du.values[i] - u1.values[i]) <= 1e-6);
    }
  };

  SUBCASE("constant speed") {
    run_reversal(SpeedProfile::constant(1.4, horizon));
  }
  SUBCASE("sine speed") {
    run_reversal(SpeedProfile::sine(2.0, 1.0, 1.0, horizon));
  }
}

TEST_CASE("solve input validation") {
  auto table = make_table(2, 2, 1.0);
  auto other = make_table(2, 2, 2.0);
  SpeedProfile profile = SpeedProfile::constant(1.0, 1.0);

  CauchyProblem mismatched{.u0 = SpectralCoefficients::zero(table),
                           .u1 = SpectralCoefficients::zero(other),
                           .profile = profile,
                           .s = 0.0,
                           .output_times = {0.5}};
  CHECK_THROWS_AS(solve_cauchy(mismatched, 1e-3), std::invalid_argument);

  CauchyProblem late{.u0 = SpectralCoefficients::zero(table),
                     .u1 = SpectralCoefficients::zero(table),
                     .profile = profile,
                     .s = 0.0,
                     .output_times = {1.5}};
  CHECK_THROWS_AS(solve_cauchy(late, 1e-3), std::invalid_argument);
}

TEST_CASE("truncation study") {
  SUBCASE("gaussian bump under unit speed is truncation-stable") {
    StudyProblem problem{
        .field = FieldStrength(1.0),
        .u0 =
            [](double x, double y) {
              const double dx = x - 0.5;
              return cplx(std::exp(-(dx * dx + y * y)), 0.0);
            },
        .u1 = nullptr,
        .profile = SpeedProfile::constant(1.0, 2.0),
        .s = 0.0,
        .output_times = linspace(0.0, 2.0, 11),
        .dt = 1e-3};
    const int caps[] = {4, 8, 16};
    std::vector<StudyRow> rows = constant_stability_study(problem, caps);
    REQUIRE(rows.size() == 3);
    double lo = rows[0].sup_ratio, hi = rows[0].sup_ratio;
    for (const StudyRow& row : rows) {
      CHECK(row.pass);
      lo = std::min(lo, row.sup_ratio);
      hi = std::max(hi, row.sup_ratio);
    }
    CHECK((hi - lo) / lo < 0.01);
  }

  SUBCASE("single-mode data is exactly truncation-independent") {
    const FieldStrength field(1.0);
    const ModeIndex idx{Family::F1, 0, 1};
    const double scale = 1.0 / std::sqrt(basis_norm_sq(idx, field));
    StudyProblem problem{
        .field = field,
        .u0 =
            [idx, field, scale](double x, double y) {
              return scale * basis_eval(idx, x, y, field);
            },
        .u1 = nullptr,
        .profile = SpeedProfile::sine(2.0, 1.0, 1.0, 2.0),
        .s = 1.0,
        .output_times = linspace(0.0, 2.0, 11),
        .dt = 1e-3};
    const int caps[] = {2, 4, 6};
    std::vector<StudyRow> rows = constant_stability_study(problem, caps);
    CHECK(std::abs(rows[1].sup_ratio - rows[0].sup_ratio) <=
          1e-10 * rows[0].sup_ratio);
    CHECK(std::abs(rows[2].sup_ratio - rows[0].sup_ratio) <=
          1e-10 * rows[0].sup_ratio);
  }

  SUBCASE("varying speed stays within the certificate at every cap") {
    StudyProblem problem{
        .field = FieldStrength(1.0),
        .u0 =
            [](double x, double y) {
              const double dx = x - 0.5;
              return cplx(std::exp(-(dx * dx + y * y)), 0.0);
            },
        .u1 = nullptr,
        .profile = SpeedProfile::sine(2.0, 1.0, 1.0, 3.0),
        .s = 0.0,
        .output_times = linspace(0.0, 3.0, 13),
        .dt = 1e-3};
    const int caps[] = {4, 8, 16};
    std::vector<StudyRow> rows = constant_stability_study(problem, caps);
    for (const StudyRow& row : rows) {
      CHECK(row.sup_ratio <= row.certificate);
      CHECK(row.pass);
    }
  }
}
