#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "doctest.h"
#include "landau/h_fourier.hpp"
#include "testutil.hpp"

using namespace landau;
using testutil::SplitMix64;

namespace {

std::shared_ptr<const ModeTable> make_table(int n, int k, double b) {
  return std::make_shared<const ModeTable>(
      enumerate_modes(n, k, FieldStrength(b)));
}

/// Normalized kernel of one mode as a sampling function.
FieldFn normalized_mode(const ModeIndex& idx, FieldStrength field) {
  const double scale = 1.0 / std::sqrt(basis_norm_sq(idx, field));
  return [idx, field, scale](double x, double y) {
    return scale * basis_eval(idx, x, y, field);
  };
}

/// Random coefficient vector with entries in the unit box.
SpectralCoefficients random_coeffs(std::shared_ptr<const ModeTable> table,
                                   std::uint64_t seed) {
  SpectralCoefficients c = SpectralCoefficients::zero(std::move(table));
  SplitMix64 rng(seed);
  for (cplx& v : c.values) v = rng.complex_unit_box();
  return c;
}

double quad_l2(const QuadratureGrid& grid, std::span<const cplx> g) {
  std::vector<cplx> sq(g.size());
  for (size_t i = 0; i < g.size(); ++i) sq[i] = std::norm(g[i]);
  return std::sqrt(std::max(0.0, grid.integrate(sq).real()));
}

}  // namespace

TEST_CASE("radial rule integrates e^-t t^d exactly up to degree 2n-1") {
  QuadratureGrid grid = QuadratureGrid::build(FieldStrength(1.0), 10, 4);
  const auto nodes = grid.radial_nodes();
  const auto weights = grid.radial_weights();
  REQUIRE(nodes.size() == 10);
  double factorial = 1.0;
  for (int d = 0; d <= 19; ++d) {
    if (d > 0) factorial *= d;
    double sum = 0.0;
    for (size_t q = 0; q < nodes.size(); ++q)
      sum += weights[q] * std::pow(nodes[q], d);
    CHECK(std::abs(sum - factorial) <= 1e-12 * factorial);
  }
}

TEST_CASE("plane integral of the unit gaussian") {
  QuadratureGrid grid = QuadratureGrid::build(FieldStrength(1.0), 1, 4);
  std::vector<cplx> samples(grid.point_count());
  const auto points = grid.points();
  for (size_t i = 0; i < samples.size(); ++i)
    samples[i] = std::exp(-(points[i].x * points[i].x +
                            points[i].y * points[i].y));
  CHECK(std::abs(grid.integrate(samples).real() - M_PI) <= 1e-14 * M_PI);
}

TEST_CASE("angular rule annihilates low harmonics and aliases at M") {
  QuadratureGrid grid = QuadratureGrid::build(FieldStrength(1.0), 10, 16);
  const auto points = grid.points();
  std::vector<cplx> samples(points.size());
  for (int p : {1, 5, 15, 16}) {
    for (size_t i = 0; i < points.size(); ++i) {
      const double theta = std::atan2(points[i].y, points[i].x);
      const double r2 = points[i].x * points[i].x + points[i].y * points[i].y;
      samples[i] = std::exp(cplx(0.0, p * theta)) * std::exp(-r2);
    }
    const cplx integral = grid.integrate(samples);
    if (p < 16)
      CHECK(std::abs(integral) <= 1e-13);  // exact zero up to roundoff
    else
      CHECK(std::abs(integral - M_PI) <= 1e-10);  // p = M folds onto p = 0
  }
}

TEST_CASE("grid sizing rule for exact transforms") {
  CHECK(suggested_radial_order(8, 8) == 18);
  CHECK(suggested_angular_count(8, 8) == 33);
  CHECK(suggested_radial_order(4, 0) == 6);
}

TEST_CASE("gram matrix of normalized modes is the identity") {
  auto table = make_table(4, 4, 1.0);
  QuadratureGrid grid = QuadratureGrid::build(table->field(), 10, 16);
  double worst = 0.0;
  for (size_t a = 0; a < table->size(); ++a) {
    SpectralCoefficients row = forward_transform(
        normalized_mode((*table)[a].index, table->field()), grid, table);
    for (size_t b = 0; b < table->size(); ++b) {
      const double dev =
          std::abs(row.values[b] - (a == b ? cplx(1.0) : cplx(0.0)));
      worst = std::max(worst, dev);
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("too few angles alias opposite angular momenta") {
  auto table = make_table(4, 4, 1.0);
  QuadratureGrid grid = QuadratureGrid::build(table->field(), 10, 8);
  SpectralCoefficients row = forward_transform(
      normalized_mode({Family::F1, 4, 0}, table->field()), grid, table);
  auto slot = table->find({Family::F2, 0, 4});
  REQUIRE(slot.has_value());
  // momentum difference 8 equals the angular count, so the entry survives
  CHECK(std::abs(row.values[*slot]) > 0.5);
}

TEST_CASE("forward transform picks out coefficients") {
  auto table = make_table(3, 3, 1.0);
  QuadratureGrid grid = grid_for_table(*table);

  SUBCASE("single normalized mode") {
    SpectralCoefficients c = forward_transform(
        normalized_mode({Family::F1, 0, 0}, table->field()), grid, table);
    for (size_t b = 0; b < table->size(); ++b) {
      if ((*table)[b].index == ModeIndex{Family::F1, 0, 0})
        CHECK(std::abs(c.values[b] - 1.0) <= 1e-10);
      else
        CHECK(std::abs(c.values[b]) <= 1e-10);
    }
  }

  SUBCASE("linear combination") {
    FieldFn e0 = normalized_mode({Family::F1, 0, 0}, table->field());
    FieldFn e1 = normalized_mode({Family::F2, 0, 1}, table->field());
    SpectralCoefficients c = forward_transform(
        [&](double x, double y) {
          return 2.0 * e0(x, y) + cplx(0.0, 3.0) * e1(x, y);
        },
        grid, table);
    CHECK(std::abs(c.at({Family::F1, 0, 0}) - 2.0) <= 1e-10);
    CHECK(std::abs(c.at({Family::F2, 0, 1}) - cplx(0.0, 3.0)) <= 1e-10);
  }

  SUBCASE("field strength mismatch is rejected") {
    auto other = make_table(3, 3, 2.0);
    CHECK_THROWS_AS(
        forward_transform([](double, double) { return cplx(0.0); }, grid,
                          other),
        std::invalid_argument);
  }
}

TEST_CASE("inverse transform") {
  auto table = make_table(3, 3, 1.0);

  SUBCASE("zero coefficients synthesize the zero field") {
    SpectralCoefficients c = SpectralCoefficients::zero(table);
    CHECK(inverse_transform_at(c, 0.7, -0.4) == cplx(0.0));
  }

  SUBCASE("unit ground coefficient at the origin") {
    SpectralCoefficients c = SpectralCoefficients::zero(table);
    c.values[*table->find({Family::F1, 0, 0})] = 1.0;
    CHECK(std::abs(inverse_transform_at(c, 0.0, 0.0) -
                   1.0 / std::sqrt(M_PI)) <= 1e-15);
  }

  SUBCASE("round trip is pointwise exact on the span") {
    auto big = make_table(5, 5, 1.0);
    QuadratureGrid grid = grid_for_table(*big);
    SpectralCoefficients c = random_coeffs(big, 0xabcdef12345ULL);
    std::vector<cplx> samples = inverse_transform(c, grid.points());
    SpectralCoefficients back = forward_transform(samples, grid, big);
    std::vector<cplx> again = inverse_transform(back, grid.points());
    for (size_t i = 0; i < samples.size(); ++i)
      CHECK(std::abs(again[i] - samples[i]) <= 1e-8);
  }
}

TEST_CASE("round trip and parseval on in-span data") {
  auto table = make_table(6, 6, 1.3);
  QuadratureGrid grid = grid_for_table(*table);
  SpectralCoefficients c = random_coeffs(table, 0x600d5eedULL);
  std::vector<cplx> samples = inverse_transform(c, grid.points());
  SpectralCoefficients back = forward_transform(samples, grid, table);

  double coeff_err = 0.0, coeff_norm = 0.0;
  for (size_t i = 0; i < c.values.size(); ++i) {
    coeff_err += std::norm(back.values[i] - c.values[i]);
    coeff_norm += std::norm(c.values[i]);
  }
  CHECK(std::sqrt(coeff_err / coeff_norm) <= 1e-8);

  const double l2 = quad_l2(grid, samples);
  const double pl = plancherel_norm(back);
  CHECK(std::abs(pl * pl - l2 * l2) <= 1e-8 * (1.0 + l2 * l2));

  std::vector<cplx> recon = inverse_transform(back, grid.points());
  std::vector<cplx> diff(recon.size());
  for (size_t i = 0; i < recon.size(); ++i) diff[i] = recon[i] - samples[i];
  CHECK(quad_l2(grid, diff) <= 1e-8 * l2);
}

TEST_CASE("real fields pair opposite angular momenta") {
  auto table = make_table(5, 5, 1.0);
  QuadratureGrid grid = grid_for_table(*table);
  SpectralCoefficients c = forward_transform(
      [](double x, double y) {
        const double dx = x - 0.4, dy = y + 0.3;
        return cplx(std::exp(-(dx * dx + dy * dy)), 0.0);
      },
      grid, table);
  for (size_t i = 0; i < table->size(); ++i) {
    const ModeIndex idx = (*table)[i].index;
    if (idx.family != Family::F1) continue;
    if (idx.xi1 == 0) {
      CHECK(std::abs(c.values[i].imag()) <= 1e-12);
      continue;
    }
    // conj(F1 kernel (k,n)) equals the F2 kernel (n,k) with the same norm
    auto partner = table->find({Family::F2, idx.xi2, idx.xi1});
    if (!partner) continue;
    CHECK(std::abs(c.values[*partner] - std::conj(c.values[i])) <=
          1e-12 * (1.0 + std::abs(c.values[i])));
  }
}

TEST_CASE("norms over coefficients") {
  auto table = make_table(4, 4, 1.0);

  SUBCASE("pythagoras") {
    SpectralCoefficients c = SpectralCoefficients::zero(table);
    c.values[0] = 3.0;
    c.values[5] = cplx(0.0, 4.0);
    CHECK(plancherel_norm(c) == doctest::Approx(5.0).epsilon(1e-15));
  }

  SUBCASE("sobolev weighting") {
    SpectralCoefficients c = SpectralCoefficients::zero(table);
    c.values[*table->find({Family::F1, 0, 2})] = 1.0;
    CHECK(sobolev_norm(c, 2.0) == doctest::Approx(5.0).epsilon(1e-14));

    SpectralCoefficients ground = SpectralCoefficients::zero(table);
    ground.values[*table->find({Family::F1, 0, 0})] = 1.0;
    CHECK(sobolev_norm(ground, 1.7) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sobolev_norm(ground, -1.7) == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("s = 0 reduces to the plancherel norm") {
    SpectralCoefficients c = random_coeffs(table, 0x1234321ULL);
    CHECK(sobolev_norm(c, 0.0) ==
          doctest::Approx(plancherel_norm(c)).epsilon(1e-14));
  }

  SUBCASE("duality pairing bound") {
    SpectralCoefficients f = random_coeffs(table, 0x77777ULL);
    SpectralCoefficients g = random_coeffs(table, 0x88888ULL);
    cplx pairing = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i)
      pairing += f.values[i] * std::conj(g.values[i]);
    const double s = 0.8;
    CHECK(std::abs(pairing) <=
          sobolev_norm(f, s) * sobolev_norm(g, -s) * (1.0 + 1e-12));
  }
}

TEST_CASE("coefficient decay diagnostic") {
  SUBCASE("synthetic power law") {
    auto table = make_table(8, 8, 1.0);
    SpectralCoefficients c = SpectralCoefficients::zero(table);
    for (size_t i = 0; i < table->size(); ++i)
      c.values[i] = std::pow((*table)[i].eigenvalue, -4.0);
    auto diag = decay_diagnostic(c);
    REQUIRE(diag.has_value());
    CHECK(std::abs(diag->slope - (-8.0)) <= 0.1);
    CHECK(diag->levels_used == 9);
    CHECK(diag->max_residual <= 1e-10);
  }

  SUBCASE("single mode gives no diagnostic") {
    auto table = make_table(8, 8, 1.0);
    SpectralCoefficients c = SpectralCoefficients::zero(table);
    c.values[0] = 1.0;
    CHECK_FALSE(decay_diagnostic(c).has_value());
  }

  SUBCASE("smooth bump decays superpolynomially") {
    auto table = make_table(8, 8, 1.0);
    QuadratureGrid grid = grid_for_table(*table);
    SpectralCoefficients c = forward_transform(
        [](double x, double y) {
          const double dx = x - 0.5;
          return cplx(std::exp(-(dx * dx + y * y)), 0.0);
        },
        grid, table);
    auto diag = decay_diagnostic(c);
    REQUIRE(diag.has_value());
    CHECK(diag->slope < -2.0);
  }
}
