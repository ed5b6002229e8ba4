#include "landau/h_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "landau/parallel.hpp"
#include "dd.hpp"
#include "radial.hpp"

namespace landau {

using detail::dd;

namespace {

constexpr long double kPiL = std::numbers::pi_v<long double>;

// Laguerre value and derivative for the node solver (alpha = 0).
void laguerre_pair(int n, long double x, long double& value,
                   long double& prev) {
  long double lm1 = 0.0L, l = 1.0L;
  for (int p = 1; p <= n; ++p) {
    long double next = ((2 * p - 1 - x) * l - (p - 1) * lm1) / p;
    lm1 = l;
    l = next;
  }
  value = l;
  prev = lm1;
}

struct GaussLaguerre {
  std::vector<long double> nodes, weights;
};

// Newton iteration from the classical initial guesses. Weights use
// w_i = x_i / ((n+1) L_{n+1}(x_i))^2.
GaussLaguerre gauss_laguerre(int n) {
  GaussLaguerre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  long double z = 0.0L;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0L / (1.0L + 2.4L * n);
    } else if (i == 1) {
      z += 15.0L / (1.0L + 2.5L * n);
    } else {
      long double ai = i - 1;
      z += ((1.0L + 2.55L * ai) / (1.9L * ai)) * (z - rule.nodes[i - 2]);
    }
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      long double l, lm1;
      laguerre_pair(n, z, l, lm1);
      long double dl = n * (l - lm1) / z;  // x L_n' = n L_n - n L_{n-1}
      long double step = l / dl;
      z -= step;
      if (std::abs(step) <= 1e-18L * (1.0L + z)) {
        converged = true;
        break;
      }
    }
    if (!converged || !(z > 0.0L) ||
        (i > 0 && !(z > rule.nodes[i - 1])))
      throw std::runtime_error(
          "radial node iteration failed to converge at order " +
          std::to_string(n));
    long double l, lm1;
    laguerre_pair(n + 1, z, l, lm1);
    long double d = (n + 1) * l;
    rule.nodes[i] = z;
    rule.weights[i] = z / (d * d);
  }
  return rule;
}

}  // namespace

QuadratureGrid QuadratureGrid::build(FieldStrength field, int radial_order,
                                     int angular_count) {
  if (radial_order < 1) throw std::invalid_argument("radial_order must be >= 1");
  if (angular_count < 1)
    throw std::invalid_argument("angular_count must be >= 1");

  QuadratureGrid grid(field, angular_count);
  GaussLaguerre rule = gauss_laguerre(radial_order);
  grid.nodes_.resize(radial_order);
  grid.weights_.resize(radial_order);
  grid.combined_.resize(radial_order);
  grid.points_.reserve(std::size_t(radial_order) * angular_count);

  // Jacobian of (t, theta) -> (x, y): dx dy = dt dtheta / (2B); together
  // with the e^t unweighting and the angular step this folds into
  // pi / (B M) * w_q * e^{t_q} per point.
  long double scale = kPiL / ((long double)field.B * angular_count);
  for (int q = 0; q < radial_order; ++q) {
    grid.nodes_[q] = double(rule.nodes[q]);
    grid.weights_[q] = double(rule.weights[q]);
    grid.combined_[q] =
        double(scale * rule.weights[q] * std::exp(rule.nodes[q]));
    double r = std::sqrt(grid.nodes_[q] / field.B);
    for (int m = 0; m < angular_count; ++m) {
      double theta = 2.0 * std::numbers::pi * m / angular_count;
      grid.points_.push_back({r * std::cos(theta), r * std::sin(theta)});
    }
  }
  return grid;
}

cplx QuadratureGrid::integrate(std::span<const cplx> samples) const {
  if (samples.size() != point_count())
    throw std::invalid_argument("sample count does not match grid");
  cplx total{0.0, 0.0};
  std::size_t i = 0;
  for (int q = 0; q < radial_order(); ++q) {
    cplx shell{0.0, 0.0};
    for (int m = 0; m < angular_count_; ++m) shell += samples[i++];
    total += combined_[q] * shell;
  }
  return total;
}

int suggested_radial_order(int level_cap, int angular_cap) {
  return level_cap + angular_cap + 2;
}

int suggested_angular_count(int level_cap, int angular_cap) {
  return 4 * std::max(level_cap, angular_cap) + 1;
}

QuadratureGrid grid_for_table(const ModeTable& table) {
  return QuadratureGrid::build(
      table.field(),
      suggested_radial_order(table.level_cap(), table.angular_cap()),
      suggested_angular_count(table.level_cap(), table.angular_cap()));
}

SpectralCoefficients SpectralCoefficients::zero(
    std::shared_ptr<const ModeTable> table) {
  if (!table) throw std::invalid_argument("null mode table");
  SpectralCoefficients c;
  c.values.assign(table->size(), cplx{0.0, 0.0});
  c.table = std::move(table);
  return c;
}

cplx SpectralCoefficients::at(const ModeIndex& idx) const {
  if (!table) throw std::invalid_argument("coefficients carry no table");
  auto pos = table->find(idx);
  if (!pos) throw std::invalid_argument("mode not present in table");
  return values[*pos];
}

namespace {

struct KernelShape {
  unsigned degree, alpha;
  int momentum;
};

KernelShape shape_of(const ModeIndex& idx) {
  if (idx.family == Family::F1) return {idx.xi2, idx.xi1, int(idx.xi1)};
  return {idx.xi1, idx.xi2, -int(idx.xi2)};
}

// Normalized radial profiles of every table mode on the radial nodes:
// value[mode * Q + q] = L_deg^(alpha)(t_q) r_q^alpha e^{-t_q/2} / sqrt(norm).
struct RadialCache {
  std::vector<double> value;
  std::vector<int> momentum;
  unsigned max_abs_momentum = 0;
};

RadialCache build_radial_cache(const ModeTable& table,
                               std::span<const double> nodes, double B) {
  const std::size_t Q = nodes.size();
  RadialCache cache;
  cache.value.assign(table.size() * Q, 0.0);
  cache.momentum.resize(table.size());

  unsigned max_alpha = 0, max_deg = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    KernelShape sh = shape_of(table[i].index);
    cache.momentum[i] = sh.momentum;
    max_alpha = std::max(max_alpha, sh.alpha);
    max_deg = std::max(max_deg, sh.degree);
  }
  cache.max_abs_momentum = max_alpha;

  // lag[alpha][deg] per node, rebuilt node by node.
  std::vector<std::vector<double>> lag(max_alpha + 1,
                                       std::vector<double>(max_deg + 1));
  for (std::size_t q = 0; q < Q; ++q) {
    dd t{nodes[q], 0.0};
    for (unsigned a = 0; a <= max_alpha; ++a)
      detail::laguerre_seq(max_deg, a, t, lag[a].data());
    double r = std::sqrt(nodes[q] / B);
    double gauss = std::exp(-nodes[q] / 2.0);
    std::vector<double> rpow(max_alpha + 1);
    rpow[0] = 1.0;
    for (unsigned a = 1; a <= max_alpha; ++a) rpow[a] = rpow[a - 1] * r;
    for (std::size_t i = 0; i < table.size(); ++i) {
      KernelShape sh = shape_of(table[i].index);
      cache.value[i * Q + q] = lag[sh.alpha][sh.degree] * gauss *
                               rpow[sh.alpha] / std::sqrt(table[i].norm_sq);
    }
  }
  return cache;
}

void check_transform_args(const QuadratureGrid& grid, const ModeTable& table) {
  if (grid.field().B != table.field().B)
    throw std::invalid_argument(
        "grid and mode table use different field strengths");
}

}  // namespace

SpectralCoefficients forward_transform(std::span<const cplx> samples,
                                       const QuadratureGrid& grid,
                                       std::shared_ptr<const ModeTable> table) {
  if (!table) throw std::invalid_argument("null mode table");
  check_transform_args(grid, *table);
  if (samples.size() != grid.point_count())
    throw std::invalid_argument("sample count does not match grid");

  const std::size_t Q = std::size_t(grid.radial_order());
  const int M = grid.angular_count();
  RadialCache cache = build_radial_cache(*table, grid.radial_nodes(),
                                         grid.field().B);
  const int mom_max = int(cache.max_abs_momentum);
  const int mom_span = 2 * mom_max + 1;

  // Angular reduction: A[q][mom_max + mom] = sum_m samples(q, m) e^{-i mom theta_m}.
  std::vector<cplx> phase(std::size_t(mom_span) * M);
  for (int mom = -mom_max; mom <= mom_max; ++mom)
    for (int m = 0; m < M; ++m) {
      double theta = 2.0 * std::numbers::pi * m / M;
      phase[std::size_t(mom + mom_max) * M + m] =
          std::polar(1.0, -double(mom) * theta);
    }
  std::vector<cplx> angular(Q * mom_span);
  for (std::size_t q = 0; q < Q; ++q)
    for (int k = 0; k < mom_span; ++k) {
      cplx acc{0.0, 0.0};
      const cplx* ph = &phase[std::size_t(k) * M];
      const cplx* row = &samples[q * M];
      for (int m = 0; m < M; ++m) acc += row[m] * ph[m];
      angular[q * mom_span + k] = acc;
    }

  SpectralCoefficients out = SpectralCoefficients::zero(table);
  parallel_for(table->size(), [&](std::size_t i) {
    const int k = cache.momentum[i] + mom_max;
    cplx acc{0.0, 0.0};
    for (std::size_t q = 0; q < Q; ++q)
      acc += grid.combined_weight(int(q)) * cache.value[i * Q + q] *
             angular[q * mom_span + k];
    out.values[i] = acc;
  });
  return out;
}

SpectralCoefficients forward_transform(const FieldFn& f,
                                       const QuadratureGrid& grid,
                                       std::shared_ptr<const ModeTable> table) {
  if (!f) throw std::invalid_argument("null field function");
  std::vector<cplx> samples(grid.point_count());
  auto pts = grid.points();
  parallel_for(samples.size(),
               [&](std::size_t i) { samples[i] = f(pts[i].x, pts[i].y); });
  return forward_transform(std::span<const cplx>(samples), grid,
                           std::move(table));
}

std::vector<cplx> inverse_transform(const SpectralCoefficients& coeffs,
                                    std::span<const GridPoint> points) {
  if (!coeffs.table) throw std::invalid_argument("coefficients carry no table");
  const ModeTable& table = *coeffs.table;
  if (coeffs.values.size() != table.size())
    throw std::invalid_argument("coefficient count does not match table");
  const double B = table.field().B;

  unsigned max_alpha = 0, max_deg = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    KernelShape sh = shape_of(table[i].index);
    max_alpha = std::max(max_alpha, sh.alpha);
    max_deg = std::max(max_deg, sh.degree);
  }

  std::vector<cplx> out(points.size());
  parallel_for(points.size(), [&](std::size_t pi) {
    double x = points[pi].x, y = points[pi].y;
    dd u = detail::radius_sq_dd(x, y);
    dd t = detail::dd_mul(u, B);
    double gauss = std::exp(-detail::to_double(t) / 2.0);

    std::vector<std::vector<double>> lag(max_alpha + 1,
                                         std::vector<double>(max_deg + 1));
    for (unsigned a = 0; a <= max_alpha; ++a)
      detail::laguerre_seq(max_deg, a, t, lag[a].data());

    std::vector<cplx> zpow(max_alpha + 1), zbarpow(max_alpha + 1);
    zpow[0] = zbarpow[0] = cplx{1.0, 0.0};
    for (unsigned a = 1; a <= max_alpha; ++a) {
      zpow[a] = zpow[a - 1] * cplx(x, y);
      zbarpow[a] = zbarpow[a - 1] * cplx(x, -y);
    }

    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < table.size(); ++i) {
      KernelShape sh = shape_of(table[i].index);
      cplx ang = sh.momentum >= 0 ? zpow[sh.alpha] : zbarpow[sh.alpha];
      acc += coeffs.values[i] *
             (lag[sh.alpha][sh.degree] * gauss / std::sqrt(table[i].norm_sq)) *
             ang;
    }
    out[pi] = acc;
  });
  return out;
}

cplx inverse_transform_at(const SpectralCoefficients& coeffs, double x,
                          double y) {
  GridPoint p{x, y};
  return inverse_transform(coeffs, std::span<const GridPoint>(&p, 1))[0];
}

double plancherel_norm(const SpectralCoefficients& coeffs) {
  double sum = 0.0;
  for (const cplx& v : coeffs.values) sum += std::norm(v);
  return std::sqrt(sum);
}

double sobolev_norm(const SpectralCoefficients& coeffs, double s) {
  if (!coeffs.table) throw std::invalid_argument("coefficients carry no table");
  const ModeTable& table = *coeffs.table;
  if (coeffs.values.size() != table.size())
    throw std::invalid_argument("coefficient count does not match table");
  double sum = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i)
    sum += std::pow(table[i].eigenvalue, s) * std::norm(coeffs.values[i]);
  return std::sqrt(sum);
}

std::optional<DecayDiagnostic> decay_diagnostic(
    const SpectralCoefficients& coeffs) {
  if (!coeffs.table) throw std::invalid_argument("coefficients carry no table");
  const ModeTable& table = *coeffs.table;

  std::map<int, double> level_max;  // level -> max |coeff|
  for (std::size_t i = 0; i < table.size(); ++i) {
    int level = mode_level(table[i].index);
    double mag = std::abs(coeffs.values[i]);
    auto [it, inserted] = level_max.try_emplace(level, mag);
    if (!inserted) it->second = std::max(it->second, mag);
  }

  std::vector<double> xs, ys;
  for (auto [level, mag] : level_max) {
    if (mag < 1e-300) continue;
    double eigenvalue = table.field().B * double(2 * level + 1);
    xs.push_back(0.5 * std::log(eigenvalue));  // log sqrt(eigenvalue)
    ys.push_back(std::log(mag));
  }
  if (xs.size() < 3) return std::nullopt;

  double n = double(xs.size()), sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  double mx = sx / n, my = sy / n, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) return std::nullopt;
  double slope = sxy / sxx;
  double intercept = my - slope * mx;
  double max_residual = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    max_residual = std::max(max_residual,
                            std::abs(ys[i] - (intercept + slope * xs[i])));
  return DecayDiagnostic{slope, max_residual, int(xs.size())};
}

}  // namespace landau
