#include "landau/spectral_basis.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

#include "dd.hpp"
#include "radial.hpp"

namespace landau {

using detail::dd;

FieldStrength::FieldStrength(double b) : B(b) {
  if (!std::isfinite(b) || b <= 0.0)
    throw std::invalid_argument("field strength must be finite and > 0, got " +
                                std::to_string(b));
}

void validate_index(const ModeIndex& idx) {
  if (idx.family != Family::F1 && idx.family != Family::F2)
    throw std::invalid_argument("unknown mode family");
  if (idx.family == Family::F2 && idx.xi2 == 0)
    throw std::invalid_argument(
        "F2 modes require xi2 >= 1 (xi2 = 0 duplicates the F1 ladder)");
}

int mode_level(const ModeIndex& idx) {
  validate_index(idx);
  return idx.family == Family::F1 ? int(idx.xi2) : int(idx.xi1 + idx.xi2);
}

int mode_angular_momentum(const ModeIndex& idx) {
  validate_index(idx);
  return idx.family == Family::F1 ? int(idx.xi1) : -int(idx.xi2);
}

double laguerre_eval(unsigned p, unsigned alpha, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("laguerre_eval: t not finite");
  return detail::laguerre_at(p, alpha, dd{t, 0.0});
}

namespace {

// (x+iy)^n or (x-iy)^n by repeated multiplication.
cplx complex_power(double x, double y, int momentum) {
  cplx base = momentum >= 0 ? cplx(x, y) : cplx(x, -y);
  unsigned n = unsigned(momentum >= 0 ? momentum : -momentum);
  cplx w{1.0, 0.0};
  for (unsigned i = 0; i < n; ++i) w *= base;
  return w;
}

struct KernelShape {
  unsigned degree;  // Laguerre degree
  unsigned alpha;   // Laguerre order; also |angular momentum|
  int momentum;
};

KernelShape shape_of(const ModeIndex& idx) {
  validate_index(idx);
  if (idx.family == Family::F1) return {idx.xi2, idx.xi1, int(idx.xi1)};
  return {idx.xi1, idx.xi2, -int(idx.xi2)};
}

}  // namespace

cplx basis_eval(const ModeIndex& idx, double x, double y, FieldStrength field) {
  KernelShape sh = shape_of(idx);
  dd t = detail::dd_mul(detail::radius_sq_dd(x, y), field.B);
  double radial = detail::laguerre_at(sh.degree, sh.alpha, t);
  double gauss = std::exp(-detail::to_double(t) / 2.0);
  return complex_power(x, y, sh.momentum) * (radial * gauss);
}

double basis_norm_sq(const ModeIndex& idx, FieldStrength field) {
  KernelShape sh = shape_of(idx);
  // pi * B^-(alpha+1) * (degree+alpha)! / degree!, with the factorial ratio
  // and the B powers interleaved so intermediates stay near the result.
  long double value = std::numbers::pi_v<long double> / (long double)field.B;
  for (unsigned s = 1; s <= sh.alpha; ++s) {
    value *= (long double)(sh.degree + s) / (long double)field.B;
    if (!std::isfinite((double)value))
      throw std::range_error("mode norm overflows double");
  }
  double out = (double)value;
  if (!std::isfinite(out) || out < DBL_MIN)
    throw std::range_error("mode norm not representable in double");
  return out;
}

double mode_eigenvalue(const ModeIndex& idx, FieldStrength field) {
  return field.B * double(2 * mode_level(idx) + 1);
}

namespace {

// Dense bivariate polynomial in (z, zbar), z = x+iy. coeff(p, q) multiplies
// z^p zbar^q.
struct BivarPoly {
  int pmax, qmax;
  std::vector<dd> c;

  BivarPoly(int pm, int qm) : pmax(pm), qmax(qm), c((pm + 1) * (qm + 1)) {}
  dd& at(int p, int q) { return c[std::size_t(p) * (qmax + 1) + q]; }
  dd get(int p, int q) const {
    if (p < 0 || q < 0 || p > pmax || q > qmax) return dd{0.0, 0.0};
    return c[std::size_t(p) * (qmax + 1) + q];
  }
};

// Monomial coefficients of the kernel polynomial: the Laguerre factor
// L_deg^(alpha)(B z zbar) expands to sum_i (-1)^i C(deg+alpha, deg-i)/i! *
// B^i (z zbar)^i, multiplied by z^alpha (F1) or zbar^alpha (F2).
BivarPoly kernel_poly(const ModeIndex& idx, double B) {
  KernelShape sh = shape_of(idx);
  int deg = int(sh.degree), alpha = int(sh.alpha);
  bool f1 = idx.family == Family::F1;
  BivarPoly poly(f1 ? alpha + deg : deg, f1 ? deg : alpha + deg);

  dd binom{1.0, 0.0};  // C(deg+alpha, deg-i) built incrementally from i=deg
  // At i = deg the binomial is C(deg+alpha, 0) = 1; walking i downward:
  // C(m, r+1) = C(m, r) * (m-r)/(r+1), with m = deg+alpha, r = deg-i.
  std::vector<dd> binoms(deg + 1);
  binoms[deg] = binom;
  for (int r = 0; r + 1 <= deg; ++r) {
    binom = dd_div(dd_mul(binoms[deg - r], double(deg + alpha - r)), double(r + 1));
    binoms[deg - r - 1] = binom;
  }

  dd coef{1.0, 0.0};  // B^i / i! accumulated
  for (int i = 0; i <= deg; ++i) {
    if (i > 0) coef = dd_div(dd_mul(coef, B), double(i));
    dd term = dd_mul(binoms[i], coef);
    if (i % 2 == 1) term = detail::dd_neg(term);
    if (f1)
      poly.at(alpha + i, i) = term;
    else
      poly.at(i, alpha + i) = term;
  }
  return poly;
}

// H (P * gauss) = Q * gauss with
//   Q[p][q] = -2 (p+1)(q+1) P[p+1][q+1] + B (1+2q) P[p][q].
BivarPoly hamiltonian_action(const BivarPoly& poly, double B) {
  BivarPoly out(poly.pmax, poly.qmax);
  for (int p = 0; p <= poly.pmax; ++p)
    for (int q = 0; q <= poly.qmax; ++q) {
      dd v = dd_mul(poly.get(p + 1, q + 1), -2.0 * (p + 1) * (q + 1));
      out.at(p, q) =
          detail::dd_add(v, dd_mul(poly.get(p, q), B * double(2 * q + 1)));
    }
  return out;
}

// Evaluates P(z, zbar) * exp(-B z zbar / 2). Each diagonal p - q = d is a
// univariate polynomial in u = z zbar (real), run through a compensated
// Horner pass; diagonals then combine with the angular factors.
cplx eval_poly_gauss(const BivarPoly& poly, double x, double y, double B) {
  dd u = detail::radius_sq_dd(x, y);
  dd t = dd_mul(u, B);
  double gauss = std::exp(-detail::to_double(t) / 2.0);

  cplx acc{0.0, 0.0};
  for (int d = -poly.qmax; d <= poly.pmax; ++d) {
    int qlo = std::max(0, -d);
    int qhi = std::min(poly.qmax, poly.pmax - d);
    if (qlo > qhi) continue;
    dd s{0.0, 0.0};
    bool any = false;
    for (int q = qhi; q >= qlo; --q) {
      dd coeff = poly.get(q + d, q);
      any = any || coeff.hi != 0.0 || coeff.lo != 0.0;
      s = detail::dd_add(dd_mul(s, u), coeff);
    }
    if (!any) continue;
    acc += complex_power(x, y, d) * detail::to_double(s);
  }
  return acc * gauss;
}

}  // namespace

cplx hamiltonian_apply_exact(const ModeIndex& idx, double x, double y,
                             FieldStrength field) {
  BivarPoly poly = kernel_poly(idx, field.B);
  BivarPoly applied = hamiltonian_action(poly, field.B);
  return eval_poly_gauss(applied, x, y, field.B);
}

namespace {

std::tuple<int, int, std::uint32_t> sort_key(const ModeIndex& idx) {
  return {mode_level(idx), int(idx.family), idx.xi1};
}

}  // namespace

ModeTable::ModeTable(std::vector<ModeRecord> modes, int level_cap,
                     int angular_cap, FieldStrength field)
    : modes_(std::move(modes)),
      level_cap_(level_cap),
      angular_cap_(angular_cap),
      field_(field) {
  std::sort(modes_.begin(), modes_.end(),
            [](const ModeRecord& a, const ModeRecord& b) {
              return sort_key(a.index) < sort_key(b.index);
            });
  for (std::size_t i = 0; i + 1 < modes_.size(); ++i)
    if (sort_key(modes_[i].index) == sort_key(modes_[i + 1].index))
      throw std::invalid_argument("duplicate mode in table");
}

std::optional<std::size_t> ModeTable::find(const ModeIndex& idx) const {
  auto key = sort_key(idx);
  auto it = std::lower_bound(modes_.begin(), modes_.end(), key,
                             [](const ModeRecord& m, const auto& k) {
                               return sort_key(m.index) < k;
                             });
  if (it == modes_.end() || !(it->index == idx)) return std::nullopt;
  return std::size_t(it - modes_.begin());
}

double ModeTable::max_eigenvalue() const {
  return modes_.empty() ? 0.0 : modes_.back().eigenvalue;
}

int ModeTable::max_abs_angular() const {
  int m = 0;
  for (const auto& rec : modes_)
    m = std::max(m, std::abs(mode_angular_momentum(rec.index)));
  return m;
}

bool ModeTable::compatible(const ModeTable& other) const {
  return field_.B == other.field_.B && level_cap_ == other.level_cap_ &&
         angular_cap_ == other.angular_cap_ && size() == other.size();
}

ModeTable enumerate_modes(int level_cap, int angular_cap, FieldStrength field) {
  if (level_cap < 0 || angular_cap < 0)
    throw std::invalid_argument("mode caps must be non-negative");

  std::vector<ModeRecord> modes;
  modes.reserve(std::size_t(level_cap + 1) * (angular_cap + 1) +
                std::size_t(level_cap) * (level_cap + 1) / 2);
  auto push = [&](ModeIndex idx) {
    ModeRecord rec;
    rec.index = idx;
    rec.eigenvalue = mode_eigenvalue(idx, field);
    rec.norm_sq = basis_norm_sq(idx, field);
    rec.bracket = std::sqrt(rec.eigenvalue);
    modes.push_back(rec);
  };
  for (std::uint32_t n = 0; n <= std::uint32_t(level_cap); ++n)
    for (std::uint32_t k = 0; k <= std::uint32_t(angular_cap); ++k)
      push({Family::F1, k, n});
  for (std::uint32_t n = 1; n <= std::uint32_t(level_cap); ++n)
    for (std::uint32_t j = 0; j + n <= std::uint32_t(level_cap); ++j)
      push({Family::F2, j, n});

  return ModeTable(std::move(modes), level_cap, angular_cap, field);
}

}  // namespace landau
