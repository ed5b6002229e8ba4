#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "landau/spectral_basis.hpp"

namespace landau {

struct GridPoint {
  double x, y;
};

/// Polar product quadrature for integrals over the plane. The radial factor
/// is a Gauss rule in t = B r^2 against the weight e^-t (exact for
/// e^-t t^d, d <= 2*order - 1); the angular factor is the uniform rule at
/// theta_m = 2 pi m / M (exact on e^{i p theta} for |p| < M). Points are
/// stored radial-major: index q*M + m.
class QuadratureGrid {
 public:
  /// Throws std::invalid_argument on non-positive sizes and
  /// std::runtime_error if the node iteration fails to converge.
  static QuadratureGrid build(FieldStrength field, int radial_order,
                              int angular_count);

  std::span<const double> radial_nodes() const { return nodes_; }
  std::span<const double> radial_weights() const { return weights_; }
  int radial_order() const { return int(nodes_.size()); }
  int angular_count() const { return angular_count_; }
  FieldStrength field() const { return field_; }

  std::size_t point_count() const { return points_.size(); }
  std::span<const GridPoint> points() const { return points_; }

  /// Plane-measure weight of radial shell q: every point (q, m) carries
  /// combined_weight(q) so that sum_{q,m} combined_weight(q) g(point)
  /// approximates the integral of g over R^2.
  double combined_weight(int q) const { return combined_[q]; }

  /// Integral of the sampled field over the plane (samples in point order).
  cplx integrate(std::span<const cplx> samples) const;

 private:
  QuadratureGrid(FieldStrength field, int angular_count)
      : field_(field), angular_count_(angular_count) {}

  FieldStrength field_;
  int angular_count_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> combined_;
  std::vector<GridPoint> points_;
};

/// Grid sizes under which transforms restricted to a (level_cap,
/// angular_cap) table are exact up to roundoff.
int suggested_radial_order(int level_cap, int angular_cap);
int suggested_angular_count(int level_cap, int angular_cap);

/// Grid sized by the suggestions above for the table's caps.
QuadratureGrid grid_for_table(const ModeTable& table);

/// Coefficient vector over a shared mode table, stored in table order.
struct SpectralCoefficients {
  std::shared_ptr<const ModeTable> table;
  std::vector<cplx> values;

  static SpectralCoefficients zero(std::shared_ptr<const ModeTable> table);
  cplx at(const ModeIndex& idx) const;
};

using FieldFn = std::function<cplx(double, double)>;

/// Analysis: coefficient per mode is the quadrature of f * conj(kernel) /
/// sqrt(norm_sq). Throws std::invalid_argument if grid and table disagree
/// on the field strength.
SpectralCoefficients forward_transform(const FieldFn& f,
                                       const QuadratureGrid& grid,
                                       std::shared_ptr<const ModeTable> table);

/// Same, from samples already laid out in grid point order.
SpectralCoefficients forward_transform(std::span<const cplx> samples,
                                       const QuadratureGrid& grid,
                                       std::shared_ptr<const ModeTable> table);

/// Synthesis: sum of coefficients times normalized kernels at each point.
std::vector<cplx> inverse_transform(const SpectralCoefficients& coeffs,
                                    std::span<const GridPoint> points);
cplx inverse_transform_at(const SpectralCoefficients& coeffs, double x,
                          double y);

/// l2 norm of the coefficient vector.
double plancherel_norm(const SpectralCoefficients& coeffs);

/// (sum eigenvalue^s |coeff|^2)^(1/2).
double sobolev_norm(const SpectralCoefficients& coeffs, double s);

/// Least-squares decay fit of log(max |coeff| per eigenvalue level) against
/// log sqrt(eigenvalue).
struct DecayDiagnostic {
  double slope;
  double max_residual;
  int levels_used;
};

/// nullopt when fewer than 3 levels carry coefficients above 1e-300.
std::optional<DecayDiagnostic> decay_diagnostic(
    const SpectralCoefficients& coeffs);

}  // namespace landau
