#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace landau {

using cplx = std::complex<double>;

/// Strength parameter of the magnetic field; the physical field is 2B.
/// Construction rejects values that are not finite and strictly positive.
struct FieldStrength {
  explicit FieldStrength(double b);
  double B;
};

/// The two families of eigenmodes. F1 carries angular momentum +xi1,
/// F2 carries angular momentum -xi2.
enum class Family : std::uint8_t { F1 = 1, F2 = 2 };

/// Quantum numbers of a single mode. F2 requires xi2 >= 1: the xi2 = 0
/// slice of F2 reproduces the xi1 = 0 slice of F1 and is excluded.
struct ModeIndex {
  Family family;
  std::uint32_t xi1;
  std::uint32_t xi2;

  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Throws std::invalid_argument if the index violates the F2 constraint.
void validate_index(const ModeIndex& idx);

/// Odd-integer eigenvalue factor: eigenvalue = B * (2*level + 1).
/// F1: level = xi2. F2: level = xi1 + xi2.
int mode_level(const ModeIndex& idx);

/// Angular momentum of the mode: +xi1 for F1, -xi2 for F2.
int mode_angular_momentum(const ModeIndex& idx);

struct ModeRecord {
  ModeIndex index;
  double eigenvalue;  // B * (2*level + 1)
  double norm_sq;     // squared L2 norm of the unnormalized kernel
  double bracket;     // sqrt(eigenvalue)
};

/// Generalized Laguerre polynomial L_p^(alpha)(t) via the three-term
/// recurrence, accumulated in compensated (double-double) arithmetic.
double laguerre_eval(unsigned p, unsigned alpha, double t);

/// Unnormalized mode kernel at (x, y):
///   F1: exp(-B r^2 / 2) (x+iy)^xi1 L_{xi2}^(xi1)(B r^2)
///   F2: exp(-B r^2 / 2) (x-iy)^xi2 L_{xi1}^(xi2)(B r^2)
cplx basis_eval(const ModeIndex& idx, double x, double y, FieldStrength field);

/// Exact squared L2 norm of the unnormalized kernel:
///   F1: pi * B^-(xi1+1) * (xi2+xi1)! / xi2!
///   F2: pi * B^-(xi2+1) * (xi1+xi2)! / xi1!
/// Throws std::range_error if the value is not representable in double.
double basis_norm_sq(const ModeIndex& idx, FieldStrength field);

/// Certified eigenvalue of the mode under the fixed-field Hamiltonian:
///   F1: B * (1 + 2*xi2)      F2: B * (1 + 2*(xi1 + xi2))
double mode_eigenvalue(const ModeIndex& idx, FieldStrength field);

/// Applies the Hamiltonian
///   H = (1/2)(-Laplacian + B^2 r^2) + i B d/dtheta
/// to the mode kernel at (x, y) through its closed polynomial form in
/// (x+iy, x-iy): the kernel is Gaussian times a bivariate polynomial, H maps
/// that polynomial to another one by exact differentiation rules, and the
/// result is evaluated directly. No finite-difference truncation enters.
cplx hamiltonian_apply_exact(const ModeIndex& idx, double x, double y,
                             FieldStrength field);

/// Finite mode family closed under the enumeration rule, sorted by
/// (eigenvalue, family, xi1). Indexes are unique.
class ModeTable {
 public:
  ModeTable(std::vector<ModeRecord> modes, int level_cap, int angular_cap,
            FieldStrength field);

  const ModeRecord& operator[](std::size_t i) const { return modes_[i]; }
  std::size_t size() const { return modes_.size(); }
  auto begin() const { return modes_.begin(); }
  auto end() const { return modes_.end(); }

  /// Position of a mode in table order, or nullopt if absent.
  std::optional<std::size_t> find(const ModeIndex& idx) const;

  int level_cap() const { return level_cap_; }
  int angular_cap() const { return angular_cap_; }
  FieldStrength field() const { return field_; }
  double max_eigenvalue() const;
  /// Largest |angular momentum| present.
  int max_abs_angular() const;

  /// Same field strength and caps (tables built from the same rule agree
  /// entrywise, so this is sufficient for coefficient compatibility).
  bool compatible(const ModeTable& other) const;

 private:
  std::vector<ModeRecord> modes_;
  int level_cap_;
  int angular_cap_;
  FieldStrength field_;
};

/// All F1 modes with xi2 <= level_cap, xi1 <= angular_cap, and all F2 modes
/// with xi2 >= 1, xi1 + xi2 <= level_cap. Every eigenvalue is at most
/// B * (2*level_cap + 1); angular momenta span [-level_cap, angular_cap].
ModeTable enumerate_modes(int level_cap, int angular_cap, FieldStrength field);

}  // namespace landau
