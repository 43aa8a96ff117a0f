#pragma once

// Core value types: spin labels, pure states, Majorana stars and
// constellations, and SU(2) rotations acting on them.
//
// Stereographic convention used throughout the library:
//     zeta = tan(theta/2) * exp(-i phi)
// The north pole is zeta = 0 and the south pole is the point at infinity.
// Basis ordering: amplitude index k = S + m, ascending (m = -S first).

#include <array>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace majorana {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double kPi = 3.14159265358979323846;

/// Domain-level failure (bad input data, failed validation).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spin quantum number stored as 2S so half-integers stay exact.
class SpinLabel {
 public:
  explicit SpinLabel(int two_s);

  int two_s() const noexcept { return two_s_; }
  double s() const noexcept { return 0.5 * two_s_; }
  int dim() const noexcept { return two_s_ + 1; }
  bool is_integer() const noexcept { return two_s_ % 2 == 0; }

  /// Magnetic number m for basis index k.
  double m_of(int k) const noexcept { return k - 0.5 * two_s_; }
  /// 2m for basis index k.
  int two_m_of(int k) const noexcept { return 2 * k - two_s_; }
  /// Basis index for 2m; throws std::out_of_range when |m| > S or parity is wrong.
  int index_of_two_m(int two_m) const;

  std::string to_string() const;

  friend bool operator==(SpinLabel, SpinLabel) = default;

 private:
  int two_s_;
};

/// Tag for the point at infinity of the extended complex plane.
struct PointAtInfinity {
  friend bool operator==(PointAtInfinity, PointAtInfinity) = default;
};

/// Complex number or the point at infinity (the south pole).
class ExtendedComplex {
 public:
  ExtendedComplex(cplx z) : v_(z) {}  // NOLINT: implicit by intent
  ExtendedComplex(PointAtInfinity inf) : v_(inf) {}  // NOLINT
  static ExtendedComplex infinity() { return ExtendedComplex(PointAtInfinity{}); }

  bool is_infinite() const noexcept { return std::holds_alternative<PointAtInfinity>(v_); }
  /// The finite value; throws std::logic_error on infinity.
  cplx value() const;

 private:
  std::variant<cplx, PointAtInfinity> v_;
};

/// A point on the unit sphere, carried both as angles and as its
/// stereographic coordinate.
class Star {
 public:
  static Star from_angles(double theta, double phi);
  static Star from_zeta(ExtendedComplex zeta);
  static Star from_unit_vector(const Vec3& v);

  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }
  const ExtendedComplex& zeta() const noexcept { return zeta_; }
  bool at_infinity() const noexcept { return zeta_.is_infinite(); }
  Vec3 unit_vector() const noexcept;

 private:
  Star(double theta, double phi, ExtendedComplex zeta) : theta_(theta), phi_(phi), zeta_(zeta) {}

  double theta_;
  double phi_;
  ExtendedComplex zeta_;
};

Star stereographic_to_sphere(ExtendedComplex zeta);

/// 3D Euclidean distance between the unit vectors of two stars.
double chordal_distance(const Star& a, const Star& b);

/// Normalized pure state in the |S,m> basis. amps[k] = psi_{k-S}.
class SpinState {
 public:
  /// Normalizes `amps`; throws Error on a zero vector or wrong length.
  SpinState(SpinLabel spin, std::vector<cplx> amps);

  /// Accepts only input already normalized within `tol`, then renormalizes.
  /// The error message reports the measured deviation.
  static SpinState from_normalized(SpinLabel spin, std::vector<cplx> amps, double tol = 1e-9);

  /// |S, m> with m = two_m / 2.
  static SpinState basis(SpinLabel spin, int two_m);

  SpinLabel spin() const noexcept { return spin_; }
  std::span<const cplx> amps() const noexcept { return amps_; }
  cplx amp(int k) const { return amps_.at(static_cast<std::size_t>(k)); }

 private:
  SpinLabel spin_;
  std::vector<cplx> amps_;
};

/// <a|b>; throws std::invalid_argument on dimension mismatch.
cplx inner_product(const SpinState& a, const SpinState& b);

/// Projective equality: |<a|b>| > 1 - tol.
bool state_equiv(const SpinState& a, const SpinState& b, double tol);

/// Exactly 2S stars; stars at infinity are kept explicitly.
class Constellation {
 public:
  Constellation(SpinLabel spin, std::vector<Star> stars);
  static Constellation from_zetas(SpinLabel spin, std::span<const ExtendedComplex> zetas);

  SpinLabel spin() const noexcept { return spin_; }
  std::span<const Star> stars() const noexcept { return stars_; }
  int count_infinite() const noexcept;
  std::vector<cplx> finite_zetas() const;

 private:
  SpinLabel spin_;
  std::vector<Star> stars_;
};

/// Largest chordal distance over an optimal (min-cost) pairing of the two
/// star multisets. Throws std::invalid_argument on spin mismatch.
double matched_chordal_error(const Constellation& a, const Constellation& b);

/// Multiset equality under chordal tolerance. Greedy nearest-neighbour
/// pairing, with an optimal assignment when the greedy pass is ambiguous.
bool constellations_equal(const Constellation& a, const Constellation& b, double tol = 1e-8);

using Mat3 = std::array<std::array<double, 3>, 3>;

/// SU(2) element [[alpha, -conj(beta)], [beta, conj(alpha)]].
class RotationSU2 {
 public:
  RotationSU2(cplx alpha, cplx beta);

  static RotationSU2 identity() { return {1.0, 0.0}; }
  /// Right-handed rotation by `angle` about `axis` (need not be unit length).
  static RotationSU2 from_axis_angle(const Vec3& axis, double angle);
  /// R_z(a) R_y(b) R_z(g).
  static RotationSU2 from_euler_zyz(double a, double b, double g);

  cplx alpha() const noexcept { return alpha_; }
  cplx beta() const noexcept { return beta_; }

  RotationSU2 inverse() const noexcept;
  /// (*this) after `other`.
  RotationSU2 compose(const RotationSU2& other) const noexcept;
  Mat3 so3() const noexcept;

  /// Moebius action on stereographic coordinates; agrees with so3() acting
  /// on the star's unit vector.
  ExtendedComplex apply(const ExtendedComplex& zeta) const;
  Star apply(const Star& star) const;

 private:
  cplx alpha_;
  cplx beta_;
};

Constellation rotate_constellation(const Constellation& c, const RotationSU2& r);

Vec3 apply(const Mat3& m, const Vec3& v) noexcept;

}  // namespace majorana
