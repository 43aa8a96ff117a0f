#pragma once

// Conversions between amplitudes and Majorana constellations, the stellar
// polynomial, spin coherent states and the Husimi Q function.

#include <span>
#include <vector>

#include "majorana/roots.hpp"
#include "majorana/spin.hpp"

namespace majorana {

/// C(n, k) for k = 0..n in double precision.
std::vector<double> binomial_row(int n);

/// f(z) = sum_k coeffs[k] z^k with coeffs[k] = sqrt(C(2S,k)) psi_{k-S}.
struct StellarPoly {
  SpinLabel spin{0};
  std::vector<cplx> coeffs;
};

StellarPoly stellar_poly(const SpinState& s);

/// Horner evaluation of the stellar polynomial.
cplx stellar_eval(const StellarPoly& p, cplx z);

struct ConvertOptions {
  /// Build amplitudes from per-star homogeneous factors when some star has
  /// |zeta| above `large_zeta`; this keeps near-south-pole stars well scaled.
  bool stabilize = true;
  double large_zeta = 1e3;
  /// A leading coefficient of the working chart with |f_k| <= drop_tolerance * max_j |f_j| counts as zero.
  double drop_tolerance = 1e-12;
  RootFinderOptions roots;
};

/// Amplitudes from the stars via the elementary symmetric polynomials.
/// The highest nonzero amplitude is made real and positive.
SpinState state_from_constellation(const Constellation& c, const ConvertOptions& opts = {});

/// Stars from the roots of the stellar polynomial. Roots are taken in z or
/// in u = 1/z, whichever keeps the product of the nonzero roots inside the
/// unit disc. Each dropped leading coefficient of that chart contributes a
/// star at its infinity (zeta = inf in the z chart, zeta = 0 in the u chart).
/// Throws Error on a zero state.
Constellation constellation_from_state(const SpinState& s, const ConvertOptions& opts = {});

/// Spin coherent state peaked at `at`: amplitudes
/// sqrt(C(2S,k)) sin(theta/2)^k cos(theta/2)^(2S-k) exp(-i k phi).
/// Its 2S stars all sit at the antipode of `at`.
SpinState coherent_state(SpinLabel spin, const Star& at);

/// (|S,S> - |S,-S>)/sqrt(2); stars at the 2S-th roots of unity.
SpinState noon_state(SpinLabel spin);

/// Q(z) = |<z|psi>|^2 = |f(conj z)|^2 / (1 + |z|^2)^(2S), evaluated in the
/// chart (z or 1/z) that keeps every factor bounded.
double husimi_at(const StellarPoly& p, const Star& at);

/// husimi_at over a grid. Safe to call concurrently.
std::vector<double> husimi(const SpinState& s, std::span<const Star> grid);

/// n_theta x n_phi equiangular grid, theta in [0, pi] inclusive and phi in
/// [0, 2 pi) exclusive, row-major with theta outermost.
std::vector<Star> equiangular_grid(int n_theta, int n_phi);

}  // namespace majorana
