#pragma once

// State multipoles rho_Kq = Tr(rho T_Kq^dagger) and their lengths, closed
// forms for coherent and NOON states, Stokes moments from the stars, the
// star-addition update and the spherical 1-design residual.

#include <span>
#include <vector>

#include "majorana/convert.hpp"
#include "majorana/exact.hpp"
#include "majorana/spin.hpp"

namespace majorana {

struct MultipoleSpectrum {
  SpinLabel spin{0};
  /// rho_Kq stored at index K*K + K + q.
  std::vector<cplx> rho;
  /// lengths[K] = sum_q |rho_Kq|^2.
  std::vector<double> lengths;

  static std::size_t index(int K, int q) { return static_cast<std::size_t>(K * K + K + q); }
  cplx at(int K, int q) const { return rho.at(index(K, q)); }
};

/// rho_Kq = sqrt((2K+1)/(2S+1)) sum_m C^{S,m+q}_{S m,K q} psi_{m+q} conj(psi_m),
/// evaluated band by band from cached Clebsch-Gordan values. Bands whose
/// amplitude products all vanish are skipped.
MultipoleSpectrum multipoles_from_state(const SpinState& s);

MultipoleSpectrum multipoles_from_constellation(const Constellation& c, const ConvertOptions& opts = {});

/// max_K |sum_K lengths - 1|.
double sum_rule_error(const MultipoleSpectrum& m);
/// max over (K, q) of |rho_{K,-q} - (-1)^q conj(rho_Kq)|.
double hermiticity_error(const MultipoleSpectrum& m);

/// Lengths for K >= 1 rescaled to sum to one; entry 0 is set to zero.
std::vector<double> normalized_excluding_monopole(std::span<const double> lengths);

/// (2K+1) (2S)!^2 / ((2S-K)! (2S+K+1)!), evaluated with log-gamma.
/// Throws std::out_of_range unless 0 <= K <= 2S.
double coherent_multipole_closed_form(SpinLabel spin, int K);
exact::Rational coherent_multipole_exact(SpinLabel spin, int K);

/// Last multipole of the NOON state: 1/2 + 1/C(4S, 2S) for integer S and
/// 1/2 for half-integer S (S = 0 gives 1).
double noon_last_multipole(SpinLabel spin);
exact::Rational noon_last_multipole_exact(SpinLabel spin);

/// Amplitude-space <S_z^n>.
double sz_moment(const SpinState& s, int n);
/// Amplitude-space (<S_x>, <S_y>, <S_z>).
Vec3 spin_vector(const SpinState& s);

/// <S_z^n> from the stars:
///   |f_r|^2 sum_{k<=r} (k-S)^n |e_{r-k}|^2 / C(2S,k),  r = number of finite stars.
/// With stars at infinity and `auto_rotate`, the constellation is turned by
/// pi about x (zeta -> 1/zeta) and the sign (-1)^n restored; when both poles
/// are occupied the degree-reduced sum above is used directly. Without
/// `auto_rotate` a star at infinity throws Error.
double stokes_moment_z(const Constellation& c, int n, bool auto_rotate = true);

/// (<S_x>, <S_y>, <S_z>) from stokes_moment_z on rigidly rotated copies.
Vec3 stokes_vector(const Constellation& c);

/// Lengths after adding one star at `zeta_new` to 2S-1 stars at zeta = 0:
///   rho_K^2 = c(K,S) [4S^2 + 4S|z|^2 + (K^2+K-2S)^2 |z|^4 / (4S^2)],
///   c(K,S) = (2K+1) (2S-1)!^2 |psi_S|^4 / ((2S-K)! (2S+K+1)!),
/// where S is the spin after the addition.
std::vector<double> star_addition_update(SpinLabel spin_before, cplx zeta_new);

/// |sum_j n_j| written through the stereographic constraints
///   sum_j 2 zeta_j / (1 + |zeta_j|^2),  sum_j (1 - |zeta_j|^2) / (1 + |zeta_j|^2);
/// a star at infinity contributes (0, -1). Zero iff the stars form a 1-design.
double one_design_residual(const Constellation& c);

/// Exact lengths for a constellation whose finite stars have Gaussian
/// rational coordinates; the remaining 2S - zetas.size() stars sit at
/// infinity. Each entry is a RadicalSum that reduces to a rational for a
/// consistent computation.
std::vector<exact::RadicalSum> exact_multipole_lengths(SpinLabel spin, std::span<const exact::GaussRational> zetas);

}  // namespace majorana
