#include "majorana/multipoles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "majorana/angular.hpp"
#include "majorana/sympoly.hpp"

namespace majorana {

namespace {

void check_k(SpinLabel spin, int K) {
  if (K < 0 || K > spin.two_s()) {
    throw std::out_of_range("multipole order K = " + std::to_string(K) + " outside [0, " +
                            std::to_string(spin.two_s()) + "]");
  }
}

double int_pow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

MultipoleSpectrum multipoles_from_state(const SpinState& s) {
  const SpinLabel spin = s.spin();
  const int n = spin.two_s();
  const auto psi = s.amps();
  const CGBandTable& table = cg_band_table(spin);
  MultipoleSpectrum out{spin, std::vector<cplx>(static_cast<std::size_t>(spin.dim() * spin.dim()), 0.0),
                        std::vector<double>(static_cast<std::size_t>(spin.dim()), 0.0)};
  std::vector<cplx> prod(static_cast<std::size_t>(spin.dim()));
  for (int q = -n; q <= n; ++q) {
    const int k_lo = std::max(0, -q), k_hi = std::min(n, n - q);
    bool any = false;
    for (int k = k_lo; k <= k_hi; ++k) {
      const cplx p = psi[static_cast<std::size_t>(k + q)] * std::conj(psi[static_cast<std::size_t>(k)]);
      prod[static_cast<std::size_t>(k)] = p;
      any = any || p != 0.0;
    }
    if (!any) continue;
    for (int K = std::abs(q); K <= n; ++K) {
      const auto band = table.band(K, q);
      cplx acc = 0.0;
      for (int k = k_lo; k <= k_hi; ++k) acc += band[static_cast<std::size_t>(k)] * prod[static_cast<std::size_t>(k)];
      out.rho[MultipoleSpectrum::index(K, q)] = std::sqrt((2.0 * K + 1.0) / spin.dim()) * acc;
    }
  }
  for (int K = 0; K <= n; ++K) {
    double acc = 0.0;
    for (int q = -K; q <= K; ++q) acc += std::norm(out.rho[MultipoleSpectrum::index(K, q)]);
    out.lengths[static_cast<std::size_t>(K)] = acc;
  }
  return out;
}

MultipoleSpectrum multipoles_from_constellation(const Constellation& c, const ConvertOptions& opts) {
  return multipoles_from_state(state_from_constellation(c, opts));
}

double sum_rule_error(const MultipoleSpectrum& m) {
  return std::abs(std::accumulate(m.lengths.begin(), m.lengths.end(), 0.0) - 1.0);
}

double hermiticity_error(const MultipoleSpectrum& m) {
  double worst = 0.0;
  for (int K = 0; K <= m.spin.two_s(); ++K) {
    for (int q = 0; q <= K; ++q) {
      const cplx expected = (q % 2 == 0 ? 1.0 : -1.0) * std::conj(m.at(K, q));
      worst = std::max(worst, std::abs(m.at(K, -q) - expected));
    }
  }
  return worst;
}

std::vector<double> normalized_excluding_monopole(std::span<const double> lengths) {
  std::vector<double> out(lengths.begin(), lengths.end());
  if (out.empty()) return out;
  out[0] = 0.0;
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  if (total > 0.0) {
    for (auto& v : out) v /= total;
  }
  return out;
}

double coherent_multipole_closed_form(SpinLabel spin, int K) {
  check_k(spin, K);
  const double n = spin.two_s();
  const double log_value = std::log(2.0 * K + 1.0) + 2.0 * std::lgamma(n + 1.0) - std::lgamma(n - K + 1.0) -
                           std::lgamma(n + K + 2.0);
  return std::exp(log_value);
}

exact::Rational coherent_multipole_exact(SpinLabel spin, int K) {
  check_k(spin, K);
  const int n = spin.two_s();
  exact::Integer f_n, f_lo, f_hi;
  mpz_fac_ui(f_n.get_mpz_t(), static_cast<unsigned long>(n));
  mpz_fac_ui(f_lo.get_mpz_t(), static_cast<unsigned long>(n - K));
  mpz_fac_ui(f_hi.get_mpz_t(), static_cast<unsigned long>(n + K + 1));
  exact::Rational r(exact::Integer(2 * K + 1) * f_n * f_n, f_lo * f_hi);
  r.canonicalize();
  return r;
}

double noon_last_multipole(SpinLabel spin) {
  if (spin.two_s() == 0) return 1.0;
  if (!spin.is_integer()) return 0.5;
  const double n = 2.0 * spin.two_s();
  const double log_binom = std::lgamma(n + 1.0) - 2.0 * std::lgamma(0.5 * n + 1.0);
  return 0.5 + std::exp(-log_binom);
}

exact::Rational noon_last_multipole_exact(SpinLabel spin) {
  if (spin.two_s() == 0) return 1;
  if (!spin.is_integer()) return exact::Rational(1, 2);
  exact::Rational r = exact::Rational(1, 2) + exact::Rational(1) / exact::Rational(exact::binomial(2 * spin.two_s(), spin.two_s()));
  r.canonicalize();
  return r;
}

double sz_moment(const SpinState& s, int n) {
  double acc = 0.0;
  for (int k = 0; k < s.spin().dim(); ++k) acc += int_pow(s.spin().m_of(k), n) * std::norm(s.amp(k));
  return acc;
}

Vec3 spin_vector(const SpinState& s) {
  const double S = s.spin().s();
  cplx raise = 0.0;  // <S_+> = <S_x> + i <S_y>
  for (int k = 0; k + 1 < s.spin().dim(); ++k) {
    const double m = s.spin().m_of(k);
    raise += std::conj(s.amp(k + 1)) * std::sqrt(S * (S + 1.0) - m * (m + 1.0)) * s.amp(k);
  }
  return {raise.real(), raise.imag(), sz_moment(s, 1)};
}

namespace {

// |f_r|^2 sum_{k<=r} (k-S)^n |e_{r-k}|^2 / C(2S,k) over the finite stars.
double degree_reduced_moment(const Constellation& c, int n) {
  const SpinLabel spin = c.spin();
  const SymPolySet e = elementary_from_roots(c.finite_zetas());
  const auto binom = binomial_row(spin.two_s());
  double weight = 0.0, acc = 0.0;
  for (int k = 0; k <= e.n; ++k) {
    const double w = std::norm(e.e[static_cast<std::size_t>(e.n - k)]) / binom[static_cast<std::size_t>(k)];
    weight += w;
    acc += int_pow(spin.m_of(k), n) * w;
  }
  return acc / weight;
}

}  // namespace

double stokes_moment_z(const Constellation& c, int n, bool auto_rotate) {
  if (n < 0) throw std::invalid_argument("moment order must be non-negative");
  if (n == 0) return 1.0;
  if (c.count_infinite() == 0) return degree_reduced_moment(c, n);
  if (!auto_rotate) throw Error("constellation has a star at infinity and automatic rotation is disabled");
  const auto zetas = c.finite_zetas();
  const bool north_occupied = std::any_of(zetas.begin(), zetas.end(), [](cplx z) { return z == 0.0; });
  if (north_occupied) return degree_reduced_moment(c, n);
  // pi about x maps zeta to 1/zeta and S_z to -S_z.
  const auto flipped = rotate_constellation(c, RotationSU2::from_axis_angle({1.0, 0.0, 0.0}, kPi));
  const double m = degree_reduced_moment(flipped, n);
  return n % 2 == 0 ? m : -m;
}

Vec3 stokes_vector(const Constellation& c) {
  // The spin vector is the star-frame vector with x reflected, so a rigid
  // rotation taking -x (resp. y) to z exposes <S_x> (resp. <S_y>) as <S_z>.
  const auto to_x = rotate_constellation(c, RotationSU2::from_axis_angle({0.0, 1.0, 0.0}, 0.5 * kPi));
  const auto to_y = rotate_constellation(c, RotationSU2::from_axis_angle({1.0, 0.0, 0.0}, 0.5 * kPi));
  return {stokes_moment_z(to_x, 1), stokes_moment_z(to_y, 1), stokes_moment_z(c, 1)};
}

std::vector<double> star_addition_update(SpinLabel spin_before, cplx zeta_new) {
  const SpinLabel spin(spin_before.two_s() + 1);
  const double S = spin.s();
  const double z2 = std::norm(zeta_new);
  // |psi_S|^2 (1 + |z|^2 / 2S) = 1 for f(z) = psi_S (z^{2S} - zeta_new z^{2S-1}).
  const double psi2 = 1.0 / (1.0 + z2 / (2.0 * S));
  std::vector<double> out(static_cast<std::size_t>(spin.dim()));
  for (int K = 0; K <= spin.two_s(); ++K) {
    // (2S-1)!^2 = (2S)!^2 / (4S^2), so c(K,S) = coh(K,S) |psi_S|^4 / (4S^2).
    const double c = coherent_multipole_closed_form(spin, K) * psi2 * psi2 / (4.0 * S * S);
    const double a = K * K + K - 2.0 * S;
    out[static_cast<std::size_t>(K)] = c * (4.0 * S * S + 4.0 * S * z2 + a * a / (4.0 * S * S) * z2 * z2);
  }
  return out;
}

double one_design_residual(const Constellation& c) {
  cplx planar = 0.0;
  double axial = 0.0;
  for (const Star& s : c.stars()) {
    if (s.at_infinity()) {
      axial -= 1.0;
      continue;
    }
    const cplx z = s.zeta().value();
    const double r2 = std::norm(z);
    planar += 2.0 * z / (1.0 + r2);
    axial += (1.0 - r2) / (1.0 + r2);
  }
  return std::sqrt(std::norm(planar) + axial * axial);
}

std::vector<exact::RadicalSum> exact_multipole_lengths(SpinLabel spin, std::span<const exact::GaussRational> zetas) {
  using exact::GaussRational;
  using exact::PrimePowers;
  using exact::Radical;
  using exact::RadicalSum;
  using exact::Rational;
  const int n = spin.two_s();
  if (static_cast<int>(zetas.size()) > n) throw Error("more finite stars than 2S");

  // Elementary symmetric polynomials by the add-root recurrence.
  std::vector<GaussRational> e{GaussRational(Rational(1))};
  for (const auto& z : zetas) {
    std::vector<GaussRational> next(e.size() + 1);
    next[0] = e[0];
    for (std::size_t k = 1; k < next.size(); ++k) {
      next[k] = z * e[k - 1];
      if (k < e.size()) next[k] += e[k];
    }
    e = std::move(next);
  }
  const int r = static_cast<int>(zetas.size());
  std::vector<GaussRational> f(static_cast<std::size_t>(n) + 1);
  Rational norm = 0;
  for (int k = 0; k <= r; ++k) {
    GaussRational v = e[static_cast<std::size_t>(r - k)];
    if ((r - k) % 2 != 0) v = GaussRational() - v;
    f[static_cast<std::size_t>(k)] = v;
    norm += v.norm() / Rational(exact::binomial(n, k));
  }

  // 1 / sqrt(C(2S,k) C(2S,k')) as a radical.
  auto inv_sqrt_binomials = [&](int k1, int k2) {
    PrimePowers p(n);
    for (int k : {k1, k2}) {
      p.add_factorial(k);
      p.add_factorial(n - k);
      p.add_factorial(n, -1);
    }
    return Radical::sqrt_of(p);
  };

  std::vector<RadicalSum> lengths(static_cast<std::size_t>(n) + 1);
  for (int K = 0; K <= n; ++K) {
    PrimePowers pn(2 * n + 2);
    pn.add_integer(2 * K + 1);
    pn.add_integer(n + 1, -1);
    const Radical scale = Radical::sqrt_of(pn);
    for (int q = -K; q <= K; ++q) {
      RadicalSum rho;
      for (int k = std::max(0, -q); k <= std::min(n, n - q); ++k) {
        const GaussRational prod = f[static_cast<std::size_t>(k + q)] * f[static_cast<std::size_t>(k)].conj();
        if (prod.is_zero()) continue;
        const auto cg = clebsch_gordan({n, spin.two_m_of(k), 2 * K, 2 * q, spin.two_m_of(k + q)});
        if (sgn(cg.radical.coeff) == 0) continue;
        const Radical rad = scale * cg.radical * inv_sqrt_binomials(k, k + q);
        rho += RadicalSum::term(prod * GaussRational(rad.coeff / norm), rad.squarefree);
      }
      lengths[static_cast<std::size_t>(K)] += rho * rho.conj();
    }
  }
  return lengths;
}

}  // namespace majorana
