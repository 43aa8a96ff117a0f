#include "majorana/convert.hpp"

#include <algorithm>
#include <cmath>

#include "majorana/sympoly.hpp"

namespace majorana {

namespace {

// Rotates the global phase so the highest nonzero amplitude is real positive.
void fix_phase(std::vector<cplx>& amps) {
  for (std::size_t k = amps.size(); k-- > 0;) {
    const double r = std::abs(amps[k]);
    if (r == 0.0) continue;
    const cplx u = std::conj(amps[k]) / r;
    for (auto& a : amps) a *= u;
    amps[k] = r;
    return;
  }
}

SpinState from_stellar_coeffs(SpinLabel spin, const std::vector<cplx>& f) {
  const auto binom = binomial_row(spin.two_s());
  std::vector<cplx> amps(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) amps[k] = f[k] / std::sqrt(binom[k]);
  fix_phase(amps);
  return SpinState(spin, std::move(amps));
}

// f(z) = prod_j (cos(theta_j/2) z - sin(theta_j/2) e^{-i phi_j}); every
// factor has unit norm, so no coefficient blows up for stars near the south
// pole. A star at infinity contributes a constant factor.
std::vector<cplx> homogeneous_coeffs(const Constellation& c) {
  const int n = c.spin().two_s();
  std::vector<cplx> f(static_cast<std::size_t>(n) + 1, 0.0);
  f[0] = 1.0;
  int deg = 0;
  for (const Star& s : c.stars()) {
    const double a = s.at_infinity() ? 0.0 : std::cos(0.5 * s.theta());
    const cplx b = std::polar(s.at_infinity() ? 1.0 : std::sin(0.5 * s.theta()), -s.phi());
    ++deg;
    for (int k = deg; k >= 0; --k) {
      const cplx lower = k > 0 ? f[static_cast<std::size_t>(k - 1)] : cplx(0.0);
      f[static_cast<std::size_t>(k)] = a * lower - b * f[static_cast<std::size_t>(k)];
    }
  }
  return f;
}

}  // namespace

std::vector<double> binomial_row(int n) {
  std::vector<double> row(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) {
    row[static_cast<std::size_t>(k)] =
        row[static_cast<std::size_t>(k - 1)] * static_cast<double>(n - k + 1) / static_cast<double>(k);
  }
  for (int k = 0; k <= n; ++k) row[static_cast<std::size_t>(k)] = std::round(row[static_cast<std::size_t>(k)]);
  return row;
}

StellarPoly stellar_poly(const SpinState& s) {
  const auto binom = binomial_row(s.spin().two_s());
  StellarPoly p{s.spin(), std::vector<cplx>(s.amps().begin(), s.amps().end())};
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) p.coeffs[k] *= std::sqrt(binom[k]);
  return p;
}

cplx stellar_eval(const StellarPoly& p, cplx z) {
  cplx acc = 0.0;
  for (std::size_t k = p.coeffs.size(); k-- > 0;) acc = acc * z + p.coeffs[k];
  return acc;
}

SpinState state_from_constellation(const Constellation& c, const ConvertOptions& opts) {
  const SpinLabel spin = c.spin();
  const std::vector<cplx> zetas = c.finite_zetas();
  const bool large = std::any_of(zetas.begin(), zetas.end(), [&](cplx z) { return std::abs(z) > opts.large_zeta; });
  if (opts.stabilize && large) return from_stellar_coeffs(spin, homogeneous_coeffs(c));

  // f_k = (-1)^{r-k} f_r e_{r-k} for k <= r, r = number of finite stars.
  const SymPolySet e = elementary_from_roots(zetas);
  const int r = e.n;
  std::vector<cplx> f(static_cast<std::size_t>(spin.dim()), 0.0);
  for (int k = 0; k <= r; ++k) {
    const cplx v = e.e[static_cast<std::size_t>(r - k)];
    f[static_cast<std::size_t>(k)] = (r - k) % 2 == 0 ? v : -v;
  }
  return from_stellar_coeffs(spin, f);
}

Constellation constellation_from_state(const SpinState& s, const ConvertOptions& opts) {
  const StellarPoly p = stellar_poly(s);
  const int n = s.spin().two_s();
  double scale = 0.0;
  for (const auto& v : p.coeffs) scale = std::max(scale, std::abs(v));
  auto kept = [&](int k) { return std::abs(p.coeffs[static_cast<std::size_t>(k)]) > opts.drop_tolerance * scale; };
  int hi = n, lo = 0;
  while (hi >= 0 && p.coeffs[static_cast<std::size_t>(hi)] == cplx(0.0)) --hi;
  if (hi < 0 || scale == 0.0) throw Error("state has no coefficient above the drop tolerance");
  while (p.coeffs[static_cast<std::size_t>(lo)] == cplx(0.0)) ++lo;

  // Work in the chart where the nonzero roots have product modulus <= 1;
  // small leading coefficients there become stars at that chart's infinity.
  const bool reversed = std::abs(p.coeffs[static_cast<std::size_t>(lo)]) > std::abs(p.coeffs[static_cast<std::size_t>(hi)]);
  std::vector<Star> stars;
  stars.reserve(static_cast<std::size_t>(n));
  if (!reversed) {
    int r = hi;
    while (!kept(r)) --r;
    const std::span<const cplx> active(p.coeffs.data(), static_cast<std::size_t>(r) + 1);
    for (const cplx& z : polynomial_roots(active, opts.roots)) stars.push_back(Star::from_zeta(z));
  } else {
    int l = lo;
    while (!kept(l)) ++l;
    std::vector<cplx> g;
    for (int k = hi; k >= l; --k) g.push_back(p.coeffs[static_cast<std::size_t>(k)]);
    for (const cplx& u : polynomial_roots(g, opts.roots)) stars.push_back(Star::from_zeta(1.0 / u));
    while (static_cast<int>(stars.size()) < hi) stars.push_back(Star::from_angles(0.0, 0.0));
  }
  while (static_cast<int>(stars.size()) < n) stars.push_back(Star::from_zeta(ExtendedComplex::infinity()));
  return Constellation(s.spin(), std::move(stars));
}

SpinState coherent_state(SpinLabel spin, const Star& at) {
  const int n = spin.two_s();
  const auto binom = binomial_row(n);
  const double c = at.at_infinity() ? 0.0 : std::cos(0.5 * at.theta());
  const double s = std::sin(0.5 * at.theta());
  std::vector<cplx> amps(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double mag = std::sqrt(binom[static_cast<std::size_t>(k)]) * std::pow(s, k) * std::pow(c, n - k);
    amps[static_cast<std::size_t>(k)] = std::polar(mag, -k * at.phi());
  }
  return SpinState(spin, std::move(amps));
}

SpinState noon_state(SpinLabel spin) {
  std::vector<cplx> amps(static_cast<std::size_t>(spin.dim()), 0.0);
  amps.front() = -1.0 / std::sqrt(2.0);
  amps.back() = 1.0 / std::sqrt(2.0);
  if (spin.two_s() == 0) amps.front() = 1.0;
  return SpinState(spin, std::move(amps));
}

double husimi_at(const StellarPoly& p, const Star& at) {
  const double two_s = static_cast<double>(p.spin.two_s());
  if (at.at_infinity()) return std::norm(p.coeffs.back());
  const cplx z = at.zeta().value();
  if (std::abs(z) <= 1.0) {
    const cplx f = stellar_eval(p, std::conj(z));
    return std::norm(f) / std::exp(two_s * std::log1p(std::norm(z)));
  }
  // f(conj z) = conj(z)^{2S} g(u) with u = 1 / conj(z) and g the reversed
  // polynomial, so Q = |g(u)|^2 / (1 + |u|^2)^{2S}.
  const cplx u = 1.0 / std::conj(z);
  cplx g = 0.0;
  for (const auto& coeff : p.coeffs) g = g * u + coeff;
  return std::norm(g) / std::exp(two_s * std::log1p(std::norm(u)));
}

std::vector<double> husimi(const SpinState& s, std::span<const Star> grid) {
  const StellarPoly p = stellar_poly(s);
  std::vector<double> q(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) q[i] = husimi_at(p, grid[i]);
  return q;
}

std::vector<Star> equiangular_grid(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("grid dimensions must be positive");
  std::vector<Star> grid;
  grid.reserve(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi));
  for (int i = 0; i < n_theta; ++i) {
    const double theta = n_theta == 1 ? 0.0 : (i == n_theta - 1 ? kPi : kPi * i / (n_theta - 1));
    for (int j = 0; j < n_phi; ++j) grid.push_back(Star::from_angles(theta, 2.0 * kPi * j / n_phi));
  }
  return grid;
}

}  // namespace majorana
