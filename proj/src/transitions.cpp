#include "majorana/transitions.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "majorana/multipoles.hpp"
#include "majorana/parallel.hpp"
#include "majorana/sympoly.hpp"

namespace majorana {

namespace {

void check_spread(SpinLabel spin, double t) {
  if (spin.two_s() < 1) throw std::invalid_argument("spreading needs at least one star");
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("spreading parameter t must lie in [0, 1]");
}

// sin(pi x) / sin(pi x / n) with the argument reduced near the removable
// singularities x = n m, where the value is n (-1)^{m (n+1)}.
double dirichlet(double x, int n) {
  const double m = std::round(x / n);
  const double d = x - n * m;
  const double sign = std::fmod(std::abs(m) * (n + 1), 2.0) == 0.0 ? 1.0 : -1.0;
  if (d == 0.0) return sign * n;
  return sign * std::sin(kPi * d) / std::sin(kPi * d / n);
}

}  // namespace

TransitionKind parse_transition_kind(const std::string& name) {
  if (name == "ring") return TransitionKind::ring;
  if (name == "spread") return TransitionKind::spread_unidirectional;
  if (name == "spread-sym") return TransitionKind::spread_symmetric;
  throw std::invalid_argument("unknown transition kind '" + name + "' (expected ring, spread or spread-sym)");
}

std::string to_string(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::ring: return "ring";
    case TransitionKind::spread_unidirectional: return "spread";
    case TransitionKind::spread_symmetric: return "spread-sym";
  }
  return "ring";
}

Constellation transition_constellation(const TransitionSpec& tspec) {
  if (tspec.kind == TransitionKind::ring) return ring_constellation(tspec.spin, tspec.parameter);
  return spread_constellation(tspec.spin, tspec.parameter, tspec.kind == TransitionKind::spread_symmetric);
}

Constellation ring_constellation(SpinLabel spin, double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) throw std::invalid_argument("ring polar angle must lie in [0, pi]");
  std::vector<Star> stars;
  const double S = spin.s();
  for (int j = 1; j <= spin.two_s(); ++j) stars.push_back(Star::from_angles(theta, -kPi * j / S));
  return Constellation(spin, std::move(stars));
}

std::vector<double> ring_multipoles_closed_form(SpinLabel spin, double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) throw std::invalid_argument("ring polar angle must lie in [0, pi]");
  const int n = spin.two_s();
  const double bracket = std::pow(std::tanh(n * std::log(std::tan(0.5 * theta))), 2);
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  double partial = 0.0;
  for (int K = 0; K < n; ++K) {
    const double coh = coherent_multipole_closed_form(spin, K);
    out[static_cast<std::size_t>(K)] = K % 2 == 1 ? coh * bracket : coh;
    partial += out[static_cast<std::size_t>(K)];
  }
  out[static_cast<std::size_t>(n)] = 1.0 - partial;
  return out;
}

Constellation spread_constellation(SpinLabel spin, double t, bool symmetric) {
  check_spread(spin, t);
  const int n = spin.two_s();
  const double S = spin.s();
  std::vector<Star> stars;
  for (int j = 1; j <= n; ++j) {
    const double offset = symmetric ? j - 0.5 * (n + 1) : j;
    stars.push_back(Star::from_angles(0.5 * kPi, -kPi * t * offset / S));
  }
  return Constellation(spin, std::move(stars));
}

cplx spread_power_sum(SpinLabel spin, double t, int k, bool symmetric) {
  check_spread(spin, t);
  const int n = spin.two_s();
  const double real = dirichlet(k * t, n);
  if (symmetric) return real;
  return std::polar(1.0, kPi * k * t * (n + 1) / n) * real;
}

cplx spread_elementary_closed_form(SpinLabel spin, double t, int order, bool symmetric) {
  if (order < 1 || order > 3) {
    throw std::invalid_argument("closed form available for orders 1..3 only; use elementary_from_roots");
  }
  const cplx p1 = spread_power_sum(spin, t, 1, symmetric);
  if (order == 1) return p1;
  const cplx p2 = spread_power_sum(spin, t, 2, symmetric);
  if (order == 2) return 0.5 * (p1 * p1 - p2);
  const cplx p3 = spread_power_sum(spin, t, 3, symmetric);
  return (p1 * p1 * p1 - 3.0 * p1 * p2 + 2.0 * p3) / 6.0;
}

cplx spread_small_t_expansion(SpinLabel spin, double t, int order, bool symmetric) {
  check_spread(spin, t);
  const int n = spin.two_s();
  if (order < 1 || order > n) throw std::invalid_argument("expansion order must lie in [1, 2S]");
  const double S = spin.s();
  const auto row = binomial_row(n);
  const double lower = order - 1 <= n - 2 && n >= 2 ? binomial_row(n - 2)[static_cast<std::size_t>(order - 1)] : 0.0;
  const double value = row[static_cast<std::size_t>(order)] - kPi * kPi * t * t * (4.0 * S * S - 1.0) / (12.0 * S) * lower;
  if (symmetric) return value;
  return std::polar(1.0, kPi * order * t * (n + 1) / n) * value;
}

std::vector<double> spread_multipoles_closed_form(SpinLabel spin, double t, bool symmetric) {
  const int n = spin.two_s();
  std::vector<cplx> p(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) p[static_cast<std::size_t>(k - 1)] = spread_power_sum(spin, t, k, symmetric);
  const SymPolySet e = elementary_from_power_sums(p);
  const auto binom = binomial_row(n);
  std::vector<cplx> amps(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const cplx v = e.e[static_cast<std::size_t>(n - k)];
    amps[static_cast<std::size_t>(k)] = ((n - k) % 2 == 0 ? v : -v) / std::sqrt(binom[static_cast<std::size_t>(k)]);
  }
  return multipoles_from_state(SpinState(spin, std::move(amps))).lengths;
}

std::vector<TransitionRow> transition_sweep(TransitionKind kind, SpinLabel spin, int samples, int threads) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const double end = kind == TransitionKind::ring ? kPi : 1.0;
  const auto per = static_cast<std::size_t>(spin.dim());
  std::vector<TransitionRow> rows(static_cast<std::size_t>(samples) * per);
  parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t i) {
    const double param = samples == 1 ? 0.0 : (i + 1 == static_cast<std::size_t>(samples) ? end : end * i / (samples - 1));
    const TransitionSpec tspec{kind, spin, param};
    const auto pipeline = multipoles_from_constellation(transition_constellation(tspec)).lengths;
    const auto closed = kind == TransitionKind::ring
                            ? ring_multipoles_closed_form(spin, param)
                            : spread_multipoles_closed_form(spin, param, kind == TransitionKind::spread_symmetric);
    for (std::size_t K = 0; K < per; ++K) {
      rows[i * per + K] = {param, static_cast<int>(K), pipeline[K], closed[K]};
    }
  });
  return rows;
}

}  // namespace majorana
