#include "majorana/spin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "assignment.hpp"

namespace majorana {

namespace {

double wrap_phi(double phi) {
  double p = std::fmod(phi, 2.0 * kPi);
  if (p < 0.0) p += 2.0 * kPi;
  if (p >= 2.0 * kPi) p = 0.0;
  return p;
}

double squared_norm(std::span<const cplx> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return acc;
}

}  // namespace

SpinLabel::SpinLabel(int two_s) : two_s_(two_s) {
  if (two_s < 0) throw std::invalid_argument("two_s must be non-negative, got " + std::to_string(two_s));
}

int SpinLabel::index_of_two_m(int two_m) const {
  if (std::abs(two_m) > two_s_ || (two_m + two_s_) % 2 != 0) {
    throw std::out_of_range("2m = " + std::to_string(two_m) + " is not a valid projection for 2S = " +
                            std::to_string(two_s_));
  }
  return (two_m + two_s_) / 2;
}

std::string SpinLabel::to_string() const {
  if (is_integer()) return std::to_string(two_s_ / 2);
  return std::to_string(two_s_) + "/2";
}

cplx ExtendedComplex::value() const {
  if (is_infinite()) throw std::logic_error("point at infinity has no finite value");
  return std::get<cplx>(v_);
}

Star Star::from_angles(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw Error("star angles must be finite");
  theta = std::clamp(theta, 0.0, kPi);
  phi = wrap_phi(phi);
  if (theta == 0.0) return Star(0.0, 0.0, cplx(0.0, 0.0));
  if (theta == kPi) return Star(kPi, 0.0, ExtendedComplex::infinity());
  const double r = std::tan(0.5 * theta);
  return Star(theta, phi, std::polar(r, -phi));
}

Star Star::from_zeta(ExtendedComplex zeta) {
  if (zeta.is_infinite()) return Star(kPi, 0.0, zeta);
  const cplx z = zeta.value();
  const double r = std::abs(z);
  if (!std::isfinite(r)) return Star(kPi, 0.0, ExtendedComplex::infinity());
  if (r == 0.0) return Star(0.0, 0.0, cplx(0.0, 0.0));
  const double theta = 2.0 * std::atan(r);
  if (theta >= kPi) return Star(kPi, 0.0, ExtendedComplex::infinity());
  return Star(theta, wrap_phi(-std::arg(z)), z);
}

Star Star::from_unit_vector(const Vec3& v) {
  const double rho = std::hypot(v[0], v[1]);
  const double theta = std::atan2(rho, v[2]);
  const double phi = rho == 0.0 ? 0.0 : std::atan2(v[1], v[0]);
  return from_angles(theta, phi);
}

Vec3 Star::unit_vector() const noexcept {
  const double st = std::sin(theta_);
  return {st * std::cos(phi_), st * std::sin(phi_), std::cos(theta_)};
}

Star stereographic_to_sphere(ExtendedComplex zeta) { return Star::from_zeta(zeta); }

double chordal_distance(const Star& a, const Star& b) {
  const Vec3 u = a.unit_vector();
  const Vec3 v = b.unit_vector();
  return std::sqrt((u[0] - v[0]) * (u[0] - v[0]) + (u[1] - v[1]) * (u[1] - v[1]) + (u[2] - v[2]) * (u[2] - v[2]));
}

SpinState::SpinState(SpinLabel spin, std::vector<cplx> amps) : spin_(spin), amps_(std::move(amps)) {
  if (static_cast<int>(amps_.size()) != spin_.dim()) {
    throw Error("state for spin " + spin_.to_string() + " needs " + std::to_string(spin_.dim()) +
                " amplitudes, got " + std::to_string(amps_.size()));
  }
  for (const auto& z : amps_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error("state amplitudes must be finite");
  }
  const double n2 = squared_norm(amps_);
  if (!(n2 > 0.0)) throw Error("zero state vector cannot be normalized");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : amps_) z *= inv;
}

SpinState SpinState::from_normalized(SpinLabel spin, std::vector<cplx> amps, double tol) {
  const double dev = 1.0 - squared_norm(amps);
  if (std::abs(dev) > tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "normalization 1-Σ|ψ|² = %.3g exceeds %.3g", dev, tol);
    throw Error(buf);
  }
  return SpinState(spin, std::move(amps));
}

SpinState SpinState::basis(SpinLabel spin, int two_m) {
  std::vector<cplx> amps(static_cast<std::size_t>(spin.dim()), 0.0);
  amps[static_cast<std::size_t>(spin.index_of_two_m(two_m))] = 1.0;
  return SpinState(spin, std::move(amps));
}

cplx inner_product(const SpinState& a, const SpinState& b) {
  if (a.spin() != b.spin()) throw std::invalid_argument("inner product of states with different spins");
  cplx acc = 0.0;
  for (std::size_t k = 0; k < a.amps().size(); ++k) acc += std::conj(a.amps()[k]) * b.amps()[k];
  return acc;
}

bool state_equiv(const SpinState& a, const SpinState& b, double tol) {
  return std::abs(inner_product(a, b)) > 1.0 - tol;
}

Constellation::Constellation(SpinLabel spin, std::vector<Star> stars) : spin_(spin), stars_(std::move(stars)) {
  if (static_cast<int>(stars_.size()) != spin_.two_s()) {
    throw Error("constellation for spin " + spin_.to_string() + " needs exactly " + std::to_string(spin_.two_s()) +
                " stars, got " + std::to_string(stars_.size()));
  }
}

Constellation Constellation::from_zetas(SpinLabel spin, std::span<const ExtendedComplex> zetas) {
  std::vector<Star> stars;
  stars.reserve(zetas.size());
  for (const auto& z : zetas) stars.push_back(Star::from_zeta(z));
  return Constellation(spin, std::move(stars));
}

int Constellation::count_infinite() const noexcept {
  return static_cast<int>(std::count_if(stars_.begin(), stars_.end(), [](const Star& s) { return s.at_infinity(); }));
}

std::vector<cplx> Constellation::finite_zetas() const {
  std::vector<cplx> out;
  out.reserve(stars_.size());
  for (const auto& s : stars_) {
    if (!s.at_infinity()) out.push_back(s.zeta().value());
  }
  return out;
}

namespace {

std::vector<double> distance_matrix(const Constellation& a, const Constellation& b) {
  const auto n = a.stars().size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = chordal_distance(a.stars()[i], b.stars()[j]);
  }
  return d;
}

double optimal_max_error(const std::vector<double>& d, std::size_t n) {
  const auto pairing = detail::min_cost_assignment(d, n);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, d[i * n + pairing[i]]);
  return worst;
}

void require_same_spin(const Constellation& a, const Constellation& b) {
  if (a.spin() != b.spin()) throw std::invalid_argument("constellations have different spins");
}

}  // namespace

double matched_chordal_error(const Constellation& a, const Constellation& b) {
  require_same_spin(a, b);
  const auto n = a.stars().size();
  if (n == 0) return 0.0;
  return optimal_max_error(distance_matrix(a, b), n);
}

bool constellations_equal(const Constellation& a, const Constellation& b, double tol) {
  require_same_spin(a, b);
  const auto n = a.stars().size();
  if (n == 0) return true;
  const auto d = distance_matrix(a, b);

  // A greedy miss or a star with several candidates inside tol is settled
  // by the optimal assignment.
  std::vector<bool> used(n, false);
  bool settled = true;
  for (std::size_t i = 0; i < n && settled; ++i) {
    std::size_t best = n;
    int within = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double dij = d[i * n + j];
      if (dij < tol) ++within;
      if (best == n || dij < d[i * n + best]) best = j;
    }
    if (d[i * n + best] >= tol || within > 1) settled = false;
    used[best] = true;
  }
  if (settled) return true;
  return optimal_max_error(d, n) < tol;
}

RotationSU2::RotationSU2(cplx alpha, cplx beta) : alpha_(alpha), beta_(beta) {
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(n2 - 1.0) > 1e-9) throw std::invalid_argument("SU(2) parameters must satisfy |alpha|^2+|beta|^2 = 1");
  const double inv = 1.0 / std::sqrt(n2);
  alpha_ *= inv;
  beta_ *= inv;
}

RotationSU2 RotationSU2::from_axis_angle(const Vec3& axis, double angle) {
  const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (!(len > 0.0)) throw std::invalid_argument("rotation axis must be non-zero");
  const double nx = axis[0] / len, ny = axis[1] / len, nz = axis[2] / len;
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  return {cplx(c, -s * nz), cplx(s * ny, -s * nx)};
}

RotationSU2 RotationSU2::from_euler_zyz(double a, double b, double g) {
  const auto rz1 = from_axis_angle({0, 0, 1}, a);
  const auto ry = from_axis_angle({0, 1, 0}, b);
  const auto rz2 = from_axis_angle({0, 0, 1}, g);
  return rz1.compose(ry.compose(rz2));
}

RotationSU2 RotationSU2::inverse() const noexcept {
  RotationSU2 r = identity();
  r.alpha_ = std::conj(alpha_);
  r.beta_ = -beta_;
  return r;
}

RotationSU2 RotationSU2::compose(const RotationSU2& other) const noexcept {
  RotationSU2 r = identity();
  r.alpha_ = alpha_ * other.alpha_ - std::conj(beta_) * other.beta_;
  r.beta_ = beta_ * other.alpha_ + std::conj(alpha_) * other.beta_;
  return r;
}

Mat3 RotationSU2::so3() const noexcept {
  // R_ij = Tr(sigma_i U sigma_j U^dagger) / 2
  using M2 = std::array<std::array<cplx, 2>, 2>;
  const cplx I(0.0, 1.0);
  const std::array<M2, 3> sigma = {M2{{{0.0, 1.0}, {1.0, 0.0}}}, M2{{{0.0, -I}, {I, 0.0}}},
                                   M2{{{1.0, 0.0}, {0.0, -1.0}}}};
  const M2 u = {{{alpha_, -std::conj(beta_)}, {beta_, std::conj(alpha_)}}};
  M2 ud;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ud[i][j] = std::conj(u[j][i]);
  auto mul = [](const M2& x, const M2& y) {
    M2 z{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return z;
  };
  Mat3 r{};
  for (int j = 0; j < 3; ++j) {
    const M2 conj_sigma = mul(mul(u, sigma[j]), ud);
    for (int i = 0; i < 3; ++i) {
      const M2 p = mul(sigma[i], conj_sigma);
      r[i][j] = 0.5 * (p[0][0] + p[1][1]).real();
    }
  }
  return r;
}

ExtendedComplex RotationSU2::apply(const ExtendedComplex& zeta) const {
  // zeta' = (conj(beta) + alpha zeta) / (conj(alpha) - beta zeta)
  if (zeta.is_infinite()) {
    if (beta_ == cplx(0.0, 0.0)) return ExtendedComplex::infinity();
    return cplx(-alpha_ / beta_);
  }
  const cplx z = zeta.value();
  const cplx den = std::conj(alpha_) - beta_ * z;
  if (den == cplx(0.0, 0.0)) return ExtendedComplex::infinity();
  return cplx((std::conj(beta_) + alpha_ * z) / den);
}

Star RotationSU2::apply(const Star& star) const { return Star::from_zeta(apply(star.zeta())); }

Constellation rotate_constellation(const Constellation& c, const RotationSU2& r) {
  std::vector<Star> out;
  out.reserve(c.stars().size());
  for (const auto& s : c.stars()) out.push_back(r.apply(s));
  return Constellation(c.spin(), std::move(out));
}

Vec3 apply(const Mat3& m, const Vec3& v) noexcept {
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return out;
}

}  // namespace majorana
