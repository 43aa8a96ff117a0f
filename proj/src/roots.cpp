#include "majorana/roots.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace majorana {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Horner {
  cplx p;
  cplx dp;
  double bound;  // sum_k |a_k| |z|^k, the scale of rounding in p
};

Horner horner(std::span<const cplx> a, cplx z) {
  const double az = std::abs(z);
  cplx p = a.back(), dp = 0.0;
  double bound = std::abs(a.back());
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[k];
    bound = bound * az + std::abs(a[k]);
  }
  return {p, dp, bound};
}

// A polynomial together with its reversal z^n p(1/z), which is the well
// scaled chart outside the unit disc.
struct Charts {
  std::vector<cplx> fwd;
  std::vector<cplx> rev;
  int degree() const { return static_cast<int>(fwd.size()) - 1; }
};

Charts make_charts(std::span<const cplx> a) {
  Charts c;
  c.fwd.assign(a.begin(), a.end());
  c.rev.assign(a.rbegin(), a.rend());
  return c;
}

struct NewtonStep {
  cplx correction;  // p(z)/p'(z)
  bool at_rounding;
  double log_abs_p;  // log of max(|p(z)|, rounding floor)
};

NewtonStep newton_step(const Charts& c, cplx z) {
  const int n = c.degree();
  const double mu = 4.0 * n * kEps;
  if (std::abs(z) <= 1.0) {
    const Horner h = horner(c.fwd, z);
    const bool small = std::abs(h.p) <= mu * h.bound;
    const cplx corr = h.p == 0.0 ? cplx(0.0) : (h.dp == 0.0 ? h.p : h.p / h.dp);
    return {corr, small, std::log(std::max(std::abs(h.p), mu * h.bound))};
  }
  // p(z) = z^n q(w), w = 1/z  =>  p'/p = w (n - w q'/q)
  const cplx w = 1.0 / z;
  const Horner h = horner(c.rev, w);
  const bool small = std::abs(h.p) <= mu * h.bound;
  cplx corr = 0.0;
  if (h.p != 0.0) {
    const cplx denom = w * (static_cast<double>(n) - w * h.dp / h.p);
    corr = denom == 0.0 ? z : 1.0 / denom;
  }
  return {corr, small, n * std::log(std::abs(z)) + std::log(std::max(std::abs(h.p), mu * h.bound))};
}

// Starting points on circles whose radii come from the upper convex hull of
// (k, log|a_k|); each hull edge contributes as many points as its width.
std::vector<cplx> initial_points(std::span<const cplx> a) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<int> hull;
  std::vector<double> lg(a.size());
  for (int k = 0; k <= n; ++k) {
    const double m = std::abs(a[static_cast<std::size_t>(k)]);
    lg[static_cast<std::size_t>(k)] = m > 0.0 ? std::log(m) : -std::numeric_limits<double>::infinity();
  }
  for (int k = 0; k <= n; ++k) {
    if (!std::isfinite(lg[static_cast<std::size_t>(k)])) continue;
    while (hull.size() >= 2) {
      const int i = hull[hull.size() - 2], j = hull.back();
      const double cross = (j - i) * (lg[static_cast<std::size_t>(k)] - lg[static_cast<std::size_t>(i)]) -
                           (k - i) * (lg[static_cast<std::size_t>(j)] - lg[static_cast<std::size_t>(i)]);
      if (cross >= 0.0) hull.pop_back();
      else break;
    }
    hull.push_back(k);
  }
  constexpr double kOffset = 0.7;
  std::vector<cplx> z;
  z.reserve(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const int lo = hull[e], hi = hull[e + 1];
    const int count = hi - lo;
    const double radius =
        std::exp((lg[static_cast<std::size_t>(lo)] - lg[static_cast<std::size_t>(hi)]) / count);
    for (int j = 0; j < count; ++j) {
      const double angle = 2.0 * kPi * j / count + 2.0 * kPi * lo / n + kOffset;
      z.push_back(std::polar(radius, angle));
    }
  }
  return z;
}

bool all_finite(const std::vector<cplx>& z) {
  return std::all_of(z.begin(), z.end(), [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

std::vector<cplx> aberth(const Charts& c, const RootFinderOptions& opts, RootFinderReport& report) {
  const std::size_t n = static_cast<std::size_t>(c.degree());
  std::vector<cplx> z = initial_points(c.fwd);
  std::vector<bool> done(n, false);
  report.converged = false;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    report.iterations = it;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const NewtonStep st = newton_step(c, z[i]);
      if (st.at_rounding) {
        done[i] = true;
        continue;
      }
      cplx s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && z[i] != z[j]) s += 1.0 / (z[i] - z[j]);
      }
      const cplx w = st.correction / (1.0 - st.correction * s);
      z[i] -= w;
      if (std::abs(w) <= opts.tolerance * std::abs(z[i])) done[i] = true;
    }
    if (!all_finite(z)) return z;
    if (std::all_of(done.begin(), done.end(), [](bool b) { return b; })) {
      report.converged = true;
      break;
    }
  }
  return z;
}

std::vector<cplx> derivative(std::span<const cplx> a, int order) {
  std::vector<cplx> d(a.begin(), a.end());
  for (int r = 0; r < order && d.size() > 1; ++r) {
    for (std::size_t k = 1; k < d.size(); ++k) d[k - 1] = d[k] * static_cast<double>(k);
    d.pop_back();
  }
  return d;
}

// Newton on the (mult-1)-th derivative, which has a simple root where the
// polynomial has a root of multiplicity `mult`. Steps are kept only while
// they reduce the residual.
cplx refine(const Charts& c, cplx z0, int mult) {
  const bool outside = std::abs(z0) > 1.0;
  const std::vector<cplx> d = derivative(outside ? c.rev : c.fwd, mult - 1);
  if (d.size() < 2) return z0;
  cplx x = outside ? 1.0 / z0 : z0;
  Horner h = horner(d, x);
  for (int it = 0; it < 50 && h.p != 0.0 && h.dp != 0.0; ++it) {
    const cplx step = h.p / h.dp;
    const cplx next = x - step;
    const Horner hn = horner(d, next);
    if (!(std::abs(hn.p) < std::abs(h.p))) break;
    x = next;
    h = hn;
    if (std::abs(step) <= kEps * std::abs(x)) break;
  }
  return outside ? 1.0 / x : x;
}

// Groups roots whose Weierstrass inclusion discs overlap. The radius for
// z_i is n |p(z_i)| / |a_n prod_{j != i} (z_i - z_j)|, with |p| floored at
// the rounding level.
std::vector<std::vector<std::size_t>> clusters(const Charts& c, const std::vector<cplx>& z) {
  const std::size_t n = z.size();
  const double log_lead = std::log(std::abs(c.fwd.back()));
  std::vector<double> radius(n);
  for (std::size_t i = 0; i < n; ++i) {
    double log_r = std::log(static_cast<double>(n)) + newton_step(c, z[i]).log_abs_p - log_lead;
    bool coincident = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = std::abs(z[i] - z[j]);
      if (d == 0.0) coincident = true;
      else log_r -= std::log(d);
    }
    radius[i] = coincident ? 0.0 : std::exp(log_r);
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(z[i] - z[j]) <= radius[i] + radius[j]) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return groups;
}

}  // namespace

std::vector<cplx> companion_roots(std::span<const cplx> coeffs) {
  if (coeffs.empty() || coeffs.back() == 0.0) throw std::invalid_argument("leading coefficient must be nonzero");
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n == 0) return {};
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) m(0, j) = -coeffs[static_cast<std::size_t>(n - 1 - j)] / coeffs.back();
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  const auto& ev = solver.eigenvalues();
  return std::vector<cplx>(ev.data(), ev.data() + n);
}

std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs, const RootFinderOptions& opts,
                                   RootFinderReport* report) {
  if (coeffs.empty() || coeffs.back() == 0.0) throw std::invalid_argument("leading coefficient must be nonzero");
  RootFinderReport local;
  RootFinderReport& rep = report ? *report : local;
  rep = {};

  std::size_t zeros = 0;
  while (zeros + 1 < coeffs.size() && coeffs[zeros] == 0.0) ++zeros;
  std::vector<cplx> out(zeros, 0.0);
  const auto active = coeffs.subspan(zeros);
  if (active.size() == 1) {
    rep.converged = true;
    return out;
  }

  const Charts c = make_charts(active);
  std::vector<cplx> z;
  if (active.size() == 2) {
    z = {-active[0] / active[1]};
    rep.converged = true;
  } else {
    z = aberth(c, opts, rep);
    if (!rep.converged || !all_finite(z)) {
      z = companion_roots(active);
      rep.used_companion = true;
    }
  }

  if (opts.polish && z.size() > 1) {
    std::vector<cplx> polished;
    polished.reserve(z.size());
    for (const auto& group : clusters(c, z)) {
      cplx centroid = 0.0;
      for (std::size_t i : group) centroid += z[i];
      centroid /= static_cast<double>(group.size());
      const int mult = static_cast<int>(group.size());
      if (mult > 1) ++rep.clusters;
      const cplx root = refine(c, centroid, mult);
      polished.insert(polished.end(), group.size(), root);
    }
    z = std::move(polished);
  }
  out.insert(out.end(), z.begin(), z.end());
  return out;
}

}  // namespace majorana
