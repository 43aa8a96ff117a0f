#include "majorana/sympoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace majorana {

SymPolySet add_root(const SymPolySet& s, cplx zeta) {
  SymPolySet out;
  out.n = s.n + 1;
  out.n_infinite = s.n_infinite;
  out.e.assign(static_cast<std::size_t>(out.n) + 1, 0.0);
  out.e[0] = 1.0;
  for (int k = 1; k <= out.n; ++k) {
    const cplx prev = s.e[static_cast<std::size_t>(k - 1)];
    const cplx same = k <= s.n ? s.e[static_cast<std::size_t>(k)] : cplx(0.0);
    out.e[static_cast<std::size_t>(k)] = zeta * prev + same;
  }
  return out;
}

SymPolySet elementary_from_roots(std::span<const cplx> roots) {
  SymPolySet s;
  for (const auto& z : roots) s = add_root(s, z);
  return s;
}

std::vector<cplx> power_sums_from_elementary(const SymPolySet& s, int up_to) {
  if (up_to > s.n) {
    throw std::invalid_argument("power sums requested up to " + std::to_string(up_to) + " but only " +
                                std::to_string(s.n) + " variables");
  }
  // p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
  std::vector<cplx> p(static_cast<std::size_t>(std::max(up_to, 0)) + 1, 0.0);
  for (int k = 1; k <= up_to; ++k) {
    cplx acc = 0.0;
    double sign = 1.0;
    for (int i = 1; i < k; ++i) {
      acc += sign * s.e[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(k - i)];
      sign = -sign;
    }
    acc += sign * static_cast<double>(k) * s.e[static_cast<std::size_t>(k)];
    p[static_cast<std::size_t>(k)] = acc;
  }
  p.erase(p.begin());
  return p;
}

SymPolySet elementary_from_power_sums(std::span<const cplx> p) {
  // k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
  SymPolySet s;
  s.n = static_cast<int>(p.size());
  s.e.assign(p.size() + 1, 0.0);
  s.e[0] = 1.0;
  for (int k = 1; k <= s.n; ++k) {
    cplx acc = 0.0;
    double sign = 1.0;
    for (int i = 1; i <= k; ++i) {
      acc += sign * s.e[static_cast<std::size_t>(k - i)] * p[static_cast<std::size_t>(i - 1)];
      sign = -sign;
    }
    s.e[static_cast<std::size_t>(k)] = acc / static_cast<double>(k);
  }
  return s;
}

int vanishing_top_count(const SymPolySet& s, double tol) {
  double scale = 0.0;
  for (const auto& z : s.e) scale = std::max(scale, std::abs(z));
  int count = 0;
  for (int j = s.n; j >= 1; --j) {
    if (std::abs(s.e[static_cast<std::size_t>(j)]) > tol * scale) break;
    ++count;
  }
  return count;
}

}  // namespace majorana
