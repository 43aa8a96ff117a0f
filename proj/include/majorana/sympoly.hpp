#pragma once

// Elementary symmetric polynomials of star coordinates and their Newton
// identities with power sums.

#include <span>
#include <vector>

#include "majorana/spin.hpp"

namespace majorana {

/// e[j] = e_j(zeta_1..zeta_n), e[0] = 1. `n_infinite` counts stars at
/// infinity that were left out of the variable list.
struct SymPolySet {
  int n = 0;
  std::vector<cplx> e{1.0};
  int n_infinite = 0;
};

/// Built one root at a time with add_root.
SymPolySet elementary_from_roots(std::span<const cplx> roots);

/// e'_k = zeta * e_{k-1} + e_k.
SymPolySet add_root(const SymPolySet& s, cplx zeta);

/// p_1..p_{up_to} via Newton's identities. Throws std::invalid_argument
/// when up_to > n.
std::vector<cplx> power_sums_from_elementary(const SymPolySet& s, int up_to);

/// Inverse of power_sums_from_elementary: p holds p_1..p_n.
SymPolySet elementary_from_power_sums(std::span<const cplx> p);

/// Number of consecutive highest-order polynomials e_n, e_{n-1}, ... whose
/// modulus is at most `tol` (relative to max_j |e_j|). Equals the
/// multiplicity of the star at zeta = 0.
int vanishing_top_count(const SymPolySet& s, double tol = 1e-12);

}  // namespace majorana
