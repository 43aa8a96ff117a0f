#pragma once

// Simultaneous root finding for the stellar polynomial: Aberth-Ehrlich
// iteration with a companion-matrix fallback, followed by cluster detection
// and polishing so that repeated roots come back as exact repeats.

#include <span>
#include <vector>

#include "majorana/spin.hpp"

namespace majorana {

struct RootFinderOptions {
  int max_iterations = 200;
  /// Relative step size below which a root counts as converged.
  double tolerance = 1e-13;
  /// Merge clusters into repeated roots and polish with Newton steps.
  bool polish = true;
};

struct RootFinderReport {
  int iterations = 0;
  bool converged = false;
  bool used_companion = false;
  /// Number of multi-root clusters replaced by a repeated root.
  int clusters = 0;
};

/// Roots of sum_k coeffs[k] z^k with multiplicity. The leading coefficient
/// must be nonzero (std::invalid_argument otherwise). Exactly zero low-order
/// coefficients give exact zero roots.
std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs, const RootFinderOptions& opts = {},
                                   RootFinderReport* report = nullptr);

/// Eigenvalues of the companion matrix; no polishing.
std::vector<cplx> companion_roots(std::span<const cplx> coeffs);

}  // namespace majorana
