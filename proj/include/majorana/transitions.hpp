#pragma once

// Parametrized coherent <-> NOON constellation families: a ring of stars at
// common polar angle, and stars spreading along the equator either in one
// direction or symmetrically about zeta = 1.

#include <string>
#include <vector>

#include "majorana/convert.hpp"
#include "majorana/spin.hpp"

namespace majorana {

enum class TransitionKind { ring, spread_unidirectional, spread_symmetric };

/// "ring", "spread", "spread-sym"; throws std::invalid_argument otherwise.
TransitionKind parse_transition_kind(const std::string& name);
std::string to_string(TransitionKind kind);

struct TransitionSpec {
  TransitionKind kind = TransitionKind::ring;
  SpinLabel spin{1};
  /// theta in [0, pi] for the ring, t in [0, 1] for spreading.
  double parameter = 0.0;
};

Constellation transition_constellation(const TransitionSpec& tspec);

/// zeta_j = tan(theta/2) exp(i pi j / S), j = 1..2S. Throws
/// std::invalid_argument for theta outside [0, pi].
Constellation ring_constellation(SpinLabel spin, double theta);

/// Odd K < 2S: coherent value times tanh^2(2S ln tan(theta/2)), which is
/// [(x-1)/(x+1)]^2 with x = tan^{4S}(theta/2); even K < 2S: coherent value;
/// K = 2S: whatever the sum rule leaves.
std::vector<double> ring_multipoles_closed_form(SpinLabel spin, double theta);

/// Stars exp(i pi t j / S), j = 1..2S (unidirectional), or the same set
/// turned by exp(-i pi t (2S+1) / 2S) so that it is symmetric about
/// zeta = 1 (symmetric). For 2S odd the symmetric set is zeta_0 = 1 and
/// zeta_{+-j} = exp(+-i pi t j / S); for 2S even it is
/// zeta_{+-j} = exp(+-i pi t (j - 1/2) / S), j = 1..S.
Constellation spread_constellation(SpinLabel spin, double t, bool symmetric);

/// p_k = sum_j zeta_j^k of the spread constellation in closed form:
/// the symmetric sum is sin(pi k t) / sin(pi k t / 2S) and the
/// unidirectional one carries the extra phase exp(i pi k t (2S+1) / 2S).
cplx spread_power_sum(SpinLabel spin, double t, int k, bool symmetric);

/// e_1, e_2, e_3 of the spread constellation from the closed-form power
/// sums (e_2 = (p1^2 - p2)/2, e_3 = (p1^3 - 3 p1 p2 + 2 p3)/6). Throws
/// std::invalid_argument for any other order.
cplx spread_elementary_closed_form(SpinLabel spin, double t, int order, bool symmetric);

/// Second-order small-t expansion
///   e_j ~ C(2S,j) - pi^2 t^2 (4S^2 - 1) / (12 S) C(2S-2, j-1),
/// times exp(i pi j t (2S+1) / 2S) in the unidirectional case. The
/// remainder is O(t^4).
cplx spread_small_t_expansion(SpinLabel spin, double t, int order, bool symmetric);

/// Lengths of the spread state built from closed-form power sums only:
/// Newton's identities give every e_j, then amplitudes and multipoles.
std::vector<double> spread_multipoles_closed_form(SpinLabel spin, double t, bool symmetric);

struct TransitionRow {
  double param = 0.0;
  int K = 0;
  double pipeline = 0.0;
  double closed_form = 0.0;
};

/// `samples` equally spaced parameters over the full range (endpoints
/// included; a single sample sits at the start). For every parameter and K
/// the pipeline value (roots of the family -> state -> multipoles) is
/// reported next to the closed form. Evaluated in parallel over parameters
/// with at most `threads` workers (0 = hardware concurrency).
std::vector<TransitionRow> transition_sweep(TransitionKind kind, SpinLabel spin, int samples, int threads = 0);

}  // namespace majorana
