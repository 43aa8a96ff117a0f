#pragma once

// Clebsch-Gordan coefficients from Racah's closed-form sum, evaluated in
// exact integer arithmetic, and the irreducible tensor operators T_Kq
// built from them.

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>

#include "majorana/exact.hpp"
#include "majorana/spin.hpp"

namespace majorana {

/// Key for C^{S m'}_{S m, K q}; all quantum numbers doubled.
struct CGKey {
  int two_s = 0;
  int two_m = 0;
  int two_k = 0;
  int two_q = 0;
  int two_m_out = 0;

  friend bool operator==(const CGKey&, const CGKey&) = default;
};

struct CGKeyHash {
  std::size_t operator()(const CGKey& k) const noexcept;
};

struct CGValue {
  /// The coefficient equals sign * sqrt(|signed_square|).
  exact::Rational signed_square{0};
  double float_value = 0.0;
  /// Same coefficient as coeff * sqrt(squarefree).
  exact::Radical radical;
};

/// General coefficient <j1 m1; j2 m2 | j m> (doubled arguments), Condon-Shortley
/// phase. Total: returns zero for any invalid combination. Not cached.
CGValue racah_clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m);

/// Double-precision value of the same coefficient, computed from the exact
/// sum without reducing the final fraction.
double racah_clebsch_gordan_float(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m);

/// C^{S m'}_{S m, K q}, cached without eviction. Thread-safe.
CGValue clebsch_gordan(const CGKey& key);

/// Number of entries currently in the clebsch_gordan cache.
std::size_t clebsch_gordan_cache_size();

/// Float Clebsch-Gordan values for one spin laid out by band: for each
/// (K, q) a vector over the input index k = S + m holding C^{S,m+q}_{S m,K q}
/// (zero where m + q is out of range). Bands are computed on first use and
/// shared between threads.
class CGBandTable {
 public:
  explicit CGBandTable(SpinLabel spin);
  ~CGBandTable();
  CGBandTable(const CGBandTable&) = delete;
  CGBandTable& operator=(const CGBandTable&) = delete;

  SpinLabel spin() const noexcept { return spin_; }
  std::span<const double> band(int K, int q) const;

 private:
  struct Impl;
  SpinLabel spin_;
  Impl* impl_;
};

/// Process-wide table for `spin`.
const CGBandTable& cg_band_table(SpinLabel spin);

struct TensorOp {
  SpinLabel spin{0};
  int K = 0;
  int q = 0;
  Eigen::MatrixXcd matrix;
};

/// T_Kq = sqrt((2K+1)/(2S+1)) sum_m C^{S,m+q}_{S m,K q} |S,m+q><S,m|,
/// rows and columns indexed by k = S + m. Throws std::out_of_range unless
/// 0 <= K <= 2S and |q| <= K. Cached per (S, K, q).
const TensorOp& tensor_operator(SpinLabel spin, int K, int q);

}  // namespace majorana
