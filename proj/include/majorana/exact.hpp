#pragma once

// Exact arithmetic used by the angular-momentum and exact-spectrum code:
// prime-exponent factorials, Gaussian rationals, and sums of square roots
// of squarefree integers with Gaussian-rational coefficients.

#include <gmpxx.h>

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace majorana::exact {

using Integer = mpz_class;
using Rational = mpq_class;

/// All primes <= n (ascending).
std::vector<int> primes_up_to(int n);

/// Exponent of each prime (as listed by primes_up_to(n)) in n!.
/// Memoized; safe to call concurrently.
const std::vector<int>& factorial_exponents(int n);

/// Positive rational in prime-exponent form over a fixed prime list.
class PrimePowers {
 public:
  explicit PrimePowers(int prime_bound);

  /// Multiplies in (n!)^power.
  void add_factorial(int n, int power = 1);
  /// Multiplies in value^power; `value` must factor over the prime list.
  void add_integer(long value, int power = 1);

  int prime_bound() const noexcept { return bound_; }
  const std::vector<int>& primes() const noexcept { return primes_; }
  const std::vector<int>& exponents() const noexcept { return exps_; }

  Rational to_rational() const;

 private:
  int bound_;
  std::vector<int> primes_;
  std::vector<int> exps_;
};

/// coeff * sqrt(squarefree), squarefree >= 1.
struct Radical {
  Rational coeff{0};
  Integer squarefree{1};

  /// sqrt(p) for a prime-power rational, brought to canonical form.
  static Radical sqrt_of(const PrimePowers& p);

  /// Signed square: sign(coeff) * coeff^2 * squarefree.
  Rational signed_square() const;
  double to_double() const;
};

Radical operator*(const Radical& a, const Radical& b);

struct GaussRational {
  Rational re{0};
  Rational im{0};

  GaussRational() = default;
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  GaussRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b);
  friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
};

/// Finite sum  sum_s c_s sqrt(s)  over distinct squarefree s, c_s in Q(i).
/// Canonical: no zero coefficients are stored, so equality is exact.
class RadicalSum {
 public:
  RadicalSum() = default;
  RadicalSum(const Radical& r);  // NOLINT
  RadicalSum(const GaussRational& c);  // NOLINT

  static RadicalSum term(const GaussRational& c, const Integer& squarefree);

  bool is_zero() const { return terms_.empty(); }
  /// True when only the sqrt(1) term is present (or the sum is zero).
  bool is_rational() const;
  /// Coefficient of sqrt(1).
  GaussRational rational_part() const;
  RadicalSum conj() const;
  std::complex<double> to_complex() const;
  std::size_t size() const { return terms_.size(); }
  std::string to_string() const;

  RadicalSum& operator+=(const RadicalSum& o);
  friend RadicalSum operator+(RadicalSum a, const RadicalSum& b) { return a += b; }
  friend RadicalSum operator*(const RadicalSum& a, const RadicalSum& b);
  friend bool operator==(const RadicalSum& a, const RadicalSum& b);

 private:
  void add_term(const Integer& s, const GaussRational& c);
  std::map<Integer, GaussRational> terms_;
};

/// Binomial coefficient C(n, k) as an exact integer.
Integer binomial(int n, int k);

std::string to_string(const Rational& q);

}  // namespace majorana::exact
