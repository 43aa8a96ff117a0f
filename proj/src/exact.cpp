#include "majorana/exact.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace majorana::exact {

std::vector<int> primes_up_to(int n) {
  std::vector<int> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (int p = 2; p <= n; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    out.push_back(p);
    for (long q = static_cast<long>(p) * p; q <= n; q += p) composite[static_cast<std::size_t>(q)] = true;
  }
  return out;
}

const std::vector<int>& factorial_exponents(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  static std::mutex mu;
  static std::map<int, std::vector<int>> table;
  std::lock_guard lock(mu);
  auto it = table.find(n);
  if (it != table.end()) return it->second;
  // Legendre: e_p(n!) = sum_i floor(n / p^i)
  std::vector<int> exps;
  for (int p : primes_up_to(n)) {
    int e = 0;
    for (long q = p; q <= n; q *= p) e += static_cast<int>(n / q);
    exps.push_back(e);
  }
  return table.emplace(n, std::move(exps)).first->second;
}

PrimePowers::PrimePowers(int prime_bound)
    : bound_(prime_bound), primes_(primes_up_to(prime_bound)), exps_(primes_.size(), 0) {}

void PrimePowers::add_factorial(int n, int power) {
  if (n > bound_) throw std::out_of_range("factorial argument exceeds prime bound");
  const auto& fe = factorial_exponents(n);
  for (std::size_t i = 0; i < fe.size(); ++i) exps_[i] += power * fe[i];
}

void PrimePowers::add_integer(long value, int power) {
  if (value <= 0) throw std::invalid_argument("PrimePowers holds positive values only");
  for (std::size_t i = 0; i < primes_.size() && value > 1; ++i) {
    const long p = primes_[i];
    while (value % p == 0) {
      value /= p;
      exps_[i] += power;
    }
  }
  if (value != 1) throw std::invalid_argument("integer has a prime factor above the prime bound");
}

Rational PrimePowers::to_rational() const {
  Integer num = 1, den = 1;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const int e = exps_[i];
    if (e == 0) continue;
    Integer pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(primes_[i]), static_cast<unsigned long>(std::abs(e)));
    if (e > 0) num *= pw;
    else den *= pw;
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

int floor_half(int e) { return e >= 0 ? e / 2 : -((-e + 1) / 2); }

}  // namespace

Radical Radical::sqrt_of(const PrimePowers& p) {
  Integer num = 1, den = 1, sf = 1;
  const auto& primes = p.primes();
  const auto& exps = p.exponents();
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const int e = exps[i];
    if (e == 0) continue;
    const int half = floor_half(e);
    if (e - 2 * half == 1) sf *= primes[i];
    if (half == 0) continue;
    Integer pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(primes[i]), static_cast<unsigned long>(std::abs(half)));
    if (half > 0) num *= pw;
    else den *= pw;
  }
  Radical r;
  r.coeff = Rational(num, den);
  r.coeff.canonicalize();
  r.squarefree = sf;
  return r;
}

Rational Radical::signed_square() const {
  Rational sq = coeff * coeff * Rational(squarefree);
  return sgn(coeff) < 0 ? Rational(-sq) : sq;
}

double Radical::to_double() const { return coeff.get_d() * std::sqrt(squarefree.get_d()); }

Radical operator*(const Radical& a, const Radical& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.squarefree.get_mpz_t(), b.squarefree.get_mpz_t());
  Radical r;
  r.coeff = a.coeff * b.coeff * Rational(g);
  r.squarefree = (a.squarefree / g) * (b.squarefree / g);
  if (sgn(r.coeff) == 0) r.squarefree = 1;
  return r;
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRational operator*(const GaussRational& a, const GaussRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

RadicalSum::RadicalSum(const Radical& r) { add_term(r.squarefree, GaussRational(r.coeff)); }

RadicalSum::RadicalSum(const GaussRational& c) { add_term(Integer(1), c); }

RadicalSum RadicalSum::term(const GaussRational& c, const Integer& squarefree) {
  RadicalSum s;
  s.add_term(squarefree, c);
  return s;
}

void RadicalSum::add_term(const Integer& s, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool RadicalSum::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

GaussRational RadicalSum::rational_part() const {
  auto it = terms_.find(Integer(1));
  return it == terms_.end() ? GaussRational{} : it->second;
}

RadicalSum RadicalSum::conj() const {
  RadicalSum out;
  for (const auto& [s, c] : terms_) out.terms_.emplace(s, c.conj());
  return out;
}

std::complex<double> RadicalSum::to_complex() const {
  std::complex<double> acc = 0.0;
  for (const auto& [s, c] : terms_) acc += c.to_complex() * std::sqrt(s.get_d());
  return acc;
}

std::string RadicalSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [s, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + exact::to_string(c.re);
    if (sgn(c.im) != 0) out += (sgn(c.im) > 0 ? "+" : "-") + exact::to_string(Rational(abs(c.im))) + "i";
    out += ")";
    if (s != 1) out += "*sqrt(" + s.get_str() + ")";
  }
  return out;
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& o) {
  for (const auto& [s, c] : o.terms_) add_term(s, c);
  return *this;
}

RadicalSum operator*(const RadicalSum& a, const RadicalSum& b) {
  RadicalSum out;
  Integer g;
  for (const auto& [sa, ca] : a.terms_) {
    for (const auto& [sb, cb] : b.terms_) {
      mpz_gcd(g.get_mpz_t(), sa.get_mpz_t(), sb.get_mpz_t());
      out.add_term((sa / g) * (sb / g), ca * cb * GaussRational(Rational(g)));
    }
  }
  return out;
}

bool operator==(const RadicalSum& a, const RadicalSum& b) { return a.terms_ == b.terms_; }

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace majorana::exact
