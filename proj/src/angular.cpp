#include "majorana/angular.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>

namespace majorana {

namespace {

using exact::Integer;
using exact::PrimePowers;
using exact::Rational;

// Racah's sum for <a al; b be | c ga>:
//   C = sqrt(P) * sum_t (-1)^t / [t! (a+b-c-t)! (a-al-t)! (b+be-t)! (c-b+al+t)! (c-a-be+t)!]
//   P = (2c+1) (a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!
//       * (a+al)! (a-al)! (b+be)! (b-be)! (c+ga)! (c-ga)!
// The sum is factored as term(t_min) * H with H a ratio of integers built by
// Horner's rule on the consecutive-term ratios. The result is returned as
//   sign * prod_p p^scale_p * numer / denom * sqrt(squarefree).
struct RacahParts {
  bool zero = true;
  std::vector<int> primes;
  std::vector<int> scale;
  Integer numer{0};
  Integer denom{1};
  Integer squarefree{1};
};

bool odd(int x) { return (x & 1) != 0; }

RacahParts racah_parts(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m) {
  RacahParts out;
  if (two_j1 < 0 || two_j2 < 0 || two_j < 0) return out;
  if (two_m1 + two_m2 != two_m) return out;
  if (std::abs(two_m1) > two_j1 || std::abs(two_m2) > two_j2 || std::abs(two_m) > two_j) return out;
  if (odd(two_j1 + two_m1) || odd(two_j2 + two_m2) || odd(two_j + two_m)) return out;
  if (odd(two_j1 + two_j2 + two_j)) return out;
  if (two_j < std::abs(two_j1 - two_j2) || two_j > two_j1 + two_j2) return out;

  const int a_plus = (two_j1 + two_m1) / 2, a_minus = (two_j1 - two_m1) / 2;
  const int b_plus = (two_j2 + two_m2) / 2, b_minus = (two_j2 - two_m2) / 2;
  const int c_plus = (two_j + two_m) / 2, c_minus = (two_j - two_m) / 2;
  const int abc = (two_j1 + two_j2 - two_j) / 2;
  const int acb = (two_j1 - two_j2 + two_j) / 2;
  const int bca = (-two_j1 + two_j2 + two_j) / 2;
  const int total = (two_j1 + two_j2 + two_j) / 2 + 1;
  const int x4 = (two_j - two_j2 + two_m1) / 2;
  const int x5 = (two_j - two_j1 - two_m2) / 2;

  const int t_min = std::max({0, -x4, -x5});
  const int t_max = std::min({abc, a_minus, b_plus});
  if (t_min > t_max) return out;

  PrimePowers p(total);
  p.add_integer(two_j + 1);
  p.add_factorial(abc);
  p.add_factorial(acb);
  p.add_factorial(bca);
  p.add_factorial(total, -1);
  for (int f : {a_plus, a_minus, b_plus, b_minus, c_plus, c_minus}) p.add_factorial(f);

  PrimePowers first_term(total);
  for (int f : {t_min, abc - t_min, a_minus - t_min, b_plus - t_min, x4 + t_min, x5 + t_min}) {
    first_term.add_factorial(f);
  }

  out.primes = p.primes();
  out.scale.resize(out.primes.size());
  for (std::size_t i = 0; i < out.primes.size(); ++i) {
    const int e = p.exponents()[i];
    const int half = e >= 0 ? e / 2 : -((-e + 1) / 2);
    if (e - 2 * half == 1) out.squarefree *= out.primes[i];
    out.scale[i] = half - first_term.exponents()[i];
  }

  // H = 1 + r_{t_min} (1 + r_{t_min+1} (1 + ...)), r_t = -n_t / d_t.
  Integer num = 1, den = 1, tmp;
  for (int t = t_max - 1; t >= t_min; --t) {
    const unsigned long n_t = static_cast<unsigned long>(abc - t) * static_cast<unsigned long>(a_minus - t) *
                              static_cast<unsigned long>(b_plus - t);
    const unsigned long d_t = static_cast<unsigned long>(t + 1) * static_cast<unsigned long>(x4 + t + 1) *
                              static_cast<unsigned long>(x5 + t + 1);
    mpz_mul_ui(tmp.get_mpz_t(), den.get_mpz_t(), d_t);
    mpz_mul_ui(num.get_mpz_t(), num.get_mpz_t(), n_t);
    mpz_sub(num.get_mpz_t(), tmp.get_mpz_t(), num.get_mpz_t());
    den = tmp;
  }
  if (odd(t_min)) num = -num;
  out.zero = sgn(num) == 0;
  out.numer = num;
  out.denom = den;
  return out;
}

void apply_scale(const RacahParts& r, Integer& num, Integer& den) {
  num = r.numer;
  den = r.denom;
  Integer pw;
  for (std::size_t i = 0; i < r.primes.size(); ++i) {
    const int e = r.scale[i];
    if (e == 0) continue;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(r.primes[i]), static_cast<unsigned long>(std::abs(e)));
    if (e > 0) num *= pw;
    else den *= pw;
  }
}

double ratio_to_double(const Integer& num, const Integer& den) {
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, num.get_mpz_t());
  const double md = mpz_get_d_2exp(&ed, den.get_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

}  // namespace

std::size_t CGKeyHash::operator()(const CGKey& k) const noexcept {
  std::size_t h = static_cast<std::size_t>(k.two_s);
  for (int v : {k.two_m, k.two_k, k.two_q, k.two_m_out}) h = h * 1000003u ^ static_cast<std::size_t>(v + 4096);
  return h;
}

CGValue racah_clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m) {
  const RacahParts r = racah_parts(two_j1, two_m1, two_j2, two_m2, two_j, two_m);
  CGValue v;
  if (r.zero) return v;
  Integer num, den;
  apply_scale(r, num, den);
  v.radical.coeff = Rational(num, den);
  v.radical.coeff.canonicalize();
  v.radical.squarefree = r.squarefree;
  v.signed_square = v.radical.signed_square();
  v.float_value = v.radical.to_double();
  return v;
}

double racah_clebsch_gordan_float(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m) {
  const RacahParts r = racah_parts(two_j1, two_m1, two_j2, two_m2, two_j, two_m);
  if (r.zero) return 0.0;
  Integer num, den;
  apply_scale(r, num, den);
  return ratio_to_double(num, den) * std::sqrt(r.squarefree.get_d());
}

namespace {

struct CGCache {
  std::shared_mutex mu;
  std::unordered_map<CGKey, CGValue, CGKeyHash> map;
};

CGCache& cg_cache() {
  static CGCache cache;
  return cache;
}

}  // namespace

CGValue clebsch_gordan(const CGKey& key) {
  auto& cache = cg_cache();
  {
    std::shared_lock lock(cache.mu);
    auto it = cache.map.find(key);
    if (it != cache.map.end()) return it->second;
  }
  if (key.two_m + key.two_q != key.two_m_out) return {};
  CGValue v = racah_clebsch_gordan(key.two_s, key.two_m, key.two_k, key.two_q, key.two_s, key.two_m_out);
  std::unique_lock lock(cache.mu);
  return cache.map.try_emplace(key, std::move(v)).first->second;
}

std::size_t clebsch_gordan_cache_size() {
  auto& cache = cg_cache();
  std::shared_lock lock(cache.mu);
  return cache.map.size();
}

struct CGBandTable::Impl {
  explicit Impl(int n_bands) : flags(new std::once_flag[static_cast<std::size_t>(n_bands)]), bands(n_bands) {}
  std::unique_ptr<std::once_flag[]> flags;
  std::vector<std::vector<double>> bands;
};

CGBandTable::CGBandTable(SpinLabel spin) : spin_(spin), impl_(new Impl(spin.dim() * spin.dim())) {}

CGBandTable::~CGBandTable() { delete impl_; }

std::span<const double> CGBandTable::band(int K, int q) const {
  const int two_s = spin_.two_s();
  if (K < 0 || K > two_s || std::abs(q) > K) throw std::out_of_range("CG band (K, q) out of range");
  const auto idx = static_cast<std::size_t>(K * K + q + K);
  std::call_once(impl_->flags[idx], [&] {
    std::vector<double> values(static_cast<std::size_t>(spin_.dim()), 0.0);
    if (q < 0) {
      // C^{S,m+q}_{S m,K q} = (-1)^K C^{S,-m-q}_{S,-m;K,-q}
      const auto mirror = band(K, -q);
      const double sign = K % 2 == 0 ? 1.0 : -1.0;
      for (int k = 0; k <= two_s; ++k) values[static_cast<std::size_t>(k)] = sign * mirror[static_cast<std::size_t>(two_s - k)];
    } else {
      for (int k = 0; k + q <= two_s; ++k) {
        const int two_m = 2 * k - two_s;
        values[static_cast<std::size_t>(k)] =
            racah_clebsch_gordan_float(two_s, two_m, 2 * K, 2 * q, two_s, two_m + 2 * q);
      }
    }
    impl_->bands[idx] = std::move(values);
  });
  return impl_->bands[idx];
}

const CGBandTable& cg_band_table(SpinLabel spin) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CGBandTable>> tables;
  std::lock_guard lock(mu);
  auto& slot = tables[spin.two_s()];
  if (!slot) slot = std::make_unique<CGBandTable>(spin);
  return *slot;
}

const TensorOp& tensor_operator(SpinLabel spin, int K, int q) {
  if (K < 0 || K > spin.two_s() || std::abs(q) > K) {
    throw std::out_of_range("tensor operator needs 0 <= K <= 2S and |q| <= K");
  }
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, TensorOp> cache;
  const auto key = std::make_tuple(spin.two_s(), K, q);
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  TensorOp op{spin, K, q, Eigen::MatrixXcd::Zero(spin.dim(), spin.dim())};
  const double norm = std::sqrt((2.0 * K + 1.0) / spin.dim());
  for (int k = 0; k < spin.dim(); ++k) {
    const int k_out = k + q;
    if (k_out < 0 || k_out >= spin.dim()) continue;
    const CGValue c = clebsch_gordan({spin.two_s(), spin.two_m_of(k), 2 * K, 2 * q, spin.two_m_of(k_out)});
    op.matrix(k_out, k) = norm * c.float_value;
  }
  std::lock_guard lock(mu);
  return cache.try_emplace(key, std::move(op)).first->second;
}

}  // namespace majorana
