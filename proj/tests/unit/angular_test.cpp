#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "majorana/angular.hpp"

using namespace majorana;

namespace {

CGValue cg(int two_s, int two_m, int K, int q) { return clebsch_gordan({two_s, two_m, 2 * K, 2 * q, two_m + 2 * q}); }

// Sum over m of C^{S,m+q}_{S m,K q} C^{S,m+q}_{S m,K' q} in exact arithmetic.
exact::RadicalSum exact_overlap(int two_s, int K, int Kp, int q) {
  exact::RadicalSum sum;
  for (int two_m = -two_s; two_m <= two_s; two_m += 2) {
    if (std::abs(two_m + 2 * q) > two_s) continue;
    sum += exact::RadicalSum(cg(two_s, two_m, K, q).radical * cg(two_s, two_m, Kp, q).radical);
  }
  return sum;
}

}  // namespace

TEST_CASE("Clebsch-Gordan reference values") {
  for (int two_s = 0; two_s <= 8; ++two_s) {
    for (int two_m = -two_s; two_m <= two_s; two_m += 2) {
      const CGValue v = cg(two_s, two_m, 0, 0);
      CHECK(v.signed_square == 1);
      CHECK(v.float_value == 1.0);
    }
  }
  const CGValue stretched = racah_clebsch_gordan(1, 1, 1, 1, 2, 2);
  CHECK(stretched.signed_square == 1);
  const CGValue singlet_partner = racah_clebsch_gordan(1, -1, 1, 1, 2, 0);
  CHECK(singlet_partner.signed_square == exact::Rational(1, 2));
  CHECK(singlet_partner.float_value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(racah_clebsch_gordan(1, -1, 1, 1, 0, 0).float_value == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(racah_clebsch_gordan_float(1, -1, 1, 1, 2, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("invalid keys give exact zero") {
  CHECK(cg(2, 0, 3, 0).signed_square == 0);           // K > 2S
  CHECK(clebsch_gordan({2, 0, 2, 2, 0}).signed_square == 0);  // m + q != m'
  CHECK(clebsch_gordan({2, 1, 2, 0, 1}).signed_square == 0);  // parity
  CHECK(clebsch_gordan({2, 2, 2, 2, 4}).signed_square == 0);  // |m'| > S
  CHECK(racah_clebsch_gordan(1, 1, 1, 1, 4, 2).float_value == 0.0);
}

TEST_CASE("Racah values match brute-force coupling for S <= 3") {
  for (int two_s = 1; two_s <= 6; ++two_s) {
    for (int K = 0; K <= two_s; ++K) {
      const oracle::BruteCG brute(two_s, 2 * K);
      for (int two_m = -two_s; two_m <= two_s; two_m += 2) {
        for (int q = -K; q <= K; ++q) {
          const double want = brute(two_m, 2 * q, two_s, two_m + 2 * q);
          const CGValue got = cg(two_s, two_m, K, q);
          CHECK(std::abs(got.float_value - want) < 1e-12);
          CHECK(std::abs(got.radical.to_double() - want) < 1e-12);
          const double sq = got.signed_square.get_d();
          CHECK(std::abs(sq - (want < 0 ? -want * want : want * want)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("general Racah values match brute-force coupling") {
  for (int t1 = 0; t1 <= 4; ++t1) {
    for (int t2 = 0; t2 <= 4; ++t2) {
      const oracle::BruteCG brute(t1, t2);
      for (int tj = std::abs(t1 - t2); tj <= t1 + t2; tj += 2) {
        for (int m1 = -t1; m1 <= t1; m1 += 2) {
          for (int m2 = -t2; m2 <= t2; m2 += 2) {
            const double want = brute(m1, m2, tj, m1 + m2);
            CHECK(std::abs(racah_clebsch_gordan(t1, m1, t2, m2, tj, m1 + m2).float_value - want) < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("exact orthogonality over m carries (2S+1)/(2K+1)") {
  for (int two_s : {1, 4, 7}) {
    for (int K = 0; K <= two_s; ++K) {
      for (int Kp = K; Kp <= two_s; ++Kp) {
        for (int q = -std::min(K, Kp); q <= std::min(K, Kp); ++q) {
          const auto sum = exact_overlap(two_s, K, Kp, q);
          if (K == Kp) {
            CHECK(sum == exact::RadicalSum(exact::GaussRational(exact::Rational(two_s + 1) / (2 * K + 1))));
          } else {
            CHECK(sum.is_zero());
          }
        }
      }
    }
  }
}

TEST_CASE("big-integer values at 2S = 240 stay finite and normalized") {
  const int two_s = 240;
  for (int K : {1, 60, 119, 240}) {
    double total = 0.0;
    for (int two_m = -two_s; two_m <= two_s; two_m += 2) {
      const double v = cg(two_s, two_m, K, 0).float_value;
      REQUIRE(std::isfinite(v));
      total += v * v;
    }
    CHECK(total == doctest::Approx((two_s + 1.0) / (2 * K + 1)).epsilon(1e-12));
  }
  const CGValue v = cg(two_s, 0, 240, 0);
  CHECK(v.radical.to_double() == doctest::Approx(v.float_value).epsilon(1e-13));
}

TEST_CASE("band table mirrors the per-key values") {
  const SpinLabel s(5);
  const CGBandTable& t = cg_band_table(s);
  for (int K = 0; K <= 5; ++K) {
    for (int q = -K; q <= K; ++q) {
      const auto band = t.band(K, q);
      for (int k = 0; k <= 5; ++k) {
        const double want = (k + q < 0 || k + q > 5) ? 0.0 : cg(5, 2 * k - 5, K, q).float_value;
        CHECK(std::abs(band[static_cast<std::size_t>(k)] - want) < 1e-14);
      }
    }
  }
  CHECK_THROWS_AS(t.band(6, 0), std::out_of_range);
  CHECK_THROWS_AS(t.band(2, 3), std::out_of_range);
}

TEST_CASE("tensor operators") {
  for (int two_s = 0; two_s <= 6; ++two_s) {
    const SpinLabel s(two_s);
    const auto& t00 = tensor_operator(s, 0, 0).matrix;
    CHECK((t00 - Eigen::MatrixXcd::Identity(two_s + 1, two_s + 1) / std::sqrt(two_s + 1.0)).norm() < 1e-14);
    for (int K = 0; K <= two_s; ++K) {
      for (int q = -K; q <= K; ++q) {
        const auto& a = tensor_operator(s, K, q).matrix;
        const auto& b = tensor_operator(s, K, -q).matrix;
        const double sign = (q % 2 == 0) ? 1.0 : -1.0;
        CHECK((b - sign * a.adjoint()).norm() < 1e-12);
      }
    }
  }
  const auto& t10 = tensor_operator(SpinLabel(1), 1, 0).matrix;
  CHECK(t10(0, 0).real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(t10(1, 1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(t10(0, 1)) == 0.0);
  const auto& t21 = tensor_operator(SpinLabel(2), 2, 1).matrix;
  CHECK((t21 * t21.adjoint()).trace().real() == doctest::Approx(1.0));
  CHECK_THROWS_AS(tensor_operator(SpinLabel(2), 3, 0), std::out_of_range);
}

TEST_CASE("tensor operators are complete and orthonormal") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int two_s = 1; two_s <= 5; ++two_s) {
    const SpinLabel s(two_s);
    const int d = two_s + 1;
    for (int K = 0; K <= two_s; ++K) {
      for (int q = -K; q <= K; ++q) {
        for (int Kp = 0; Kp <= two_s; ++Kp) {
          for (int qp = -Kp; qp <= Kp; ++qp) {
            const cplx ip = (tensor_operator(s, K, q).matrix * tensor_operator(s, Kp, qp).matrix.adjoint()).trace();
            CHECK(std::abs(ip - cplx((K == Kp && q == qp) ? 1.0 : 0.0)) < 1e-12);
          }
        }
      }
    }
    for (int trial = 0; trial < 4; ++trial) {
      Eigen::MatrixXcd A(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) A(i, j) = cplx(g(rng), g(rng));
      double sum = 0.0;
      for (int K = 0; K <= two_s; ++K)
        for (int q = -K; q <= K; ++q) sum += std::norm((A * tensor_operator(s, K, q).matrix.adjoint()).trace());
      const double want = (A * A.adjoint()).trace().real();
      CHECK(std::abs(sum - want) < 1e-9 * want);
    }
  }
}
