#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "majorana/multipoles.hpp"

using namespace majorana;

namespace {

Constellation degenerate(SpinLabel s, const Star& at) {
  return Constellation(s, std::vector<Star>(static_cast<std::size_t>(s.two_s()), at));
}

void check_spectrum_invariants(const MultipoleSpectrum& m) {
  CHECK(sum_rule_error(m) < 1e-10);
  CHECK(hermiticity_error(m) < 1e-12);
}

}  // namespace

TEST_CASE("coherent closed form") {
  CHECK(coherent_multipole_exact(SpinLabel(1), 1) == exact::Rational(1, 2));
  CHECK(coherent_multipole_exact(SpinLabel(1), 0) == exact::Rational(1, 2));
  for (int two_s = 0; two_s <= 30; ++two_s) {
    const SpinLabel s(two_s);
    CHECK(coherent_multipole_exact(s, 0) == exact::Rational(1, two_s + 1));
    exact::Rational total = 0;
    for (int K = 0; K <= two_s; ++K) {
      total += coherent_multipole_exact(s, K);
      CHECK(coherent_multipole_closed_form(s, K) == doctest::Approx(coherent_multipole_exact(s, K).get_d()).epsilon(1e-12));
    }
    CHECK(total == 1);
  }
  CHECK_THROWS_AS(coherent_multipole_closed_form(SpinLabel(2), 3), std::out_of_range);
}

TEST_CASE("coherent pipeline spectra") {
  oracle::ConstellationGen gen(2);
  for (int two_s = 1; two_s <= 16; ++two_s) {
    const SpinLabel s(two_s);
    const auto m = multipoles_from_constellation(degenerate(s, gen.uniform_star()));
    check_spectrum_invariants(m);
    for (int K = 0; K <= two_s; ++K) CHECK(std::abs(m.lengths[static_cast<std::size_t>(K)] - coherent_multipole_closed_form(s, K)) < 1e-12);
  }
}

TEST_CASE("NOON spectrum and last multipole") {
  CHECK(noon_last_multipole_exact(SpinLabel(2)) == exact::Rational(2, 3));
  CHECK(noon_last_multipole_exact(SpinLabel(3)) == exact::Rational(1, 2));
  const exact::Rational big = noon_last_multipole_exact(SpinLabel(120));
  CHECK(big == exact::Rational(1, 2) + exact::Rational(1, exact::binomial(240, 120)));
  CHECK(std::abs(noon_last_multipole(SpinLabel(120)) - 0.5) < 1e-30);

  const SpinLabel s(12);
  const auto m = multipoles_from_state(noon_state(s));
  check_spectrum_invariants(m);
  for (int K = 1; K < 12; K += 2) CHECK(m.lengths[static_cast<std::size_t>(K)] < 1e-14);
  for (int K = 0; K < 12; K += 2) CHECK(m.lengths[static_cast<std::size_t>(K)] == doctest::Approx(coherent_multipole_closed_form(s, K)).epsilon(1e-12));
  CHECK(m.lengths[12] == doctest::Approx(noon_last_multipole(s)).epsilon(1e-12));
  // order-2S symmetry keeps only q = 0, +-2S
  for (int K = 0; K <= 12; ++K)
    for (int q = -K; q <= K; ++q)
      if (q % 12 != 0) CHECK(std::abs(m.at(K, q)) < 1e-14);
}

TEST_CASE("basis states only populate q = 0") {
  for (int two_s = 1; two_s <= 6; ++two_s) {
    for (int two_m = -two_s; two_m <= two_s; two_m += 2) {
      const auto m = multipoles_from_state(SpinState::basis(SpinLabel(two_s), two_m));
      check_spectrum_invariants(m);
      for (int K = 0; K <= two_s; ++K)
        for (int q = -K; q <= K; ++q)
          if (q != 0) CHECK(m.at(K, q) == cplx(0.0));
    }
  }
}

TEST_CASE("band-wise components equal the trace with independent tensor operators") {
  std::minstd_rand rng(1234);
  for (int two_s = 1; two_s <= 6; ++two_s) {
    std::vector<oracle::BruteCG> tables;
    for (int K = 0; K <= two_s; ++K) tables.emplace_back(two_s, 2 * K);
    for (int trial = 0; trial < 5; ++trial) {
      const auto v = oracle::haar_vec(two_s, rng);
      const auto m = multipoles_from_state(oracle::to_state(v));
      check_spectrum_invariants(m);
      for (int K = 0; K <= two_s; ++K)
        for (int q = -K; q <= K; ++q) {
          const cplx want = oracle::trace_multipole(v, oracle::tensor_op(tables[static_cast<std::size_t>(K)], two_s, K, q));
          CHECK(std::abs(m.at(K, q) - want) < 1e-12);
        }
    }
  }
}

TEST_CASE("monopole-free normalization") {
  const auto n = normalized_excluding_monopole(std::vector<double>{0.25, 0.25, 0.5});
  CHECK(n[0] == 0.0);
  CHECK(n[1] == doctest::Approx(1.0 / 3));
  CHECK(n[2] == doctest::Approx(2.0 / 3));
}

TEST_CASE("moments of S_z from stars") {
  oracle::ConstellationGen gen(31);
  for (int two_s = 1; two_s <= 8; ++two_s) {
    for (int mode = 0; mode <= 4; ++mode) {
      const Constellation c = gen.make(two_s, mode);
      const auto v = oracle::to_vec(state_from_constellation(c));
      for (int n = 0; n <= 4; ++n) {
        const double want = oracle::sz_power(v, n);
        CHECK(std::abs(stokes_moment_z(c, n) - want) < 1e-9);
        CHECK(std::abs(sz_moment(oracle::to_state(v), n) - want) < 1e-12);
      }
    }
  }
  const SpinLabel s(6);
  const Constellation north = degenerate(s, Star::from_angles(0, 0));
  CHECK(stokes_moment_z(north, 0) == doctest::Approx(1.0));
  CHECK(stokes_moment_z(north, 1) == doctest::Approx(3.0));
  const Constellation noon = constellation_from_state(noon_state(s));
  CHECK(std::abs(stokes_moment_z(noon, 1)) < 1e-12);
  CHECK(stokes_moment_z(noon, 2) == doctest::Approx(9.0));
  CHECK_THROWS_AS(stokes_moment_z(degenerate(s, Star::from_angles(kPi, 0)), 1, false), Error);
  CHECK(stokes_moment_z(degenerate(s, Star::from_angles(kPi, 0)), 1) == doctest::Approx(-3.0));
  CHECK_THROWS_AS(stokes_moment_z(noon, -1), std::invalid_argument);
}

TEST_CASE("spin vector from stars and the dipole") {
  oracle::ConstellationGen gen(77);
  for (int two_s = 1; two_s <= 8; ++two_s) {
    const SpinLabel s(two_s);
    const double S = s.s();
    for (int mode = 0; mode <= 3; ++mode) {
      const Constellation c = gen.make(two_s, mode);
      const SpinState psi = state_from_constellation(c);
      const auto v = oracle::to_vec(psi);
      const Vec3 want{v.dot(oracle::sx(two_s) * v).real(), v.dot(oracle::sy(two_s) * v).real(), oracle::sz_power(v, 1)};
      const Vec3 got = stokes_vector(c);
      const Vec3 amp = spin_vector(psi);
      for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(got[i] - want[i]) < 1e-9);
        CHECK(std::abs(amp[i] - want[i]) < 1e-12);
      }
      const double len2 = want[0] * want[0] + want[1] * want[1] + want[2] * want[2];
      CHECK(std::abs(multipoles_from_state(psi).lengths[1] - 3.0 * len2 / (S * (S + 1) * (2 * S + 1))) < 1e-12);
    }
    const Vec3 north = stokes_vector(degenerate(s, Star::from_angles(0, 0)));
    CHECK(std::abs(north[2] - S) < 1e-12);
    if (two_s >= 2) {
      const Vec3 noon = stokes_vector(constellation_from_state(noon_state(s)));
      for (double x : noon) CHECK(std::abs(x) < 1e-12);
    }
    // all stars at zeta = 1: the x component carries the full length
    const Vec3 east = stokes_vector(degenerate(s, Star::from_zeta(cplx(1.0))));
    CHECK(std::abs(std::abs(east[0]) - S) < 1e-12);
    CHECK(std::abs(east[1]) < 1e-12);
    CHECK(std::abs(east[2]) < 1e-12);
  }
}

TEST_CASE("adding a star to a degenerate constellation") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  for (int two_s = 2; two_s <= 12; ++two_s) {
    const SpinLabel before(two_s - 1), after(two_s);
    const auto zero = star_addition_update(before, 0.0);
    for (int K = 0; K <= two_s; ++K) CHECK(std::abs(zero[static_cast<std::size_t>(K)] - coherent_multipole_closed_form(after, K)) < 1e-12);
    for (cplx z : {cplx(1.0), cplx(1e3, 0), cplx(2 * g(rng), 2 * g(rng))}) {
      std::vector<Star> stars(static_cast<std::size_t>(two_s - 1), Star::from_angles(0, 0));
      stars.push_back(Star::from_zeta(z));
      const auto want = multipoles_from_constellation(Constellation(after, stars)).lengths;
      const auto got = star_addition_update(before, z);
      for (int K = 0; K <= two_s; ++K) CHECK(std::abs(got[static_cast<std::size_t>(K)] - want[static_cast<std::size_t>(K)]) < 1e-9);
    }
  }
}

TEST_CASE("1-design residual") {
  for (int two_s = 1; two_s <= 10; ++two_s) {
    const SpinLabel s(two_s);
    // a single star cannot be a 1-design
    CHECK(one_design_residual(constellation_from_state(noon_state(s))) < (two_s == 1 ? 1.0 + 1e-12 : 1e-12));
    CHECK(std::abs(one_design_residual(degenerate(s, Star::from_angles(1.0, 2.0))) - two_s) < 1e-12);
    CHECK(std::abs(one_design_residual(degenerate(s, Star::from_angles(kPi, 0.0))) - two_s) < 1e-12);
  }
  const Star a = Star::from_angles(0.7, 1.9);
  const Star b = Star::from_unit_vector({-a.unit_vector()[0], -a.unit_vector()[1], -a.unit_vector()[2]});
  CHECK(one_design_residual(Constellation(SpinLabel(2), {a, b})) < 1e-12);
  CHECK(one_design_residual(Constellation(SpinLabel(2), {Star::from_angles(0, 0), Star::from_angles(kPi, 0)})) < 1e-15);
}

TEST_CASE("rotations leave lengths unchanged") {
  oracle::ConstellationGen gen(41);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1), a(0, 2 * kPi);
  for (int two_s = 1; two_s <= 12; ++two_s) {
    const Constellation c = gen.make(two_s, static_cast<int>(rng() % 5));
    const auto r = RotationSU2::from_axis_angle({u(rng), u(rng), u(rng)}, a(rng));
    const auto m0 = multipoles_from_constellation(c).lengths;
    const auto m1 = multipoles_from_constellation(rotate_constellation(c, r)).lengths;
    for (std::size_t K = 0; K < m0.size(); ++K) CHECK(std::abs(m0[K] - m1[K]) < 1e-9);
  }
}

TEST_CASE("exact lengths") {
  const exact::GaussRational z(exact::Rational(1, 2), exact::Rational(-1, 3));
  for (int two_s : {1, 3, 6}) {
    const SpinLabel s(two_s);
    const std::vector<exact::GaussRational> zs(static_cast<std::size_t>(two_s), z);
    const auto L = exact_multipole_lengths(s, zs);
    for (int K = 0; K <= two_s; ++K) {
      REQUIRE(L[static_cast<std::size_t>(K)].is_rational());
      CHECK(L[static_cast<std::size_t>(K)].rational_part() == exact::GaussRational(coherent_multipole_exact(s, K)));
    }
  }
  const std::vector<exact::GaussRational> pm{exact::Rational(1), exact::Rational(-1)};
  const auto noon = exact_multipole_lengths(SpinLabel(2), pm);
  CHECK(noon[0].rational_part() == exact::GaussRational(exact::Rational(1, 3)));
  CHECK(noon[1].is_zero());
  CHECK(noon[2].rational_part() == exact::GaussRational(exact::Rational(2, 3)));
  // one finite star, one at infinity
  const std::vector<exact::GaussRational> one{exact::Rational(0)};
  const auto mixed = exact_multipole_lengths(SpinLabel(2), one);
  const auto numeric = multipoles_from_constellation(Constellation(SpinLabel(2), {Star::from_angles(0, 0), Star::from_angles(kPi, 0)})).lengths;
  for (int K = 0; K <= 2; ++K) CHECK(mixed[static_cast<std::size_t>(K)].to_complex().real() == doctest::Approx(numeric[static_cast<std::size_t>(K)]));
  CHECK_THROWS_AS(exact_multipole_lengths(SpinLabel(1), pm), Error);
}
