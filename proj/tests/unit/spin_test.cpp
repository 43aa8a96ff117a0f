#include <doctest.h>

#include <random>

#include "majorana/convert.hpp"
#include "majorana/spin.hpp"

using namespace majorana;

TEST_CASE("stereographic projection of special points") {
  const Star n = Star::from_zeta(cplx(0.0));
  CHECK(n.theta() == 0.0);
  CHECK(n.phi() == 0.0);
  const Star s = Star::from_zeta(ExtendedComplex::infinity());
  CHECK(s.theta() == doctest::Approx(kPi));
  CHECK(s.phi() == 0.0);
  CHECK(s.at_infinity());
  const Star e = Star::from_zeta(cplx(1.0));
  CHECK(e.theta() == doctest::Approx(kPi / 2));
  CHECK(e.phi() == doctest::Approx(0.0));
  CHECK(Star::from_angles(kPi, 1.3).at_infinity());
  CHECK(Star::from_angles(0.0, 1.3).phi() == 0.0);
}

TEST_CASE("zeta follows tan(theta/2) exp(-i phi)") {
  const Star s = Star::from_angles(1.1, 0.4);
  const cplx z = s.zeta().value();
  CHECK(std::abs(z - std::tan(0.55) * std::exp(cplx(0, -0.4))) < 1e-15);
  const Vec3 v = s.unit_vector();
  CHECK(v[0] == doctest::Approx(std::sin(1.1) * std::cos(0.4)));
  CHECK(v[1] == doctest::Approx(std::sin(1.1) * std::sin(0.4)));
  CHECK(v[2] == doctest::Approx(std::cos(1.1)));
}

TEST_CASE("angle and sphere round trips") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> th(1e-3, kPi - 1e-3), ph(0.0, 2 * kPi);
  for (int i = 0; i < 500; ++i) {
    const double t = th(rng), p = ph(rng);
    const Star a = Star::from_angles(t, p);
    const Star b = Star::from_zeta(a.zeta());
    CHECK(std::abs(b.theta() - t) < 1e-12);
    CHECK(std::abs(std::remainder(b.phi() - p, 2 * kPi)) < 1e-12);
    CHECK(chordal_distance(a, Star::from_unit_vector(a.unit_vector())) < 1e-12);
  }
}

TEST_CASE("Moebius action agrees with the SO(3) matrix") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0), a(0.0, 2 * kPi);
  for (int i = 0; i < 200; ++i) {
    const RotationSU2 r = RotationSU2::from_axis_angle({u(rng), u(rng), u(rng)}, a(rng));
    const Star s = Star::from_angles(std::acos(u(rng)), a(rng));
    const Vec3 want = apply(r.so3(), s.unit_vector());
    const Vec3 got = r.apply(s).unit_vector();
    for (int c = 0; c < 3; ++c) CHECK(std::abs(want[c] - got[c]) < 1e-12);
  }
  const RotationSU2 flip = RotationSU2::from_axis_angle({1, 0, 0}, kPi);
  CHECK(flip.apply(Star::from_angles(0, 0)).unit_vector()[2] == doctest::Approx(-1.0));
  CHECK(std::abs(flip.apply(ExtendedComplex::infinity()).value()) < 1e-15);
}

TEST_CASE("rotating the S=1 equatorial pair") {
  const SpinLabel one(2);
  const std::vector<ExtendedComplex> z{cplx(1.0), cplx(-1.0)};
  const Constellation c = Constellation::from_zetas(one, z);
  CHECK(constellations_equal(rotate_constellation(c, RotationSU2::identity()), c, 1e-14));
  CHECK(constellations_equal(rotate_constellation(c, RotationSU2::from_axis_angle({0, 0, 1}, kPi)), c, 1e-12));
  const Constellation quarter = rotate_constellation(c, RotationSU2::from_axis_angle({0, 0, 1}, kPi / 2));
  const std::vector<ExtendedComplex> y{cplx(0, 1), cplx(0, -1)};
  CHECK(constellations_equal(quarter, Constellation::from_zetas(one, y), 1e-12));
}

TEST_CASE("state equivalence") {
  const SpinLabel s(3);
  const SpinState psi(s, {cplx(1, 2), cplx(0.3), cplx(-1, 0.5), cplx(0.2, 0.2)});
  std::vector<cplx> phased(psi.amps().begin(), psi.amps().end());
  for (auto& a : phased) a *= std::exp(cplx(0, kPi / 7));
  CHECK(state_equiv(psi, SpinState(s, phased), 1e-10));
  CHECK_FALSE(state_equiv(SpinState::basis(s, 3), SpinState::basis(s, -3), 1e-10));
  CHECK_FALSE(state_equiv(coherent_state(s, Star::from_zeta(cplx(0.0))), coherent_state(s, Star::from_zeta(cplx(0.001))), 1e-12));
}

TEST_CASE("validation failures") {
  CHECK_THROWS_AS(SpinLabel(-1), std::invalid_argument);
  CHECK_THROWS_AS(SpinLabel(2).index_of_two_m(1), std::out_of_range);
  CHECK_THROWS_AS(SpinLabel(2).index_of_two_m(4), std::out_of_range);
  CHECK_THROWS_AS(SpinState(SpinLabel(1), {cplx(0), cplx(0)}), Error);
  CHECK_THROWS_AS(SpinState(SpinLabel(1), {cplx(1)}), Error);
  try {
    SpinState::from_normalized(SpinLabel(1), {cplx(1.0), cplx(0.02)});
    FAIL("expected a normalization error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("normalization") != std::string::npos);
  }
  CHECK_THROWS_AS(Constellation(SpinLabel(2), {Star::from_angles(0, 0)}), Error);
  CHECK_THROWS_AS(ExtendedComplex::infinity().value(), std::logic_error);
  CHECK_THROWS_AS(inner_product(SpinState::basis(SpinLabel(1), 1), SpinState::basis(SpinLabel(2), 0)), std::invalid_argument);
}

TEST_CASE("matched chordal error handles permutations and repeats") {
  const SpinLabel s(4);
  std::vector<Star> a{Star::from_angles(0.3, 0.1), Star::from_angles(0.3, 0.1), Star::from_angles(2.0, 4.0), Star::from_angles(kPi, 0)};
  std::vector<Star> b{a[3], a[2], a[0], a[1]};
  CHECK(matched_chordal_error(Constellation(s, a), Constellation(s, b)) < 1e-15);
  b[0] = Star::from_angles(0.3, 0.1);
  CHECK(matched_chordal_error(Constellation(s, a), Constellation(s, b)) > 0.5);
}
