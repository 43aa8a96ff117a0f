#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "../support/oracles.hpp"
#include "majorana/analysis.hpp"

using namespace majorana;

TEST_CASE("seeded sampling is reproducible") {
  const SpinLabel s(3);
  const SpinState a = random_state(s, 42), b = random_state(s, 42), c = random_state(s, 43);
  for (int k = 0; k < 4; ++k) CHECK(a.amp(k) == b.amp(k));
  CHECK_FALSE(state_equiv(a, c, 1e-6));
  double norm = 0.0;
  for (auto z : a.amps()) norm += std::norm(z);
  CHECK(std::abs(norm - 1.0) < 1e-12);
  // golden amplitudes for seed 42
  const std::vector<cplx> golden{{0.21970120258195561, 0.40320373608667515},
                                  {-0.17890981373752524, 0.12402491886271581},
                                  {-0.59419579467805017, 0.34858436925009106},
                                  {-0.2256642933438455, -0.4650410182450036}};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(a.amp(k) - golden[static_cast<std::size_t>(k)]) < 1e-15);

  CHECK(stream_seed(1, 0) != stream_seed(1, 1));
  CHECK(stream_seed(1, 0) != stream_seed(2, 0));
  CHECK(stream_seed(7, 9) == stream_seed(7, 9));
  const Constellation r1 = random_constellation(SpinLabel(5), 3), r2 = random_constellation(SpinLabel(5), 3);
  CHECK(matched_chordal_error(r1, r2) == 0.0);
  CHECK(parse_sampler("stars") == Sampler::stars);
  CHECK_THROWS_AS(parse_sampler("gauss"), std::invalid_argument);
}

TEST_CASE("dipole mean agrees with an independent Monte-Carlo oracle") {
  const SpinLabel s(2);
  const int n = 10000;
  auto stats = [](const std::vector<double>& x) {
    double m = 0.0, v = 0.0;
    for (double y : x) m += y;
    m /= x.size();
    for (double y : x) v += (y - m) * (y - m);
    return std::pair{m, std::sqrt(v / (x.size() - 1) / x.size())};
  };
  std::vector<double> lib, ref;
  for (int i = 0; i < n; ++i) lib.push_back(multipoles_from_state(random_state(s, stream_seed(5, i))).lengths[1]);
  std::minstd_rand rng(2024);
  const oracle::BruteCG cg(2, 2);
  std::vector<oracle::Mat> t;
  for (int q = -1; q <= 1; ++q) t.push_back(oracle::tensor_op(cg, 2, 1, q));
  for (int i = 0; i < n; ++i) {
    const auto v = oracle::haar_vec(2, rng);
    double l = 0.0;
    for (const auto& m : t) l += std::norm(oracle::trace_multipole(v, m));
    ref.push_back(l);
  }
  const auto [m1, e1] = stats(lib);
  const auto [m2, e2] = stats(ref);
  CHECK(std::abs(m1 - m2) < 3.0 * std::hypot(e1, e2));
}

TEST_CASE("maximum multipole search") {
  const auto half = max_multipole_search(SpinLabel(1), 50, 3);
  REQUIRE(half.per_K.size() == 2);
  CHECK(half.per_K[1].best_value == doctest::Approx(0.5).epsilon(1e-12));

  const SpinLabel s(6);
  const auto a = max_multipole_search(s, 600, 11, {Sampler::haar, 1});
  const auto b = max_multipole_search(s, 600, 11, {Sampler::haar, 3});
  REQUIRE(a.per_K.size() == 7);
  for (std::size_t K = 0; K < a.per_K.size(); ++K) {
    CHECK(a.per_K[K].best_value == b.per_K[K].best_value);
    CHECK(a.per_K[K].origin == b.per_K[K].origin);
    for (int k = 0; k <= 6; ++k) CHECK(a.per_K[K].best_state.amp(k) == b.per_K[K].best_state.amp(k));
    CHECK(a.per_K[K].spectrum.size() == 7);
  }
  CHECK(a.per_K[1].best_value >= coherent_multipole_closed_form(s, 1));
  CHECK(a.per_K[6].best_value >= noon_last_multipole(s) - 1e-15);
  CHECK(a.per_K[1].origin == "coherent");
  CHECK(a.per_K[6].origin == "noon");
  const auto st = max_multipole_search(s, 100, 11, {Sampler::stars, 0});
  CHECK(st.sampler == Sampler::stars);
  CHECK_THROWS_AS(max_multipole_search(s, 0, 1), std::invalid_argument);
}

TEST_CASE("catalog entries") {
  const Catalog cat;
  const auto noon = cat.get("noon", SpinLabel(12));
  const Constellation c = constellation_from_state(noon.state);
  REQUIRE(c.stars().size() == 12);
  for (const auto& st : c.stars()) CHECK(std::abs(st.theta() - kPi / 2) < 1e-12);

  for (const char* name : {"basis(m=S)", "basis(m=-S)", "basis(m=1/2)", "basis(m=-3/2)"}) {
    const auto b = cat.get(name, SpinLabel(5));
    int nonzero = 0;
    for (auto z : b.state.amps()) nonzero += z != cplx(0.0);
    CHECK(nonzero == 1);
  }
  CHECK(cat.get("basis(m=S)", SpinLabel(5)).state.amp(5) == cplx(1.0));
  CHECK(cat.get("basis(m=-3/2)", SpinLabel(5)).state.amp(1) == cplx(1.0));
  CHECK(cat.get("basis(m=1)", SpinLabel(4)).state.amp(3) == cplx(1.0));
  CHECK_THROWS_AS(cat.get("basis(m=1)", SpinLabel(5)), Error);
  CHECK_THROWS_AS(cat.get("basis(m=7/2)", SpinLabel(5)), Error);

  const auto coh = cat.get("coherent(0.5,-0.25)", SpinLabel(4));
  CHECK(state_equiv(coh.state, coherent_state(SpinLabel(4), Star::from_zeta(cplx(0.5, -0.25))), 1e-14));
  CHECK(state_equiv(cat.get("coherent", SpinLabel(4)).state, SpinState::basis(SpinLabel(4), -4), 1e-14));
  CHECK_THROWS_AS(cat.get("squeezed", SpinLabel(2)), Error);

  const auto king3 = cat.get("king", SpinLabel(6));
  const auto m3 = multipoles_from_state(king3.state).lengths;
  CHECK(m3[1] < 1e-8);
  CHECK(m3[2] < 1e-8);
  CHECK(m3[3] < 1e-8);
  CHECK_THROWS_AS(cat.get("king", SpinLabel(5)), Error);
}

TEST_CASE("King files are validated against their declared order") {
  const auto dir = std::filesystem::temp_directory_path() / "majorana_king_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "fake.json");
    f << R"({"name": "fake", "two_s": 2, "order": 1, "stars": [{"theta": 0.0, "phi": 0.0}, {"theta": 0.5, "phi": 0.0}]})";
  }
  CHECK_THROWS_AS(load_king(dir / "fake.json"), Error);
  CHECK_THROWS_AS(Catalog(dir).get("king", SpinLabel(2)), Error);
  {
    std::ofstream f(dir / "fake.json");
    f << R"({"name": "pair", "two_s": 2, "order": 1, "stars": [{"theta": 0.0, "phi": 0.0}, {"theta": 3.141592653589793, "phi": 0.0}]})";
  }
  const KingFile k = load_king(dir / "fake.json");
  CHECK(k.name == "pair");
  CHECK(k.order == 1);
  std::filesystem::remove_all(dir);

  for (const auto& entry : std::filesystem::directory_iterator(default_kings_dir())) {
    const KingFile king = load_king(entry.path());
    const auto m = multipoles_from_constellation(king.constellation).lengths;
    for (int K = 1; K <= king.order; ++K) CHECK(m[static_cast<std::size_t>(K)] < 1e-12);
    CHECK(m[static_cast<std::size_t>(king.order + 1)] > 1e-3);
  }
}

TEST_CASE("spectrum report") {
  const Catalog cat;
  const SpinLabel s(12);
  const std::vector<NamedState> states{cat.get("coherent", s), cat.get("noon", s), cat.get("king", s)};
  const auto t = spectrum_report(states, false);
  REQUIRE(t.lengths.size() == 3);
  double total = 0.0;
  for (double x : t.lengths[0]) total += x;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  for (int K = 1; K < 12; K += 2) CHECK(t.lengths[1][static_cast<std::size_t>(K)] < 1e-12);
  for (int K = 1; K <= 5; ++K) CHECK(t.lengths[2][static_cast<std::size_t>(K)] < 1e-10);
  CHECK(t.lengths[2][6] > 0.1);

  const auto n = spectrum_report(states, true);
  double rest = 0.0;
  for (int K = 1; K <= 12; ++K) rest += n.lengths[0][static_cast<std::size_t>(K)];
  CHECK(rest == doctest::Approx(1.0));
  CHECK(n.lengths[0][0] == 0.0);

  CHECK_THROWS_AS(spectrum_report({cat.get("noon", s), cat.get("noon", SpinLabel(4))}, false), Error);
  CHECK_THROWS_AS(spectrum_report({}, false), Error);
}
