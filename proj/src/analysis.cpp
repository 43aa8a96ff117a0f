#include "majorana/analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <random>
#include <regex>

#include "majorana/io.hpp"
#include "majorana/parallel.hpp"

#ifndef MAJORANA_DATA_DIR
#define MAJORANA_DATA_DIR "data"
#endif

namespace majorana {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Total order used to break ties between equal multipole values.
bool amps_less(const SpinState& a, const SpinState& b) {
  const auto x = a.amps(), y = b.amps();
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].real() != y[k].real()) return x[k].real() < y[k].real();
    if (x[k].imag() != y[k].imag()) return x[k].imag() < y[k].imag();
  }
  return false;
}

struct Candidate {
  double value = -1.0;
  long index = 0;  // -2 coherent, -1 noon, >= 0 sample
  std::vector<cplx> amps;
};

bool better(const Candidate& c, double value, const SpinState& s) {
  if (c.amps.empty()) return true;
  if (value != c.value) return value > c.value;
  return amps_less(s, SpinState(s.spin(), c.amps));
}

std::string origin_name(long index) {
  if (index == -2) return "coherent";
  if (index == -1) return "noon";
  return "sample " + std::to_string(index);
}

}  // namespace

Sampler parse_sampler(const std::string& name) {
  if (name == "haar") return Sampler::haar;
  if (name == "stars") return Sampler::stars;
  throw std::invalid_argument("unknown sampler '" + name + "' (expected haar or stars)");
}

std::string to_string(Sampler s) { return s == Sampler::haar ? "haar" : "stars"; }

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index * 0xD1B54A32D192ED03ull + 1));
}

SpinState random_state(SpinLabel spin, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<cplx> amps(static_cast<std::size_t>(spin.dim()));
  for (auto& a : amps) {
    const double re = gauss(rng);
    a = {re, gauss(rng)};
  }
  return SpinState(spin, std::move(amps));
}

Constellation random_constellation(SpinLabel spin, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> turn(0.0, 2.0 * kPi);
  std::vector<Star> stars;
  for (int j = 0; j < spin.two_s(); ++j) {
    const double cos_theta = unit(rng);
    stars.push_back(Star::from_angles(std::acos(cos_theta), turn(rng)));
  }
  return Constellation(spin, std::move(stars));
}

SpinState sample_state(SpinLabel spin, std::uint64_t seed, Sampler sampler) {
  if (sampler == Sampler::haar) return random_state(spin, seed);
  return state_from_constellation(random_constellation(spin, seed));
}

SearchResult max_multipole_search(SpinLabel spin, long n_samples, std::uint64_t seed, const SearchOptions& opts) {
  if (n_samples < 1) throw std::invalid_argument("search needs at least one sample");
  const auto dim = static_cast<std::size_t>(spin.dim());
  std::vector<Candidate> best(dim);
  std::mutex mu;

  auto offer = [&](std::vector<Candidate>& local, long index, const SpinState& s) {
    const auto lengths = multipoles_from_state(s).lengths;
    for (std::size_t K = 0; K < dim; ++K) {
      if (better(local[K], lengths[K], s)) local[K] = {lengths[K], index, {s.amps().begin(), s.amps().end()}};
    }
  };
  auto merge = [&](const std::vector<Candidate>& local) {
    std::lock_guard lock(mu);
    for (std::size_t K = 0; K < dim; ++K) {
      if (local[K].amps.empty()) continue;
      const SpinState s(spin, local[K].amps);
      if (best[K].amps.empty() || better(best[K], local[K].value, s)) best[K] = local[K];
    }
  };

  {
    std::vector<Candidate> local(dim);
    offer(local, -2, coherent_state(spin, Star::from_angles(0.0, 0.0)));
    offer(local, -1, noon_state(spin));
    merge(local);
  }

  constexpr long kChunk = 256;
  const long chunks = (n_samples + kChunk - 1) / kChunk;
  parallel_for(static_cast<std::size_t>(chunks), opts.threads, [&](std::size_t c) {
    std::vector<Candidate> local(dim);
    const long lo = static_cast<long>(c) * kChunk, hi = std::min(n_samples, lo + kChunk);
    for (long i = lo; i < hi; ++i) offer(local, i, sample_state(spin, stream_seed(seed, static_cast<std::uint64_t>(i)), opts.sampler));
    merge(local);
  });

  SearchResult out{spin, {}, n_samples, seed, opts.sampler};
  for (std::size_t K = 0; K < dim; ++K) {
    SpinState s(spin, best[K].amps);
    Constellation c = constellation_from_state(s);
    auto spectrum = multipoles_from_state(s).lengths;
    out.per_K.push_back({static_cast<int>(K), best[K].value, std::move(s), std::move(c), std::move(spectrum),
                         origin_name(best[K].index)});
  }
  return out;
}

KingFile load_king(const std::filesystem::path& path) {
  const auto j = read_json_file(path);
  Constellation c = constellation_from_json(j);
  if (!j.contains("order") || !j["order"].is_number_integer()) throw Error(path.string() + ": missing integer 'order'");
  const int order = j["order"].get<int>();
  const std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : path.stem().string();
  if (order < 1 || order > c.spin().two_s()) throw Error(path.string() + ": declared order out of range");
  const auto lengths = multipoles_from_constellation(c).lengths;
  for (int K = 1; K <= order; ++K) {
    if (!(lengths[static_cast<std::size_t>(K)] < 1e-8)) {
      throw Error(path.string() + ": rho_" + std::to_string(K) + "^2 = " + std::to_string(lengths[static_cast<std::size_t>(K)]) +
                  " violates declared anticoherence order " + std::to_string(order));
    }
  }
  return {name, order, std::move(c)};
}

std::filesystem::path default_kings_dir() {
  if (const char* env = std::getenv("MAJORANA_KINGS_DIR")) return env;
  return std::filesystem::path(MAJORANA_DATA_DIR) / "kings";
}

Catalog::Catalog(std::filesystem::path kings_dir) : kings_dir_(std::move(kings_dir)) {}

std::vector<std::string> Catalog::names() const { return {"coherent", "coherent(re,im)", "noon", "basis(m=...)", "king"}; }

NamedState Catalog::get(const std::string& name, SpinLabel spin) const {
  static const std::regex coherent_at(R"(coherent\(\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*\))");
  static const std::regex basis(R"(basis\(m=\s*(-?)([0-9]+|S)(/2)?\s*\))");
  std::smatch m;
  if (name == "coherent") return {name, spin, StateSource::builtin, coherent_state(spin, Star::from_angles(0.0, 0.0))};
  if (std::regex_match(name, m, coherent_at)) {
    const cplx z(std::stod(m[1]), std::stod(m[2]));
    return {name, spin, StateSource::builtin, coherent_state(spin, Star::from_zeta(z))};
  }
  if (name == "noon") return {name, spin, StateSource::builtin, noon_state(spin)};
  if (std::regex_match(name, m, basis)) {
    int two_m = 0;
    if (m[2] == "S") {
      if (m[3].matched) throw Error("bad basis label '" + name + "'");
      two_m = spin.two_s();
    } else {
      two_m = std::stoi(m[2]) * (m[3].matched ? 1 : 2);
    }
    if (m[1] == "-") two_m = -two_m;
    try {
      return {name, spin, StateSource::builtin, SpinState::basis(spin, two_m)};
    } catch (const std::out_of_range& e) {
      throw Error(e.what());
    }
  }
  if (name == "king") {
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(kings_dir_)) {
      for (const auto& entry : std::filesystem::directory_iterator(kings_dir_)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const auto j = read_json_file(f);
      if (!j.contains("two_s") || j["two_s"] != spin.two_s()) continue;
      KingFile k = load_king(f);
      return {name, spin, StateSource::file, state_from_constellation(k.constellation)};
    }
    throw Error("no King file for spin " + spin.to_string() + " in " + kings_dir_.string());
  }
  throw Error("unknown catalog entry '" + name + "'");
}

SpectrumTable spectrum_report(const std::vector<NamedState>& states, bool normalize_excluding_monopole) {
  if (states.empty()) throw Error("spectrum report needs at least one state");
  SpectrumTable t{states.front().spin, {}, {}};
  for (const auto& s : states) {
    if (s.spin != t.spin) throw Error("spectrum report mixes spins " + t.spin.to_string() + " and " + s.spin.to_string());
    auto lengths = multipoles_from_state(s.state).lengths;
    if (normalize_excluding_monopole) lengths = normalized_excluding_monopole(lengths);
    t.names.push_back(s.name);
    t.lengths.push_back(std::move(lengths));
  }
  return t;
}

}  // namespace majorana
