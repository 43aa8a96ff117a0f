#pragma once

// Experiment drivers: random states, the maximal-multipole search, the
// named-state catalog (coherent, NOON, basis states, Kings from data files)
// and side-by-side spectrum tables.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "majorana/multipoles.hpp"
#include "majorana/spin.hpp"

namespace majorana {

enum class Sampler { haar, stars };

/// "haar" or "stars"; throws std::invalid_argument otherwise.
Sampler parse_sampler(const std::string& name);
std::string to_string(Sampler s);

/// Seed of the index-th independent stream derived from `master`
/// (splitmix64 mixing), so results do not depend on how work is split.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

/// Haar-random pure state: 2S+1 independent standard complex Gaussians,
/// normalized. Deterministic in `seed`.
SpinState random_state(SpinLabel spin, std::uint64_t seed);

/// 2S stars independently uniform on the sphere. Deterministic in `seed`.
Constellation random_constellation(SpinLabel spin, std::uint64_t seed);

/// Draws one state with the chosen measure.
SpinState sample_state(SpinLabel spin, std::uint64_t seed, Sampler sampler);

struct SearchChampion {
  int K = 0;
  double best_value = 0.0;
  SpinState best_state;
  Constellation best_constellation;
  std::vector<double> spectrum;
  /// "coherent", "noon" or "sample <index>".
  std::string origin;
};

struct SearchResult {
  SpinLabel spin{0};
  std::vector<SearchChampion> per_K;
  long samples = 0;
  std::uint64_t seed = 0;
  Sampler sampler = Sampler::haar;
};

struct SearchOptions {
  Sampler sampler = Sampler::haar;
  /// Worker cap; 0 = hardware concurrency.
  int threads = 0;
};

/// For each K the pool member with the largest rho_K^2. The pool is the
/// coherent state, the NOON state and `n_samples` random states (sample i
/// drawn from stream_seed(seed, i)). Ties go to the lexicographically
/// smallest amplitude vector, so the result is independent of threading.
SearchResult max_multipole_search(SpinLabel spin, long n_samples, std::uint64_t seed, const SearchOptions& opts = {});

enum class StateSource { builtin, file };

struct NamedState {
  std::string name;
  SpinLabel spin{0};
  StateSource source = StateSource::builtin;
  SpinState state;
};

/// King constellation file: {"name", "two_s", "order", "stars": [{"theta","phi"}]}.
struct KingFile {
  std::string name;
  int order = 0;
  Constellation constellation;
};

/// Parses a King file and checks rho_1^2 .. rho_M^2 < 1e-8 for its declared
/// order M; throws Error on failure.
KingFile load_king(const std::filesystem::path& path);

/// Directory holding the bundled King files.
std::filesystem::path default_kings_dir();

/// Named states. Builtins: "coherent" (peaked at the north pole),
/// "coherent(<re>,<im>)" (peaked at stereographic point re + i im), "noon",
/// "basis(m=<m>)" with m an integer or p/2. "king" loads the file in the
/// Kings directory whose two_s matches.
class Catalog {
 public:
  explicit Catalog(std::filesystem::path kings_dir = default_kings_dir());

  /// Throws Error for an unknown name or a King file that fails validation.
  NamedState get(const std::string& name, SpinLabel spin) const;
  std::vector<std::string> names() const;
  const std::filesystem::path& kings_dir() const { return kings_dir_; }

 private:
  std::filesystem::path kings_dir_;
};

struct SpectrumTable {
  SpinLabel spin{0};
  std::vector<std::string> names;
  /// lengths[i][K] for state i.
  std::vector<std::vector<double>> lengths;
};

/// rho_K^2 per state, optionally renormalized over K >= 1. Throws Error
/// when the states do not share one spin.
SpectrumTable spectrum_report(const std::vector<NamedState>& states, bool normalize_excluding_monopole);

}  // namespace majorana
