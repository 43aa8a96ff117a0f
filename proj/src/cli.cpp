#include "majorana/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include "majorana/analysis.hpp"
#include "majorana/angular.hpp"
#include "majorana/io.hpp"
#include "majorana/parallel.hpp"
#include "majorana/transitions.hpp"

namespace majorana::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_output_path(const std::string& path) {
  if (path.empty() || path == "-") return;
  const std::filesystem::path p(path);
  const auto dir = p.has_parent_path() ? p.parent_path() : std::filesystem::path(".");
  if (!std::filesystem::is_directory(dir)) throw UsageError("output directory does not exist: " + dir.string());
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") out << text;
  else write_file_atomic(path, text);
}

struct Loaded {
  std::optional<SpinState> state;
  std::optional<Constellation> constellation;

  SpinState as_state() const { return state ? *state : state_from_constellation(*constellation); }
  Constellation as_constellation() const { return constellation ? *constellation : constellation_from_state(*state); }
};

Loaded load_input(const std::string& path) {
  const auto j = read_json_file(path);
  if (j.is_object() && j.contains("amps")) return {state_from_json(j), std::nullopt};
  if (j.is_object() && j.contains("stars")) return {std::nullopt, constellation_from_json(j)};
  throw Error(path + ": expected a state ('amps') or a constellation ('stars')");
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument("no separator");
    std::size_t used = 0;
    const int a = std::stoi(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument("trailing characters");
    const int b = std::stoi(text.substr(x + 1), &used);
    if (used != text.size() - x - 1) throw std::invalid_argument("trailing characters");
    if (a < 1 || b < 1) throw std::invalid_argument("non-positive");
    return {a, b};
  } catch (const std::exception&) {
    throw UsageError("--grid expects N_THETAxN_PHI with positive integers, got '" + text + "'");
  }
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string radical_string(const exact::Radical& r) {
  if (sgn(r.coeff) == 0) return "0";
  std::string s = r.coeff.get_str();
  if (r.squarefree != 1) s += "*sqrt(" + r.squarefree.get_str() + ")";
  return s;
}

struct ConvertArgs {
  std::string in, to, out;
};

struct SpectrumArgs {
  std::vector<std::string> in, states;
  int two_s = -1;
  std::string out, summary;
  bool excluding_monopole = false;
};

struct HusimiArgs {
  std::string in, grid = "181x360", out;
};

struct TransitionArgs {
  std::string kind;
  int two_s = 0;
  int samples = 50;
  std::string out;
};

struct SearchArgs {
  int two_s = 0;
  long samples = 10000;
  std::uint64_t seed = 0;
  std::string sampler = "haar", out;
};

struct CgArgs {
  int two_s = 0;
  std::string out;
};

struct CatalogArgs {
  std::string name, to = "state", out, kings_dir;
  int two_s = -1;
  bool list = false;
};

int do_convert(const ConvertArgs& a, std::ostream& out) {
  check_output_path(a.out);
  const Loaded in = load_input(a.in);
  const auto j = a.to == "state" ? state_to_json(in.as_state()) : constellation_to_json(in.as_constellation());
  emit(a.out, dump(j), out);
  return kExitOk;
}

int do_spectrum(const SpectrumArgs& a, std::ostream& out) {
  check_output_path(a.out);
  check_output_path(a.summary);
  if (a.in.empty() && a.states.empty()) throw UsageError("spectrum needs --in or --state");
  if (!a.states.empty() && a.two_s < 0) throw UsageError("--state needs --two-s");
  if (!a.out.empty() && a.in.size() + a.states.size() != 1) throw UsageError("--out takes exactly one input state");

  std::vector<NamedState> states;
  for (const auto& path : a.in) {
    const SpinState s = load_input(path).as_state();
    states.push_back({std::filesystem::path(path).stem().string(), s.spin(), StateSource::file, s});
  }
  const Catalog catalog;
  for (const auto& name : a.states) states.push_back(catalog.get(name, SpinLabel(a.two_s)));

  if (!a.out.empty()) {
    const auto m = multipoles_from_state(states.front().state);
    std::string csv = "K,q,re,im\n";
    for (int K = 0; K <= m.spin.two_s(); ++K) {
      for (int q = -K; q <= K; ++q) {
        const cplx v = m.at(K, q);
        csv += std::to_string(K) + "," + std::to_string(q) + "," + num(v.real()) + "," + num(v.imag()) + "\n";
      }
    }
    write_file_atomic(a.out, csv);
  }

  const SpectrumTable table = spectrum_report(states, a.excluding_monopole);
  std::string csv = "K";
  if (table.names.size() == 1) csv += ",rho_sq";
  else
    for (const auto& n : table.names) csv += "," + n;
  csv += "\n";
  for (int K = 0; K <= table.spin.two_s(); ++K) {
    csv += std::to_string(K);
    for (const auto& col : table.lengths) csv += "," + num(col[static_cast<std::size_t>(K)]);
    csv += "\n";
  }
  if (!a.summary.empty() || a.out.empty()) emit(a.summary, csv, out);
  return kExitOk;
}

int do_husimi(const HusimiArgs& a, int threads, std::ostream& out) {
  check_output_path(a.out);
  const auto [n_theta, n_phi] = parse_grid(a.grid);
  const StellarPoly p = stellar_poly(load_input(a.in).as_state());
  std::vector<std::string> rows(static_cast<std::size_t>(n_theta));
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const double theta = n_theta == 1 ? 0.0 : (static_cast<int>(i) == n_theta - 1 ? kPi : kPi * i / (n_theta - 1));
    std::string& row = rows[i];
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * kPi * j / n_phi;
      row += num(theta) + "," + num(phi) + "," + num(husimi_at(p, Star::from_angles(theta, phi))) + "\n";
    }
  });
  std::string csv = "theta,phi,Q\n";
  for (const auto& r : rows) csv += r;
  emit(a.out, csv, out);
  return kExitOk;
}

int do_transition(const TransitionArgs& a, int threads, std::ostream& out) {
  check_output_path(a.out);
  const auto rows = transition_sweep(parse_transition_kind(a.kind), SpinLabel(a.two_s), a.samples, threads);
  std::string csv = "param,K,rho_sq_pipeline,rho_sq_closed_form\n";
  for (const auto& r : rows) {
    csv += num(r.param) + "," + std::to_string(r.K) + "," + num(r.pipeline) + "," + num(r.closed_form) + "\n";
  }
  emit(a.out, csv, out);
  return kExitOk;
}

int do_search(const SearchArgs& a, int threads, std::ostream& out) {
  check_output_path(a.out);
  const SearchResult r = max_multipole_search(SpinLabel(a.two_s), a.samples, a.seed, {parse_sampler(a.sampler), threads});
  nlohmann::json champions = nlohmann::json::array();
  for (const auto& c : r.per_K) {
    champions.push_back({{"K", c.K},
                         {"best_value", c.best_value},
                         {"origin", c.origin},
                         {"state", state_to_json(c.best_state)},
                         {"constellation", constellation_to_json(c.best_constellation)},
                         {"spectrum", c.spectrum}});
  }
  std::vector<double> coherent, noon;
  for (int K = 0; K <= r.spin.two_s(); ++K) coherent.push_back(coherent_multipole_closed_form(r.spin, K));
  noon = multipoles_from_state(noon_state(r.spin)).lengths;
  const nlohmann::json doc = {{"two_s", r.spin.two_s()}, {"samples", r.samples},      {"seed", r.seed},
                              {"sampler", to_string(r.sampler)}, {"champions", champions}, {"coherent_spectrum", coherent},
                              {"noon_spectrum", noon}};
  emit(a.out, dump(doc), out);
  return kExitOk;
}

int do_cg_table(const CgArgs& a, bool exact_values, std::ostream& out) {
  check_output_path(a.out);
  const SpinLabel spin(a.two_s);
  std::string csv = "two_s,two_m,two_k,two_q,value\n";
  for (int K = 0; K <= spin.two_s(); ++K) {
    for (int q = -K; q <= K; ++q) {
      for (int k = std::max(0, -q); k <= std::min(spin.two_s(), spin.two_s() - q); ++k) {
        const CGValue v = clebsch_gordan({spin.two_s(), spin.two_m_of(k), 2 * K, 2 * q, spin.two_m_of(k + q)});
        csv += std::to_string(spin.two_s()) + "," + std::to_string(spin.two_m_of(k)) + "," + std::to_string(2 * K) +
               "," + std::to_string(2 * q) + "," + (exact_values ? radical_string(v.radical) : num(v.float_value)) +
               "\n";
      }
    }
  }
  emit(a.out, csv, out);
  return kExitOk;
}

int do_catalog(const CatalogArgs& a, std::ostream& out) {
  check_output_path(a.out);
  const Catalog catalog = a.kings_dir.empty() ? Catalog() : Catalog(a.kings_dir);
  if (a.list) {
    std::string text;
    for (const auto& n : catalog.names()) text += n + "\n";
    emit(a.out, text, out);
    return kExitOk;
  }
  if (a.name.empty() || a.two_s < 0) throw UsageError("catalog needs --name and --two-s (or --list)");
  const NamedState s = catalog.get(a.name, SpinLabel(a.two_s));
  const auto j = a.to == "state" ? state_to_json(s.state) : constellation_to_json(constellation_from_state(s.state));
  emit(a.out, dump(j), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin states as Majorana constellations: conversions, multipoles, Husimi grids, transitions"};
  app.name(args.empty() ? "majorana" : std::filesystem::path(args.front()).filename().string());
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  bool exact_values = false;
  app.add_option("--threads", threads, "Worker thread cap (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("--exact", exact_values, "Print exact values where supported (cg-table)");

  ConvertArgs conv;
  auto* c_convert = app.add_subcommand("convert", "Convert between state and constellation JSON");
  c_convert->add_option("--in", conv.in, "Input JSON (state or constellation)")->required()->check(CLI::ExistingFile);
  c_convert->add_option("--to", conv.to, "Output form")->required()->check(CLI::IsMember({"state", "constellation"}));
  c_convert->add_option("--out", conv.out, "Output path (stdout if omitted)");

  SpectrumArgs sp;
  auto* c_spectrum = app.add_subcommand("spectrum", "Multipole components and lengths");
  c_spectrum->add_option("--in", sp.in, "Input JSON files (state or constellation)")->check(CLI::ExistingFile);
  c_spectrum->add_option("--state", sp.states, "Catalog entries (needs --two-s)");
  c_spectrum->add_option("--two-s", sp.two_s, "2S for catalog entries")->check(CLI::NonNegativeNumber);
  c_spectrum->add_option("--out", sp.out, "CSV K,q,re,im for a single input");
  c_spectrum->add_option("--summary", sp.summary, "CSV of rho_K^2 (stdout if omitted)");
  c_spectrum->add_flag("--normalize-excluding-monopole", sp.excluding_monopole,
                       "Rescale K >= 1 lengths to sum to one");

  HusimiArgs hus;
  auto* c_husimi = app.add_subcommand("husimi", "Husimi Q on an equiangular grid");
  c_husimi->add_option("--in", hus.in, "Input JSON (state or constellation)")->required()->check(CLI::ExistingFile);
  c_husimi->add_option("--grid", hus.grid, "N_THETAxN_PHI")->capture_default_str();
  c_husimi->add_option("--out", hus.out, "CSV theta,phi,Q (stdout if omitted)");

  TransitionArgs tr;
  auto* c_transition = app.add_subcommand("transition", "Multipole sweep along a coherent-NOON transition");
  c_transition->add_option("--kind", tr.kind, "ring, spread or spread-sym")
      ->required()
      ->check(CLI::IsMember({"ring", "spread", "spread-sym"}));
  c_transition->add_option("--two-s", tr.two_s, "2S")->required()->check(CLI::PositiveNumber);
  c_transition->add_option("--samples", tr.samples, "Parameter samples")->capture_default_str()->check(CLI::PositiveNumber);
  c_transition->add_option("--out", tr.out, "CSV output (stdout if omitted)");

  SearchArgs se;
  auto* c_search = app.add_subcommand("search", "Random search for maximal multipole lengths");
  c_search->add_option("--two-s", se.two_s, "2S")->required()->check(CLI::NonNegativeNumber);
  c_search->add_option("--samples", se.samples, "Random states")->capture_default_str()->check(CLI::PositiveNumber);
  c_search->add_option("--seed", se.seed, "Master seed")->capture_default_str();
  c_search->add_option("--sampler", se.sampler, "haar or stars")->capture_default_str()->check(CLI::IsMember({"haar", "stars"}));
  c_search->add_option("--out", se.out, "Results JSON (stdout if omitted)");

  CgArgs cg;
  auto* c_cg = app.add_subcommand("cg-table", "Clebsch-Gordan coefficients C^{S,m+q}_{S m,K q}");
  c_cg->add_option("--two-s", cg.two_s, "2S")->required()->check(CLI::NonNegativeNumber);
  c_cg->add_option("--out", cg.out, "CSV output (stdout if omitted)");

  CatalogArgs cat;
  auto* c_catalog = app.add_subcommand("catalog", "Named states: coherent, noon, basis(m=...), king");
  c_catalog->add_option("--name", cat.name, "Entry name");
  c_catalog->add_option("--two-s", cat.two_s, "2S")->check(CLI::NonNegativeNumber);
  c_catalog->add_option("--to", cat.to, "Output form")->capture_default_str()->check(CLI::IsMember({"state", "constellation"}));
  c_catalog->add_option("--kings-dir", cat.kings_dir, "Directory of King JSON files");
  c_catalog->add_option("--out", cat.out, "Output path (stdout if omitted)");
  c_catalog->add_flag("--list", cat.list, "List entry names");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("majorana");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_convert->parsed()) return do_convert(conv, out);
    if (c_spectrum->parsed()) return do_spectrum(sp, out);
    if (c_husimi->parsed()) return do_husimi(hus, threads, out);
    if (c_transition->parsed()) return do_transition(tr, threads, out);
    if (c_search->parsed()) return do_search(se, threads, out);
    if (c_cg->parsed()) return do_cg_table(cg, exact_values, out);
    if (c_catalog->parsed()) return do_catalog(cat, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace majorana::cli
