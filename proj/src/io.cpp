#include "majorana/io.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

namespace majorana {

namespace {

int read_two_s(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("two_s") || !j["two_s"].is_number_integer()) {
    throw Error("missing integer field 'two_s'");
  }
  const int two_s = j["two_s"].get<int>();
  if (two_s < 0) throw Error("'two_s' must be non-negative");
  return two_s;
}

}  // namespace

nlohmann::json state_to_json(const SpinState& s) {
  nlohmann::json amps = nlohmann::json::array();
  for (const auto& a : s.amps()) amps.push_back({a.real(), a.imag()});
  return {{"two_s", s.spin().two_s()}, {"amps", amps}};
}

SpinState state_from_json(const nlohmann::json& j) {
  const SpinLabel spin(read_two_s(j));
  if (!j.contains("amps") || !j["amps"].is_array()) throw Error("missing array field 'amps'");
  std::vector<cplx> amps;
  for (const auto& a : j["amps"]) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw Error("each amplitude must be a [re, im] pair of numbers");
    }
    amps.emplace_back(a[0].get<double>(), a[1].get<double>());
  }
  if (static_cast<int>(amps.size()) != spin.dim()) {
    throw Error("'amps' has " + std::to_string(amps.size()) + " entries, expected " + std::to_string(spin.dim()));
  }
  return SpinState::from_normalized(spin, std::move(amps));
}

nlohmann::json constellation_to_json(const Constellation& c) {
  nlohmann::json stars = nlohmann::json::array();
  for (const auto& s : c.stars()) stars.push_back({{"theta", s.theta()}, {"phi", s.phi()}});
  return {{"two_s", c.spin().two_s()}, {"stars", stars}};
}

Constellation constellation_from_json(const nlohmann::json& j) {
  const SpinLabel spin(read_two_s(j));
  if (!j.contains("stars") || !j["stars"].is_array()) throw Error("missing array field 'stars'");
  std::vector<Star> stars;
  for (const auto& s : j["stars"]) {
    if (!s.is_object() || !s.contains("theta") || !s.contains("phi") || !s["theta"].is_number() ||
        !s["phi"].is_number()) {
      throw Error("each star needs numeric 'theta' and 'phi'");
    }
    const double theta = s["theta"].get<double>();
    if (theta < 0.0 || theta > kPi + 1e-12) throw Error("star theta must lie in [0, pi]");
    stars.push_back(Star::from_angles(theta, s["phi"].get<double>()));
  }
  return Constellation(spin, std::move(stars));
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  const auto tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot move output into " + path.string() + ": " + ec.message());
  }
}

}  // namespace majorana
