#pragma once

// JSON forms of states and constellations.
//   state:         {"two_s": int, "amps": [[re, im], ...]}   (k = S + m ascending)
//   constellation: {"two_s": int, "stars": [{"theta": x, "phi": y}, ...]}

#include <filesystem>
#include <string>

#include <json.hpp>

#include "majorana/spin.hpp"

namespace majorana {

nlohmann::json state_to_json(const SpinState& s);
/// Throws Error on a malformed document or an input that is not normalized
/// within 1e-9.
SpinState state_from_json(const nlohmann::json& j);

nlohmann::json constellation_to_json(const Constellation& c);
/// Angles are authoritative; zeta is recomputed. Throws Error when malformed.
Constellation constellation_from_json(const nlohmann::json& j);

/// Reads and parses a JSON file; throws Error naming the path on failure.
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Writes `text` to a temporary file beside `path` and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace majorana
