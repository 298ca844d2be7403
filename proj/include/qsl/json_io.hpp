#ifndef QSL_JSON_IO_HPP
#define QSL_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "qsl/do_model.hpp"
#include "qsl/rational_model.hpp"
#include "qsl/universe.hpp"

namespace qsl {

// All on-disk formats carry a top-level {"format": 1}.
inline constexpr int format_version = 1;

Universe universe_from_json(const nlohmann::json& j);
nlohmann::json universe_to_json(const Universe& u);

DOSystem do_system_from_json(const nlohmann::json& j);
nlohmann::json do_system_to_json(const DOSystem& s);

RationalUniverseSpec rational_spec_from_json(const nlohmann::json& j);

/// Reads and parses a JSON file; validation errors are prefixed with the
/// path.
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

Universe load_universe(const std::string& path);
void save_universe(const std::string& path, const Universe& u);
DOSystem load_do_system(const std::string& path);
void save_do_system(const std::string& path, const DOSystem& s);
RationalUniverseSpec load_rational_spec(const std::string& path);

} // namespace qsl

#endif
