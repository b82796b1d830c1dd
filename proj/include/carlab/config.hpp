#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "carlab/mode_space.hpp"

namespace carlab {

using Json = nlohmann::json;

// Throws std::invalid_argument when `object` holds a key outside `allowed`
// or is not a JSON object; configs reject unknown keys at every level.
void require_allowed_keys(const Json& object, const std::string& context,
                          std::initializer_list<const char*> allowed);

double require_positive(const Json& value, const std::string& context);

// Parses {"site_count": n, "fiber_dim": k, "weights": [..]} with defaults,
// writing the fully resolved sub-config back into `resolved`.
ModeSpace parse_mode_space(const Json& config, int default_sites, int default_fiber,
                           Json& resolved);

std::uint64_t parse_seed(const Json& config, Json& resolved);

}  // namespace carlab
