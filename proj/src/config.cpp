#include "carlab/config.hpp"

#include <stdexcept>

namespace carlab {

void require_allowed_keys(const Json& object, const std::string& context,
                          std::initializer_list<const char*> allowed) {
  if (!object.is_object())
    throw std::invalid_argument("config: " + context + " must be a JSON object");
  for (const auto& [key, value] : object.items()) {
    bool ok = false;
    for (const char* name : allowed) {
      if (key == name) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      std::string names;
      for (const char* name : allowed) {
        if (!names.empty()) names += ", ";
        names += name;
      }
      throw std::invalid_argument("config: unknown key '" + key + "' in " + context +
                                  " (allowed: " + names + ")");
    }
  }
}

double require_positive(const Json& value, const std::string& context) {
  if (!value.is_number())
    throw std::invalid_argument("config: " + context + " must be a number");
  const double v = value.get<double>();
  if (!(v > 0.0)) throw std::invalid_argument("config: " + context + " must be positive");
  return v;
}

ModeSpace parse_mode_space(const Json& config, int default_sites, int default_fiber,
                           Json& resolved) {
  Json ms = config.value("mode_space", Json::object());
  require_allowed_keys(ms, "mode_space", {"site_count", "fiber_dim", "weights"});
  const int sites = ms.value("site_count", default_sites);
  const int fiber = ms.value("fiber_dim", default_fiber);
  if (sites < 1 || fiber < 1)
    throw std::invalid_argument("config: site_count and fiber_dim must be >= 1");

  RealVector weights = RealVector::Ones(sites);
  if (ms.contains("weights")) {
    const Json& w = ms.at("weights");
    if (!w.is_array() || static_cast<int>(w.size()) != sites)
      throw std::invalid_argument("config: weights must be an array with one entry per site");
    for (int s = 0; s < sites; ++s)
      weights[s] = require_positive(w.at(s), "weights[" + std::to_string(s) + "]");
  }

  resolved["mode_space"]["site_count"] = sites;
  resolved["mode_space"]["fiber_dim"] = fiber;
  resolved["mode_space"]["weights"] = std::vector<double>(weights.data(), weights.data() + sites);
  return ModeSpace(sites, fiber, weights);
}

std::uint64_t parse_seed(const Json& config, Json& resolved) {
  const auto seed = config.value("seed", std::uint64_t{42});
  resolved["seed"] = seed;
  return seed;
}

}  // namespace carlab
