#pragma once

#include <ostream>

#include "carlab/config.hpp"

namespace carlab {

// Each command validates its config (std::invalid_argument on schema
// violations), writes one CSV report to `out`, and returns 0 exactly when
// every assertion in the report holds.

int run_verify_car(const Json& config, std::ostream& out);
int run_twirl_bound(const Json& config, std::ostream& out);
int run_localize(const Json& config, std::ostream& out);
int run_net_fixed_points(const Json& config, std::ostream& out);
int run_partition(const Json& config, std::ostream& out);

}  // namespace carlab
