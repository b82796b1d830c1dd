#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "carlab/commands.hpp"
#include "carlab/fock.hpp"
#include "carlab/types.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::int64_t seed = -1;
  int max_modes = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON scenario config (defaults when omitted)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out_path, "write the CSV report here instead of stdout");
  cmd->add_option("--seed", opts.seed, "override the config seed");
  cmd->add_option("--max-modes", opts.max_modes,
                  "dense mode cap (default 10, hard maximum 12)")
      ->check(CLI::Range(1, carlab::kHardModeCap));
}

int dispatch(const std::string& name, const CommonOptions& opts) {
  carlab::Json config = carlab::Json::object();
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) {
      std::cerr << "carlab: cannot open config " << opts.config_path << "\n";
      return 2;
    }
    try {
      in >> config;
    } catch (const std::exception& e) {
      std::cerr << "carlab: config is not valid JSON: " << e.what() << "\n";
      return 2;
    }
  }
  if (opts.seed >= 0) config["seed"] = static_cast<std::uint64_t>(opts.seed);
  if (opts.max_modes > 0) carlab::set_dense_mode_cap(opts.max_modes);

  std::ostringstream report;
  int code = 0;
  try {
    if (name == "verify-car") code = carlab::run_verify_car(config, report);
    else if (name == "twirl-bound") code = carlab::run_twirl_bound(config, report);
    else if (name == "localize") code = carlab::run_localize(config, report);
    else if (name == "net-fixed-points") code = carlab::run_net_fixed_points(config, report);
    else code = carlab::run_partition(config, report);
  } catch (const std::exception& e) {
    std::cerr << "carlab " << name << ": " << e.what() << "\n";
    return 2;
  }

  if (opts.out_path.empty()) {
    std::cout << report.str();
  } else {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "carlab: cannot write " << opts.out_path << "\n";
      return 2;
    }
    out << report.str();
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"carlab: a numerical laboratory for finite CAR algebras"};
  app.set_version_flag("--version", std::string("carlab ") + carlab::kVersion);
  app.require_subcommand(1);

  if (const char* env_cap = std::getenv("CARLAB_MAX_MODES")) {
    try {
      carlab::set_dense_mode_cap(std::stoi(env_cap));
    } catch (const std::exception& e) {
      std::cerr << "carlab: bad CARLAB_MAX_MODES: " << e.what() << "\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify-car", "residual campaign for the anticommutation relations"},
      {"twirl-bound", "partition-twirl commutator bound over a refinement schedule"},
      {"localize", "restriction map, compression and ideal checks for a region"},
      {"net-fixed-points", "fixed-point spaces of outside phase tori and gauge presets"},
      {"partition", "constructive partition refinement campaign"},
  };
  std::vector<CommonOptions> opts(commands.size());
  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* cmd = app.add_subcommand(commands[i].first, commands[i].second);
    add_common(cmd, opts[i]);
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (app.get_subcommand(commands[i].first)->parsed())
      return dispatch(commands[i].first, opts[i]);
  }
  return 2;
}
