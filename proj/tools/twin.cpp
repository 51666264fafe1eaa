// Command-line front end for the experiment suites.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "twins/harness.hpp"

namespace {

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw twins::ConfigError("config", "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw twins::ConfigError("config", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twins in edge-colored complete graphs: experiment runner"};
  app.set_version_flag("--version", twins::kVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir, replay;
  std::uint64_t seed = 0;
  unsigned jobs = 0;

  for (const char* name : {"guarantees", "tables", "twinbound", "lcs-tail", "blockclaims",
                           "replay"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON suite configuration");
    sub->add_option("--seed", seed, "master seed (overrides the config)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--replay", replay, "re-run one case, e.g. guarantees:17")
        ->required(std::string(name) == "replay");
  }
  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  auto* sub = app.get_subcommands().front();
  try {
    auto j = load_config(config_path);
    if (command != "replay") j["suite"] = command;
    if (sub->count("--seed")) j["seed"] = seed;
    if (sub->count("--jobs")) j["jobs"] = jobs;
    if (sub->count("--out"))
      j["out"] = out_dir;
    else if (!j.contains("out")) {
      const char* env = std::getenv(twins::kOutDirEnv);
      j["out"] = env && *env ? env : "twin-out";
    }

    twins::RunReport rep;
    if (!replay.empty()) {
      if (!j.contains("suite")) j["suite"] = replay.substr(0, replay.rfind(':'));
      rep = twins::cmd_replay(twins::config_from_json(j), replay);
    } else {
      rep = twins::run_suite(twins::config_from_json(j));
    }
    rep.write_summary(std::cout);
    if (!replay.empty()) std::cout << rep.to_json()["cases"][0].dump(2) << '\n';
    return rep.exit_code();
  } catch (const twins::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
