#include <chrono>
#include <exception>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "thermo/cli/acceptance.hpp"
#include "thermo/cli/commands.hpp"
#include "thermo/cli/report.hpp"
#include "thermo/error.hpp"

namespace thermo::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSelftestFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitPrecondition = 3;

using Command = CommandOutput (*)(const ExperimentConfig&, unsigned);

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local pressure and Gibbs diagnostics for one-sided subshifts of finite type", "thermo"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string csv_path;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 0;

  const std::pair<const char*, const char*> commands[] = {
      {"pressure", "topological pressure with a partition-sum cross-check"},
      {"equilibrium", "equilibrium measure and the variational check"},
      {"local-pressure", "finite-scale local pressure on a sampled batch"},
      {"gibbs-check", "Gibbs diagnostics and the equilibrium-state verdict"},
  };
  std::vector<std::pair<CLI::App*, CLI::Option*>> subs;
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_option("--csv", csv_path, "also write grid values as point_id,n,k,value");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    subs.emplace_back(sub, sub->add_option("--seed", seed, "override estimator.seed"));
  }
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  if (selftest->parsed()) return cmd_selftest(out, threads) == 0 ? kExitOk : kExitSelftestFailed;

  const Command runners[] = {cmd_pressure, cmd_equilibrium, cmd_local_pressure, cmd_gibbs_check};
  std::size_t which = 0;
  while (!subs[which].first->parsed()) ++which;
  const std::string command = subs[which].first->get_name();

  try {
    auto config = load_config(config_path);
    if (subs[which].second->count() > 0) {
      if (!config.estimator) throw ConfigError("--seed given but the config has no 'estimator' section");
      config.estimator->seed = seed;
    }
    const auto start = std::chrono::steady_clock::now();
    const auto output = runners[which](config, threads);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string report = make_envelope(command, config, output.results, wall).dump(2) + "\n";
    if (!csv_path.empty()) {
      if (output.csv.empty() && command != "local-pressure" && command != "gibbs-check")
        throw ConfigError("--csv: command '" + command + "' produces no grid");
      write_atomically(csv_path, "point_id,n,k,value\n" + output.csv);
    }
    if (out_path.empty()) {
      out << report << std::flush;
    } else {
      write_atomically(out_path, report);
    }
  } catch (const ConfigError& e) {
    err << "thermo: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "thermo: precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    err << "thermo: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace thermo::cli
