#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "photon/cli.hpp"
#include "photon/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"momentum-space photon wavefunction toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "override the config random seed");
  };

  CLI::App* verify = app.add_subcommand(
      "verify", "run the full identity/invariant verification suite");
  CLI::App* shift = app.add_subcommand(
      "shift-scan", "scan the barycenter shift over incidence angles");
  CLI::App* fields = app.add_subcommand(
      "fields", "synthesize real-space E, H, A snapshots");
  CLI::App* demo = app.add_subcommand(
      "gauge-demo", "demonstrate the gauge transformation laws");
  for (CLI::App* sub : {verify, shift, fields, demo}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    photon::RunConfig cfg = config_path.empty()
                                ? photon::RunConfig()
                                : photon::RunConfig::from_file(config_path);
    if (seed) cfg.seed = *seed;
    const std::filesystem::path out(out_dir);
    if (verify->parsed()) return photon::cmd_verify(cfg, out);
    if (shift->parsed()) return photon::cmd_shift_scan(cfg, out);
    if (fields->parsed()) return photon::cmd_fields(cfg, out);
    if (demo->parsed()) return photon::cmd_gauge_demo(cfg, out);
  } catch (const photon::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
