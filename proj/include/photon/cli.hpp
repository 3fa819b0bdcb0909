#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "photon/kgrid.hpp"

namespace photon {

// Parsed JSON run configuration shared by all commands.  Every knob has a
// default so an empty document is a valid config.
struct RunConfig {
  // grid
  Vec3 center;
  Vec3 half_width = Vec3::Constant(0.5);
  std::array<int, 3> n = {33, 33, 33};
  double eps_cone = 1e-2;
  double eps_k = -1.0;  // negative: library default

  // gauges
  Vec3 gauge_I = Vec3(0, 0, 1);
  Vec3 gauge_I_prime = Vec3(1, 0, 0);

  // packet
  Vec3 packet_k0;
  Vec3 packet_width = Vec3::Constant(0.08);
  bool packet_width_set = false;
  int packet_sigma = 1;

  // verification harness
  int trials = 10;
  int quasi_unitarity_points = 10000;
  int quasi_unitarity_states = 20;
  int covariance_states = 10;
  int covariance_gauge_pairs = 5;

  // spin-Hall scan
  std::vector<double> scan_theta;          // radians
  std::vector<int> scan_sigma = {1, -1};
  double scan_k0 = 10.0;
  double scan_divergence = 0.01;
  int scan_n = 33;

  // field synthesis
  std::vector<double> field_times = {0.0};
  Vec3 field_center = Vec3::Zero();
  Vec3 field_half_extent;                  // default derived from grid
  std::array<int, 3> field_n = {32, 1, 32};
  double divergence_h = 1e-3;

  std::uint64_t seed = 12345;

  RunConfig();
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::filesystem::path& path);
};

// Each command returns a process exit status (0 = every check passed) and
// writes its JSON/CSV artifacts under `out_dir` atomically.
int cmd_verify(const RunConfig& cfg, const std::filesystem::path& out_dir);
int cmd_shift_scan(const RunConfig& cfg, const std::filesystem::path& out_dir);
int cmd_fields(const RunConfig& cfg, const std::filesystem::path& out_dir);
int cmd_gauge_demo(const RunConfig& cfg, const std::filesystem::path& out_dir);

// Parallelism cap honored by command internals: PHOTON_THREADS, else
// hardware concurrency.
int thread_budget();

}  // namespace photon
