#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace photon {

// One verified identity: residual against its tolerance.
struct ReportEntry {
  std::string name;
  std::string equation;  // display label of the identity being checked
  double residual = 0.0;         // worst case over trials / index pairs
  double residual_median = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct OperatorReport {
  std::string title;
  std::vector<ReportEntry> entries;
  nlohmann::json grid_metadata;

  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

nlohmann::json to_json(const ReportEntry& e);
nlohmann::json to_json(const OperatorReport& r);

}  // namespace photon
