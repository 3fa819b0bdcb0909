#include "photon/report.hpp"

namespace photon {

nlohmann::json to_json(const ReportEntry& e) {
  return {{"name", e.name},
          {"identity", e.equation},
          {"residual", e.residual},
          {"residual_median", e.residual_median},
          {"tolerance", e.tolerance},
          {"pass", e.pass}};
}

nlohmann::json to_json(const OperatorReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) entries.push_back(to_json(e));
  return {{"title", r.title},
          {"grid", r.grid_metadata},
          {"all_pass", r.all_pass()},
          {"checks", entries}};
}

}  // namespace photon
