#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "permsched/scheduler/schedule.hpp"
#include "permsched/subproblems/instance.hpp"

namespace permsched {

/// Rounds to 9 decimal places so reports are stable under last-bit noise.
inline double report_number(double x) {
  const double r = std::round(x * 1e9) / 1e9;
  return r == 0.0 ? 0.0 : r;
}

struct Report {
  std::string instance;
  std::vector<Schedule> schedules;

  /// Index of the schedule with the largest total (earliest on ties).
  std::size_t best() const {
    std::size_t b = 0;
    for (std::size_t k = 1; k < schedules.size(); ++k) {
      if (schedules[k].total > schedules[b].total + 1e-9) b = k;
    }
    return b;
  }

  double ratio(std::size_t k) const {
    const double top = schedules.at(best()).total;
    return top > 0.0 ? schedules.at(k).total / top : 1.0;
  }
};

inline nlohmann::json to_json(const Schedule& s, const Instance& inst) {
  nlohmann::json j;
  j["method"] = to_string(s.method);
  j["total"] = report_number(s.total);
  std::vector<double> steps;
  for (double v : s.step_values) steps.push_back(report_number(v));
  j["steps"] = steps;
  j["order"] = s.order_ids(inst);
  if (s.lp_bound) j["lp_bound"] = report_number(*s.lp_bound);
  if (s.certified) j["certified"] = *s.certified;
  if (s.method == Method::Lp) {
    j["repaired"] = s.repaired;
    j["repair_nodes"] = s.repair_nodes;
  }
  return j;
}

inline nlohmann::json to_json(const Report& r, const Instance& inst) {
  nlohmann::json j;
  j["instance"] = r.instance;
  j["schedules"] = nlohmann::json::array();
  for (const auto& s : r.schedules) j["schedules"].push_back(to_json(s, inst));
  if (!r.schedules.empty()) {
    nlohmann::json cmp;
    cmp["best"] = to_string(r.schedules[r.best()].method);
    nlohmann::json ratios = nlohmann::json::object();
    for (std::size_t k = 0; k < r.schedules.size(); ++k) {
      ratios[to_string(r.schedules[k].method)] = report_number(r.ratio(k));
    }
    cmp["ratios"] = std::move(ratios);
    j["comparison"] = std::move(cmp);
  }
  return j;
}

inline std::string serialize_report(const Report& r, const Instance& inst) {
  return to_json(r, inst).dump(2) + "\n";
}

}  // namespace permsched
