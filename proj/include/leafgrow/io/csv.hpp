#pragma once

#include <string>

#include "leafgrow/analysis.hpp"
#include "leafgrow/io/json.hpp"

namespace leafgrow::io {

inline constexpr const char* metrics_csv_header = "policy,statistic,value,runs,intervals,poisson_mean,seed";

// One row per (policy, statistic), policies in summary order and statistics
// in PolicySummary::statistics() order.
inline std::string export_metrics_csv(const EnsembleSummary& summary) {
  std::string out = std::string(metrics_csv_header) + "\n";
  const std::string tail = "," + std::to_string(summary.runs) + "," + std::to_string(summary.intervals) + "," +
                           format_double(summary.poisson_mean) + "," + std::to_string(summary.seed) + "\n";
  for (const auto& policy : summary.policies) {
    for (const auto& stat : policy.statistics()) {
      out += policy.policy + "," + stat.name + "," + format_double(stat.value) + tail;
    }
  }
  return out;
}

}  // namespace leafgrow::io
