#pragma once

#include <string>
#include <vector>

#include "roofkit/machine_model.hpp"
#include "roofkit/roofline_core.hpp"
#include "roofkit/sweep.hpp"

namespace roofkit {

struct ReportEntry {
  std::string series;
  double param = 0.0;
  double ai = 0.0;
  BoundClass classification = BoundClass::ComputeBound;
  double measured_sec = 0.0;
  double bound_sec = 0.0;
  double gap = 0.0;
  double attained_flops = 0.0;
  double overhead_share = 0.0;  // t_overhead / measured; > 1 is flagged
  double zero_ai_share = 0.0;
  std::string binding;  // ceiling label or "launch overhead"
  bool predicted = false;
};

struct AnalysisReport {
  std::string machine;
  std::vector<ReportEntry> entries;  // ordered by (series, param)
};

enum class ReportFormat { Json, Markdown };

// Classifications are copied from the analyzed kernels, never re-derived.
AnalysisReport build_report(const std::vector<SweepSeries>& series, const MachineSpec& machine);

std::string serialize_report(const AnalysisReport& report, ReportFormat format);
AnalysisReport parse_report_json(const std::string& json_text);

}  // namespace roofkit
