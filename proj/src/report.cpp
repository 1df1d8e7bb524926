#include "roofkit/report.hpp"

#include <algorithm>
#include <limits>

#include "json.hpp"
#include "roofkit/errors.hpp"
#include "roofkit/format.hpp"

namespace roofkit {

AnalysisReport build_report(const std::vector<SweepSeries>& series, const MachineSpec& machine) {
  AnalysisReport report;
  report.machine = machine.name;
  for (const auto& s : series) {
    if (s.machine_name != machine.name) {
      throw SchemaError("report: series '" + s.series_label + "' was analyzed against machine '" +
                        s.machine_name + "', not '" + machine.name + "'");
    }
    for (const auto& p : s.points) {
      ReportEntry e;
      e.series = s.series_label;
      e.param = p.parameter_value;
      e.ai = p.analyzed.ai;
      e.classification = p.analyzed.classification;
      e.measured_sec = p.analyzed.measured_time_sec;
      e.bound_sec = p.analyzed.bound_runtime_sec;
      e.gap = p.analyzed.roofline_gap;
      e.attained_flops = p.analyzed.attained_flops_per_sec;
      e.overhead_share = p.analyzed.overhead_sec / p.analyzed.measured_time_sec;
      e.zero_ai_share = p.analyzed.zero_ai_share;
      e.binding = p.analyzed.binding;
      e.predicted = s.predicted;
      report.entries.push_back(std::move(e));
    }
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const ReportEntry& a, const ReportEntry& b) {
                     if (a.series != b.series) return a.series < b.series;
                     return a.param < b.param;
                   });
  return report;
}

namespace {

std::string markdown_report(const AnalysisReport& report) {
  std::string out = "# Roofline analysis: " + report.machine + "\n";
  out += "\nOverhead model: total workload invocations x per-launch latency.\n";

  std::string current_series;
  size_t overhead_bound = 0, total = 0;
  bool any_anomaly = false, any_overshare = false;

  auto flush_series_note = [&]() {
    if (current_series.empty()) return;
    if (overhead_bound > 0) {
      out += "\nLaunch overhead binds " + std::to_string(overhead_bound) + " of " +
             std::to_string(total) +
             " points: run time tracks launches x per-launch latency, so fewer or fatter "
             "kernels are the lever.\n";
    }
  };

  for (const auto& e : report.entries) {
    if (e.series != current_series) {
      flush_series_note();
      current_series = e.series;
      overhead_bound = 0;
      total = 0;
      out += "\n## " + e.series + (e.predicted ? " [PREDICTED]" : " [MEASURED]") + "\n\n";
      out += "| param | ai | class | measured_s | bound_s | gap | attained_flops | "
             "overhead_share | zero_ai_share | binding |\n";
      out += "|---|---|---|---|---|---|---|---|---|---|\n";
    }
    ++total;
    if (e.classification == BoundClass::OverheadBound) ++overhead_bound;
    std::string gap = num_g6(e.gap);
    if (e.gap < 1.0) {
      gap += "*";
      any_anomaly = true;
    }
    std::string overhead_share = num_g6(e.overhead_share);
    if (e.overhead_share > 1.0) {
      overhead_share += "!";
      any_overshare = true;
    }
    out += "| " + num_g6(e.param) + " | " + num_g6(e.ai) + " | " + to_string(e.classification) +
           " | " + num_g6(e.measured_sec) + " | " + num_g6(e.bound_sec) + " | " + gap + " | " +
           num_g6(e.attained_flops) + " | " + overhead_share + " | " + num_g6(e.zero_ai_share) +
           " | " + e.binding + " |\n";
  }
  flush_series_note();

  if (any_anomaly) {
    out += "\n(*) measured time beats the model bound; check counters and cache effects.\n";
  }
  if (any_overshare) {
    out += "\n(!) modeled launch overhead exceeds the measured time.\n";
  }
  return out;
}

std::string json_report(const AnalysisReport& report) {
  nlohmann::ordered_json j;
  j["machine"] = report.machine;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    j["entries"].push_back({{"series", e.series},
                            {"param", e.param},
                            {"ai", e.ai},
                            {"class", to_string(e.classification)},
                            {"measured_sec", e.measured_sec},
                            {"bound_sec", e.bound_sec},
                            {"gap", e.gap},
                            {"attained_flops", e.attained_flops},
                            {"overhead_share", e.overhead_share},
                            {"zero_ai_share", e.zero_ai_share},
                            {"binding", e.binding},
                            {"predicted", e.predicted}});
  }
  return j.dump(2) + "\n";
}

}  // namespace

std::string serialize_report(const AnalysisReport& report, ReportFormat format) {
  return format == ReportFormat::Json ? json_report(report) : markdown_report(report);
}

AnalysisReport parse_report_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("report json: invalid JSON: ") + e.what());
  }
  AnalysisReport report;
  try {
    report.machine = j.at("machine").get<std::string>();
    for (const auto& ej : j.at("entries")) {
      ReportEntry e;
      e.series = ej.at("series").get<std::string>();
      e.param = ej.at("param").get<double>();
      // Infinite ai (zero-byte workloads) serializes as JSON null.
      e.ai = ej.at("ai").is_null() ? std::numeric_limits<double>::infinity()
                                   : ej.at("ai").get<double>();
      e.classification = bound_class_from_string(ej.at("class").get<std::string>());
      e.measured_sec = ej.at("measured_sec").get<double>();
      e.bound_sec = ej.at("bound_sec").get<double>();
      e.gap = ej.at("gap").get<double>();
      e.attained_flops = ej.at("attained_flops").get<double>();
      e.overhead_share = ej.at("overhead_share").get<double>();
      e.zero_ai_share = ej.at("zero_ai_share").get<double>();
      e.binding = ej.at("binding").get<std::string>();
      e.predicted = ej.at("predicted").get<bool>();
      report.entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("report json: ") + e.what());
  }
  return report;
}

}  // namespace roofkit
