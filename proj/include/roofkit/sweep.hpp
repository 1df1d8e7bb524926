#pragma once

#include <string>
#include <variant>
#include <vector>

#include "roofkit/cost_models.hpp"
#include "roofkit/profile_ingest.hpp"
#include "roofkit/roofline_core.hpp"

namespace roofkit {

using LayerSpec = std::variant<Conv2DSpec, LSTMSpec>;

struct InvocationModel {
  std::int64_t kernels_per_step = 1;
  std::int64_t epilogue_invocations = 0;
};

struct SweepPoint {
  double parameter_value = 0.0;
  AnalyzedKernel analyzed;
};

struct SweepSeries {
  std::string series_label;
  std::string parameter_name;
  std::string machine_name;  // mixed-machine plots are rejected early
  bool predicted = false;    // model-predicted runtime vs measured profiles
  std::vector<SweepPoint> points;  // parameter values strictly increasing
};

// One analyzed point per value, using the model-bound runtime as the
// predicted measured time. Values are sorted; duplicates are rejected.
SweepSeries run_analytical_sweep(const LayerSpec& layer_template,
                                 const std::string& parameter_name,
                                 const std::vector<double>& values, const MachineSpec& machine,
                                 const CeilingSelection& ceilings,
                                 const InvocationModel& invocations,
                                 const std::string& series_label = {});

// Aggregate and analyze each profile, ordering points by the numeric value
// extracted from the "key=value" token in each profile label.
SweepSeries build_measured_series(const std::vector<WorkloadProfile>& profiles,
                                  const std::string& parameter_key, const MachineSpec& machine,
                                  const CeilingSelection& ceilings,
                                  const std::string& series_label = {});

struct SweepConfig {
  std::string label;
  LayerSpec layer_template;
  std::string parameter;
  std::vector<double> values;
  InvocationModel invocations;
};

// Accepts a single config object or an array of them.
std::vector<SweepConfig> parse_sweep_config(const std::string& json_text);

SweepSeries run_sweep_config(const SweepConfig& config, const MachineSpec& machine,
                             const CeilingSelection& ceilings);

}  // namespace roofkit
