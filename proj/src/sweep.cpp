#include "roofkit/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "json.hpp"
#include "roofkit/errors.hpp"
#include "roofkit/format.hpp"

namespace roofkit {

namespace {

std::int64_t to_int_parameter(double v, const std::string& name) {
  if (!(std::isfinite(v)) || v != std::floor(v) || std::fabs(v) > 9e15) {
    throw SchemaError("sweep: value " + num_g6(v) + " for parameter '" + name +
                      "' must be an integer");
  }
  return static_cast<std::int64_t>(v);
}

void apply_parameter(Conv2DSpec& s, const std::string& name, double value) {
  std::int64_t v = to_int_parameter(value, name);
  if (name == "n" || name == "batch") s.n = v;
  else if (name == "h") s.h = v;
  else if (name == "w") s.w = v;
  else if (name == "c_in") s.c_in = v;
  else if (name == "k_h") s.k_h = v;
  else if (name == "k_w") s.k_w = v;
  else if (name == "k") { s.k_h = v; s.k_w = v; }
  else if (name == "c_out" || name == "filters") s.c_out = v;
  else if (name == "stride") s.stride = v;
  else if (name == "padding") s.padding = v;
  else if (name == "elem_bytes") s.elem_bytes = v;
  else throw SchemaError("sweep: unknown conv2d parameter '" + name + "'");
}

void apply_parameter(LSTMSpec& s, const std::string& name, double value) {
  std::int64_t v = to_int_parameter(value, name);
  if (name == "batch") s.batch = v;
  else if (name == "seq_len") s.seq_len = v;
  else if (name == "input_features" || name == "features") s.input_features = v;
  else if (name == "hidden") s.hidden = v;
  else if (name == "elem_bytes") s.elem_bytes = v;
  else if (name == "activation_flops") s.activation_flops = v;
  else throw SchemaError("sweep: unknown lstm parameter '" + name + "'");
}

struct PointModel {
  ComplexityPoint complexity;
  std::int64_t invocations = 0;
};

PointModel model_point(const LayerSpec& layer_template, const std::string& parameter_name,
                       double value, const InvocationModel& inv) {
  PointModel out;
  if (std::holds_alternative<Conv2DSpec>(layer_template)) {
    Conv2DSpec s = std::get<Conv2DSpec>(layer_template);
    apply_parameter(s, parameter_name, value);
    try {
      out.complexity = conv2d_complexity(s);
      out.invocations = invocation_estimate(s, inv.kernels_per_step);
    } catch (const SchemaError& e) {
      throw SchemaError("sweep: value " + num_g6(value) + ": " + e.what());
    }
  } else {
    LSTMSpec s = std::get<LSTMSpec>(layer_template);
    apply_parameter(s, parameter_name, value);
    try {
      out.complexity = lstm_complexity(s);
      out.invocations =
          invocation_estimate(s, inv.kernels_per_step, inv.epilogue_invocations);
    } catch (const SchemaError& e) {
      throw SchemaError("sweep: value " + num_g6(value) + ": " + e.what());
    }
  }
  return out;
}

std::string default_label(const LayerSpec& layer_template, const std::string& parameter_name) {
  const char* layer = std::holds_alternative<Conv2DSpec>(layer_template) ? "conv2d" : "lstm";
  return std::string(layer) + " " + parameter_name;
}

}  // namespace

SweepSeries run_analytical_sweep(const LayerSpec& layer_template,
                                 const std::string& parameter_name,
                                 const std::vector<double>& values, const MachineSpec& machine,
                                 const CeilingSelection& ceilings,
                                 const InvocationModel& invocations,
                                 const std::string& series_label) {
  if (values.empty()) throw SchemaError("sweep: values must not be empty");
  std::vector<double> ordered = values;
  std::sort(ordered.begin(), ordered.end());
  for (size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i] == ordered[i - 1]) {
      throw SchemaError("sweep: duplicate parameter value " + num_g6(ordered[i]));
    }
  }

  SweepSeries series;
  series.series_label =
      series_label.empty() ? default_label(layer_template, parameter_name) : series_label;
  series.parameter_name = parameter_name;
  series.machine_name = machine.name;
  series.predicted = true;
  for (double value : ordered) {
    PointModel pm = model_point(layer_template, parameter_name, value, invocations);
    double t_overhead =
        total_overhead(static_cast<std::uint64_t>(pm.invocations), machine);
    KernelAggregate agg;
    agg.computational_complexity = pm.complexity.cc;
    agg.bandwidth_complexity = pm.complexity.bc;
    agg.total_invocations = static_cast<std::uint64_t>(pm.invocations);
    agg.total_time_sec = bound_runtime(pm.complexity, ceilings, t_overhead);
    SweepPoint point;
    point.parameter_value = value;
    point.analyzed = analyze(agg, machine, ceilings, series.series_label);
    series.points.push_back(std::move(point));
  }
  return series;
}

SweepSeries build_measured_series(const std::vector<WorkloadProfile>& profiles,
                                  const std::string& parameter_key, const MachineSpec& machine,
                                  const CeilingSelection& ceilings,
                                  const std::string& series_label) {
  if (profiles.empty()) throw SchemaError("sweep: profile list must not be empty");

  SweepSeries series;
  series.series_label = series_label.empty() ? parameter_key + " sweep" : series_label;
  series.parameter_name = parameter_key;
  series.machine_name = machine.name;
  series.predicted = false;

  for (const auto& profile : profiles) {
    std::string token = parameter_key + "=";
    size_t pos = profile.label.find(token);
    if (pos == std::string::npos) {
      throw SchemaError("sweep: profile label '" + profile.label + "' has no '" + token +
                        "' token");
    }
    const char* begin = profile.label.c_str() + pos + token.size();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end == begin) {
      throw SchemaError("sweep: profile label '" + profile.label + "' has a non-numeric '" +
                        parameter_key + "' value");
    }
    SweepPoint point;
    point.parameter_value = value;
    point.analyzed = analyze(aggregate(profile), machine, ceilings, profile.label);
    series.points.push_back(std::move(point));
  }

  std::sort(series.points.begin(), series.points.end(),
            [](const SweepPoint& a, const SweepPoint& b) {
              return a.parameter_value < b.parameter_value;
            });
  for (size_t i = 1; i < series.points.size(); ++i) {
    if (series.points[i].parameter_value == series.points[i - 1].parameter_value) {
      throw SchemaError("sweep: duplicate parameter value " +
                        num_g6(series.points[i].parameter_value) + " for '" + parameter_key +
                        "'");
    }
  }
  return series;
}

std::vector<SweepConfig> parse_sweep_config(const std::string& json_text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("sweep config: invalid JSON: ") + e.what());
  }

  nlohmann::json entries = nlohmann::json::array();
  if (root.is_array()) {
    entries = root;
  } else if (root.is_object()) {
    entries.push_back(root);
  } else {
    throw SchemaError("sweep config: top level must be an object or array");
  }
  if (entries.empty()) throw SchemaError("sweep config: no entries");

  std::vector<SweepConfig> configs;
  for (size_t i = 0; i < entries.size(); ++i) {
    const auto& j = entries[i];
    std::string path = "sweep config[" + std::to_string(i) + "]: ";
    auto require = [&](const char* key) -> const nlohmann::json& {
      auto it = j.find(key);
      if (it == j.end()) throw SchemaError(path + "missing key '" + std::string(key) + "'");
      return *it;
    };
    SweepConfig cfg;
    try {
      std::string layer = require("layer").get<std::string>();
      const auto& t = require("template");
      if (!t.is_object()) throw SchemaError(path + "'template' must be an object");
      if (layer == "conv2d") {
        Conv2DSpec s;
        s.n = t.value("n", s.n);
        s.h = t.value("h", s.h);
        s.w = t.value("w", s.w);
        s.c_in = t.value("c_in", s.c_in);
        s.k_h = t.value("k_h", s.k_h);
        s.k_w = t.value("k_w", s.k_w);
        s.c_out = t.value("c_out", s.c_out);
        s.stride = t.value("stride", s.stride);
        s.padding = t.value("padding", s.padding);
        s.elem_bytes = t.value("elem_bytes", s.elem_bytes);
        cfg.layer_template = s;
      } else if (layer == "lstm") {
        LSTMSpec s;
        s.batch = t.value("batch", s.batch);
        s.seq_len = t.value("seq_len", s.seq_len);
        s.input_features = t.value("input_features", s.input_features);
        s.hidden = t.value("hidden", s.hidden);
        s.elem_bytes = t.value("elem_bytes", s.elem_bytes);
        s.activation_flops = t.value("activation_flops", s.activation_flops);
        if (t.contains("weight_traffic")) {
          s.weight_traffic =
              weight_traffic_from_string(t.at("weight_traffic").get<std::string>());
        }
        cfg.layer_template = s;
      } else {
        throw SchemaError(path + "unknown layer '" + layer + "' (use conv2d|lstm)");
      }
      cfg.parameter = require("parameter").get<std::string>();
      cfg.values = require("values").get<std::vector<double>>();
      cfg.invocations.kernels_per_step = j.value("kernels_per_step", std::int64_t{1});
      cfg.invocations.epilogue_invocations = j.value("epilogue_invocations", std::int64_t{0});
      cfg.label = j.value("label", std::string{});
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(path + e.what());
    }
    configs.push_back(std::move(cfg));
  }
  return configs;
}

SweepSeries run_sweep_config(const SweepConfig& config, const MachineSpec& machine,
                             const CeilingSelection& ceilings) {
  return run_analytical_sweep(config.layer_template, config.parameter, config.values, machine,
                              ceilings, config.invocations, config.label);
}

}  // namespace roofkit
