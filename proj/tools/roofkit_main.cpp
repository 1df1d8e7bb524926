#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "roofkit/cost_models.hpp"
#include "roofkit/errors.hpp"
#include "roofkit/format.hpp"
#include "roofkit/machine_model.hpp"
#include "roofkit/plot.hpp"
#include "roofkit/profile_ingest.hpp"
#include "roofkit/report.hpp"
#include "roofkit/roofline_core.hpp"
#include "roofkit/sweep.hpp"

namespace {

using namespace roofkit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

void diagnostic(const std::string& msg) {
  bool color = isatty(STDERR_FILENO) && std::getenv("NO_COLOR") == nullptr;
  if (color) {
    std::cerr << "\033[31merror:\033[0m " << msg << "\n";
  } else {
    std::cerr << "error: " << msg << "\n";
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw SchemaError("failed writing '" + path + "'");
}

std::string file_stem(const std::string& path) {
  size_t slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  size_t dot = name.find_last_of('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

MachineSpec load_machine(const std::string& path) {
  MachineSpec machine = parse_machine_spec(read_file(path));
  if (machine.overhead_defaulted) {
    std::cerr << "warning: '" << path
              << "' omits launch_overhead_sec; assuming 0 s per launch\n";
  }
  return machine;
}

struct ChartFlags {
  std::string svg_path;
  std::string chart = "classic";
  std::string title;
};

void write_svg(const ChartFlags& flags, const MachineSpec& machine,
               const std::string& ceiling, const std::string& memory_ceiling,
               const std::vector<SweepSeries>& series, const std::string& default_title) {
  ChartSpec chart;
  chart.kind = chart_kind_from_string(flags.chart);
  chart.machine = machine;
  chart.classify_ceiling_label = ceiling;
  chart.memory_ceiling_label = memory_ceiling;
  chart.series = series;
  chart.title = flags.title.empty() ? default_title : flags.title;
  write_file(flags.svg_path, render_chart(chart));
}

struct DeriveTcArgs {
  std::int64_t sms = 0;
  std::int64_t tc_per_sm = 0;
  double clock_ghz = 0.0;
  std::int64_t ops_per_cycle = 64;
  std::int64_t fma = 2;
};

int run_derive_tc(const DeriveTcArgs& args) {
  TensorCorePeakParams p;
  p.sm_count = args.sms;
  p.tc_per_sm = args.tc_per_sm;
  p.clock_hz = args.clock_ghz * 1e9;
  p.ops_per_tc_per_cycle = args.ops_per_cycle;
  p.fma_factor = args.fma;
  std::cout << num_g6(derive_tensor_core_peak(p)) << "\n";
  return kExitOk;
}

struct IngestArgs {
  std::string profile_path;
  std::string out_path;
  std::string label;
};

int run_ingest(const IngestArgs& args) {
  std::string label = args.label.empty() ? file_stem(args.profile_path) : args.label;
  WorkloadProfile profile = parse_profile_csv(read_file(args.profile_path), label);
  write_file(args.out_path, serialize_profile_json(profile));
  return kExitOk;
}

struct AnalyzeArgs {
  std::string profile_path;
  std::string machine_path;
  std::string ceiling;
  std::string memory_ceiling;
  std::string report_path;
  std::string format = "json";
  std::string label;
  ChartFlags chart;
};

int run_analyze(const AnalyzeArgs& args) {
  MachineSpec machine = load_machine(args.machine_path);
  CeilingSelection sel = select_ceilings(machine, args.ceiling, args.memory_ceiling);
  std::string label = args.label.empty() ? file_stem(args.profile_path) : args.label;
  WorkloadProfile profile = parse_profile_csv(read_file(args.profile_path), label);

  SweepSeries series;
  series.series_label = label;
  series.parameter_name = "";
  series.machine_name = machine.name;
  series.predicted = false;
  series.points.push_back({0.0, analyze(aggregate(profile), machine, sel, label)});

  AnalysisReport report = build_report({series}, machine);
  ReportFormat format = args.format == "markdown" ? ReportFormat::Markdown : ReportFormat::Json;
  write_file(args.report_path, serialize_report(report, format));
  if (!args.chart.svg_path.empty()) {
    write_svg(args.chart, machine, args.ceiling, args.memory_ceiling, {series},
              label + " (" + machine.name + ")");
  }
  return kExitOk;
}

struct ModelArgs {
  std::string machine_path;
  std::string ceiling;
  std::string memory_ceiling;
  std::int64_t kernels_per_step = 1;
  std::int64_t epilogue = 0;
};

int print_model(const ComplexityPoint& complexity, std::int64_t invocations,
                const MachineSpec& machine, const CeilingSelection& sel) {
  double t_overhead = total_overhead(static_cast<std::uint64_t>(invocations), machine);
  double bound = bound_runtime(complexity, sel, t_overhead);
  KernelAggregate agg;
  agg.computational_complexity = complexity.cc;
  agg.bandwidth_complexity = complexity.bc;
  agg.total_invocations = static_cast<std::uint64_t>(invocations);
  agg.total_time_sec = bound;
  AnalyzedKernel k = analyze(agg, machine, sel, "model");
  std::cout << "cc_flops " << num_full(complexity.cc) << "\n";
  std::cout << "bc_bytes " << num_full(complexity.bc) << "\n";
  std::cout << "ai " << num_g6(k.ai) << "\n";
  std::cout << "invocations " << invocations << "\n";
  std::cout << "t_overhead_sec " << num_g6(t_overhead) << "\n";
  std::cout << "bound_runtime_sec " << num_g6(bound) << "\n";
  std::cout << "class " << to_string(k.classification) << "\n";
  std::cout << "binding " << k.binding << "\n";
  return kExitOk;
}

int run_model_conv2d(const Conv2DSpec& spec, const ModelArgs& args) {
  MachineSpec machine = load_machine(args.machine_path);
  CeilingSelection sel = select_ceilings(machine, args.ceiling, args.memory_ceiling);
  return print_model(conv2d_complexity(spec),
                     invocation_estimate(spec, args.kernels_per_step), machine, sel);
}

int run_model_lstm(const LSTMSpec& spec, const ModelArgs& args) {
  MachineSpec machine = load_machine(args.machine_path);
  CeilingSelection sel = select_ceilings(machine, args.ceiling, args.memory_ceiling);
  return print_model(lstm_complexity(spec),
                     invocation_estimate(spec, args.kernels_per_step, args.epilogue), machine,
                     sel);
}

struct SweepArgs {
  std::string config_path;
  std::string machine_path;
  std::string ceiling;
  std::string memory_ceiling;
  std::string report_path;
  std::string format = "json";
  ChartFlags chart;
};

std::vector<SweepSeries> run_configs(const SweepArgs& args, MachineSpec& machine) {
  machine = load_machine(args.machine_path);
  CeilingSelection sel = select_ceilings(machine, args.ceiling, args.memory_ceiling);
  std::vector<SweepSeries> series;
  for (const auto& config : parse_sweep_config(read_file(args.config_path))) {
    series.push_back(run_sweep_config(config, machine, sel));
  }
  return series;
}

int run_sweep(const SweepArgs& args) {
  MachineSpec machine;
  std::vector<SweepSeries> series = run_configs(args, machine);
  AnalysisReport report = build_report(series, machine);
  ReportFormat format = args.format == "markdown" ? ReportFormat::Markdown : ReportFormat::Json;
  write_file(args.report_path, serialize_report(report, format));
  if (!args.chart.svg_path.empty()) {
    write_svg(args.chart, machine, args.ceiling, args.memory_ceiling, series,
              "sweep (" + machine.name + ")");
  }
  return kExitOk;
}

int run_plot(const SweepArgs& args) {
  MachineSpec machine;
  std::vector<SweepSeries> series = run_configs(args, machine);
  write_svg(args.chart, machine, args.ceiling, args.memory_ceiling, series,
            "sweep (" + machine.name + ")");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"roofkit: time-based Roofline analysis for kernel workloads"};
  app.require_subcommand(1);

  // machine derive-tc
  auto* machine_cmd = app.add_subcommand("machine", "machine characterization helpers");
  machine_cmd->require_subcommand(1);
  auto* derive = machine_cmd->add_subcommand(
      "derive-tc", "derive the matrix-pipeline peak from hardware factors");
  DeriveTcArgs tc_args;
  derive->add_option("--sms", tc_args.sms, "number of SMs")->required();
  derive->add_option("--tc-per-sm", tc_args.tc_per_sm, "matrix units per SM")->required();
  derive->add_option("--clock-ghz", tc_args.clock_ghz, "clock in GHz")->required();
  derive->add_option("--ops-per-cycle", tc_args.ops_per_cycle, "ops per unit per cycle");
  derive->add_option("--fma", tc_args.fma, "FMA factor");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "canonicalize a profile CSV into JSON");
  IngestArgs ingest_args;
  ingest->add_option("--profile", ingest_args.profile_path, "profile CSV")->required();
  ingest->add_option("--out", ingest_args.out_path, "output JSON path")->required();
  ingest->add_option("--label", ingest_args.label, "workload label");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "analyze a measured profile");
  AnalyzeArgs analyze_args;
  analyze_cmd->add_option("--profile", analyze_args.profile_path, "profile CSV")->required();
  analyze_cmd->add_option("--machine", analyze_args.machine_path, "machine spec JSON")
      ->required();
  analyze_cmd->add_option("--ceiling", analyze_args.ceiling, "compute ceiling label")
      ->required();
  analyze_cmd->add_option("--memory-ceiling", analyze_args.memory_ceiling,
                          "memory ceiling label (default: first)");
  analyze_cmd->add_option("--report", analyze_args.report_path, "report output path")
      ->required();
  analyze_cmd->add_option("--format", analyze_args.format, "report format")
      ->check(CLI::IsMember({"json", "markdown"}));
  analyze_cmd->add_option("--label", analyze_args.label, "workload label");
  analyze_cmd->add_option("--svg", analyze_args.chart.svg_path, "chart output path");
  analyze_cmd->add_option("--chart", analyze_args.chart.chart, "chart kind")
      ->check(CLI::IsMember({"classic", "complexity", "time", "4d"}));
  analyze_cmd->add_option("--title", analyze_args.chart.title, "chart title");

  // model conv2d|lstm
  auto* model_cmd = app.add_subcommand("model", "analytical layer cost models");
  model_cmd->require_subcommand(1);
  ModelArgs model_args;
  Conv2DSpec conv_spec;
  auto* conv = model_cmd->add_subcommand("conv2d", "2D convolution layer");
  conv->add_option("--batch", conv_spec.n, "batch size");
  conv->add_option("--height", conv_spec.h, "input height");
  conv->add_option("--width", conv_spec.w, "input width");
  conv->add_option("--channels", conv_spec.c_in, "input channels");
  conv->add_option("--kernel-h", conv_spec.k_h, "kernel height");
  conv->add_option("--kernel-w", conv_spec.k_w, "kernel width");
  conv->add_option("--filters", conv_spec.c_out, "output channels");
  conv->add_option("--stride", conv_spec.stride, "stride");
  conv->add_option("--padding", conv_spec.padding, "padding");
  conv->add_option("--elem-bytes", conv_spec.elem_bytes, "element size in bytes");

  LSTMSpec lstm_spec;
  std::string weight_traffic = "streamed";
  auto* lstm = model_cmd->add_subcommand("lstm", "LSTM layer");
  lstm->add_option("--batch", lstm_spec.batch, "batch size");
  lstm->add_option("--seq-len", lstm_spec.seq_len, "sequence length");
  lstm->add_option("--features", lstm_spec.input_features, "input features");
  lstm->add_option("--hidden", lstm_spec.hidden, "hidden size");
  lstm->add_option("--elem-bytes", lstm_spec.elem_bytes, "element size in bytes");
  lstm->add_option("--weight-traffic", weight_traffic, "streamed|resident");
  lstm->add_option("--activation-flops", lstm_spec.activation_flops,
                   "FLOPs per activation element");

  for (auto* cmd : {conv, lstm}) {
    cmd->add_option("--machine", model_args.machine_path, "machine spec JSON")->required();
    cmd->add_option("--ceiling", model_args.ceiling, "compute ceiling label");
    cmd->add_option("--memory-ceiling", model_args.memory_ceiling, "memory ceiling label");
    cmd->add_option("--kernels-per-step", model_args.kernels_per_step, "kernel launches per step");
  }
  lstm->add_option("--epilogue-invocations", model_args.epilogue, "fixed epilogue launches");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "run an analytical parameter sweep");
  SweepArgs sweep_args;
  sweep_cmd->add_option("--config", sweep_args.config_path, "sweep config JSON")->required();
  sweep_cmd->add_option("--machine", sweep_args.machine_path, "machine spec JSON")->required();
  sweep_cmd->add_option("--ceiling", sweep_args.ceiling, "compute ceiling label");
  sweep_cmd->add_option("--memory-ceiling", sweep_args.memory_ceiling, "memory ceiling label");
  sweep_cmd->add_option("--report", sweep_args.report_path, "report output path")->required();
  sweep_cmd->add_option("--format", sweep_args.format, "report format")
      ->check(CLI::IsMember({"json", "markdown"}));
  sweep_cmd->add_option("--svg", sweep_args.chart.svg_path, "chart output path");
  sweep_cmd->add_option("--chart", sweep_args.chart.chart, "chart kind")
      ->check(CLI::IsMember({"classic", "complexity", "time", "4d"}));
  sweep_cmd->add_option("--title", sweep_args.chart.title, "chart title");

  // plot
  auto* plot_cmd = app.add_subcommand("plot", "render a sweep config as a chart");
  SweepArgs plot_args;
  plot_args.chart.chart = "4d";
  plot_cmd->add_option("--config", plot_args.config_path, "sweep config JSON")->required();
  plot_cmd->add_option("--machine", plot_args.machine_path, "machine spec JSON")->required();
  plot_cmd->add_option("--ceiling", plot_args.ceiling, "compute ceiling label");
  plot_cmd->add_option("--memory-ceiling", plot_args.memory_ceiling, "memory ceiling label");
  plot_cmd->add_option("--svg", plot_args.chart.svg_path, "chart output path")->required();
  plot_cmd->add_option("--chart", plot_args.chart.chart, "chart kind")
      ->check(CLI::IsMember({"classic", "complexity", "time", "4d"}));
  plot_cmd->add_option("--title", plot_args.chart.title, "chart title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    diagnostic(e.what());
    return kExitUsage;
  }

  try {
    if (derive->parsed()) return run_derive_tc(tc_args);
    if (ingest->parsed()) return run_ingest(ingest_args);
    if (analyze_cmd->parsed()) return run_analyze(analyze_args);
    if (conv->parsed()) return run_model_conv2d(conv_spec, model_args);
    if (lstm->parsed()) {
      lstm_spec.weight_traffic = weight_traffic_from_string(weight_traffic);
      return run_model_lstm(lstm_spec, model_args);
    }
    if (sweep_cmd->parsed()) return run_sweep(sweep_args);
    if (plot_cmd->parsed()) return run_plot(plot_args);
    diagnostic("no subcommand selected");
    return kExitUsage;
  } catch (const SchemaError& e) {
    diagnostic(e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    diagnostic(std::string("internal: ") + e.what());
    return kExitInternal;
  }
}
