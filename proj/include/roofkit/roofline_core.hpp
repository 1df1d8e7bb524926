#pragma once

#include <cstdint>
#include <string>

#include "roofkit/machine_model.hpp"
#include "roofkit/profile_ingest.hpp"

namespace roofkit {

struct ComplexityPoint {
  double cc = 0.0;  // FLOPs
  double bc = 0.0;  // Bytes
};

struct TimePoint {
  double compute_time_sec = 0.0;
  double bandwidth_time_sec = 0.0;
};

enum class BoundClass { ComputeBound, BandwidthBound, OverheadBound };

std::string to_string(BoundClass c);
BoundClass bound_class_from_string(const std::string& s);

// One compute and one memory ceiling picked out of a MachineSpec. Every
// analysis names its selection explicitly; empty labels pick the first entry.
struct CeilingSelection {
  ComputeCeiling compute;
  MemoryCeiling memory;
};

CeilingSelection select_ceilings(const MachineSpec& machine,
                                 const std::string& compute_label = {},
                                 const std::string& memory_label = {});

struct AnalyzedKernel {
  std::string label;
  ComplexityPoint complexity;
  double measured_time_sec = 0.0;
  std::uint64_t invocations = 0;
  double ai = 0.0;  // FLOPs/Byte, may be +inf for zero-byte workloads
  double machine_balance = 0.0;
  BoundClass classification = BoundClass::ComputeBound;
  TimePoint time;
  double bound_runtime_sec = 0.0;
  double roofline_gap = 0.0;  // measured / bound; 1.0 means on the roofline
  double attained_flops_per_sec = 0.0;
  double overhead_sec = 0.0;  // invocations * per-launch overhead
  double zero_ai_share = 0.0;
  std::string binding;  // ceiling label or "launch overhead"
  // Measured time below the anchor resource's complexity time: the open
  // symbol would fall under the closed one. Cache effects, not silence.
  bool measurement_anomaly = false;
};

// cc/bc; +inf when bc == 0 and cc > 0; 0 when cc == 0 (including 0/0).
double arithmetic_intensity(const ComplexityPoint& c);

// invocations * per-launch overhead.
double total_overhead(std::uint64_t invocations, const MachineSpec& machine);

// min(peak FLOP/s, peak B/s * ai, cc / t_overhead). The overhead term is
// +inf when t_overhead == 0.
double roofline_bound_flops(double ai, const ComputeCeiling& c, const MemoryCeiling& m,
                            double cc, double t_overhead);

// Complexity at which the overhead ceiling meets the given peak; below it a
// workload cannot escape the launch-latency bound.
double overhead_escape_complexity(double peak_flops_per_sec, double t_overhead);

// max(cc/peak, bc/bandwidth, t_overhead): the minimum runtime the model
// permits, assuming the smaller time overlaps perfectly with the larger.
double bound_runtime(const ComplexityPoint& c, const CeilingSelection& ceilings,
                     double t_overhead);

// Anchor the measured runtime to the dominant resource and scale the other
// coordinate by ai relative to machine balance. max(ct, bt) == measured
// always; ct/bt == ai/mb. ai == +inf yields (measured, 0).
TimePoint time_coordinates(double measured_time_sec, double ai, double mb);

// Overhead-bound when both coordinates are <= t_overhead (inclusive),
// bandwidth-bound when bandwidth time exceeds compute time, compute-bound
// otherwise (ties classify compute-bound).
BoundClass classify(const TimePoint& t, double t_overhead);

// Same tessellation in the complexity plane: inside the overhead box when
// cc <= peak*t_overhead and bc <= bandwidth*t_overhead, else by ai vs mb.
BoundClass complexity_plane_region(const ComplexityPoint& c, const CeilingSelection& ceilings,
                                   double t_overhead);

// The measured-time symbol rescaled into complexity units:
// (bt * peak bytes/s, ct * peak FLOP/s). Shares the closed symbol's ai
// diagonal by construction.
ComplexityPoint open_symbol(const AnalyzedKernel& k, const CeilingSelection& ceilings);

AnalyzedKernel analyze(const KernelAggregate& agg, const MachineSpec& machine,
                       const CeilingSelection& ceilings, const std::string& label = {});

}  // namespace roofkit
