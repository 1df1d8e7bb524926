#include "roofkit/roofline_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "roofkit/errors.hpp"

namespace roofkit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(BoundClass c) {
  switch (c) {
    case BoundClass::ComputeBound: return "ComputeBound";
    case BoundClass::BandwidthBound: return "BandwidthBound";
    case BoundClass::OverheadBound: return "OverheadBound";
  }
  return "ComputeBound";
}

BoundClass bound_class_from_string(const std::string& s) {
  if (s == "ComputeBound") return BoundClass::ComputeBound;
  if (s == "BandwidthBound") return BoundClass::BandwidthBound;
  if (s == "OverheadBound") return BoundClass::OverheadBound;
  throw SchemaError("unknown bound class '" + s + "'");
}

CeilingSelection select_ceilings(const MachineSpec& machine, const std::string& compute_label,
                                 const std::string& memory_label) {
  validate(machine);
  CeilingSelection sel;
  sel.compute = compute_label.empty() ? machine.compute_ceilings.front()
                                      : machine.compute_ceiling(compute_label);
  sel.memory = memory_label.empty() ? machine.memory_ceilings.front()
                                    : machine.memory_ceiling(memory_label);
  return sel;
}

double arithmetic_intensity(const ComplexityPoint& c) {
  if (c.cc == 0.0) return 0.0;
  if (c.bc == 0.0) return kInf;
  return c.cc / c.bc;
}

double total_overhead(std::uint64_t invocations, const MachineSpec& machine) {
  return static_cast<double>(invocations) * machine.launch_overhead_sec;
}

double roofline_bound_flops(double ai, const ComputeCeiling& c, const MemoryCeiling& m,
                            double cc, double t_overhead) {
  double bound = c.flops_per_sec;
  bound = std::min(bound, m.bytes_per_sec * ai);
  if (t_overhead > 0.0) bound = std::min(bound, cc / t_overhead);
  return bound;
}

double overhead_escape_complexity(double peak_flops_per_sec, double t_overhead) {
  return peak_flops_per_sec * t_overhead;
}

double bound_runtime(const ComplexityPoint& c, const CeilingSelection& ceilings,
                     double t_overhead) {
  double t = c.cc / ceilings.compute.flops_per_sec;
  t = std::max(t, c.bc / ceilings.memory.bytes_per_sec);
  return std::max(t, t_overhead);
}

TimePoint time_coordinates(double measured_time_sec, double ai, double mb) {
  TimePoint t;
  if (std::isinf(ai)) {
    t.compute_time_sec = measured_time_sec;
    t.bandwidth_time_sec = 0.0;
    return t;
  }
  if (ai >= mb) {
    t.compute_time_sec = measured_time_sec;
    t.bandwidth_time_sec = measured_time_sec * (mb / ai);
  } else {
    t.compute_time_sec = measured_time_sec * (ai / mb);
    t.bandwidth_time_sec = measured_time_sec;
  }
  return t;
}

BoundClass classify(const TimePoint& t, double t_overhead) {
  if (t.compute_time_sec <= t_overhead && t.bandwidth_time_sec <= t_overhead)
    return BoundClass::OverheadBound;
  if (t.bandwidth_time_sec > t.compute_time_sec) return BoundClass::BandwidthBound;
  return BoundClass::ComputeBound;
}

BoundClass complexity_plane_region(const ComplexityPoint& c, const CeilingSelection& ceilings,
                                   double t_overhead) {
  if (c.cc <= ceilings.compute.flops_per_sec * t_overhead &&
      c.bc <= ceilings.memory.bytes_per_sec * t_overhead)
    return BoundClass::OverheadBound;
  double ai = arithmetic_intensity(c);
  double mb = machine_balance(ceilings.compute, ceilings.memory);
  return ai >= mb ? BoundClass::ComputeBound : BoundClass::BandwidthBound;
}

ComplexityPoint open_symbol(const AnalyzedKernel& k, const CeilingSelection& ceilings) {
  ComplexityPoint p;
  p.cc = k.time.compute_time_sec * ceilings.compute.flops_per_sec;
  p.bc = k.time.bandwidth_time_sec * ceilings.memory.bytes_per_sec;
  return p;
}

AnalyzedKernel analyze(const KernelAggregate& agg, const MachineSpec& machine,
                       const CeilingSelection& ceilings, const std::string& label) {
  if (!(agg.total_time_sec > 0.0)) {
    throw SchemaError("analyze: measured total_time_sec must be > 0");
  }
  AnalyzedKernel k;
  k.label = label;
  k.complexity = {agg.computational_complexity, agg.bandwidth_complexity};
  k.measured_time_sec = agg.total_time_sec;
  k.invocations = agg.total_invocations;
  k.ai = arithmetic_intensity(k.complexity);
  k.machine_balance = machine_balance(ceilings.compute, ceilings.memory);
  k.overhead_sec = total_overhead(agg.total_invocations, machine);
  k.time = time_coordinates(k.measured_time_sec, k.ai, k.machine_balance);
  k.classification = classify(k.time, k.overhead_sec);
  k.bound_runtime_sec = bound_runtime(k.complexity, ceilings, k.overhead_sec);
  k.roofline_gap = k.measured_time_sec / k.bound_runtime_sec;
  k.attained_flops_per_sec = k.complexity.cc / k.measured_time_sec;
  k.zero_ai_share = zero_ai_share(agg);

  double compute_term = k.complexity.cc / ceilings.compute.flops_per_sec;
  double memory_term = k.complexity.bc / ceilings.memory.bytes_per_sec;
  if (k.overhead_sec >= compute_term && k.overhead_sec >= memory_term) {
    k.binding = "launch overhead";
  } else if (compute_term >= memory_term) {
    k.binding = ceilings.compute.label;
  } else {
    k.binding = ceilings.memory.label;
  }
  k.measurement_anomaly = k.measured_time_sec < std::max(compute_term, memory_term);
  return k;
}

}  // namespace roofkit
