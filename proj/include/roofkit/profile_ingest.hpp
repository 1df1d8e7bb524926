#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace roofkit {

// Canonical form of per-kernel profiler exports. Counts are totals summed
// over all invocations of the record, not per-invocation averages.
struct KernelRecord {
  std::string kernel_name;
  std::uint64_t invocations = 1;
  double total_time_sec = 0.0;
  std::uint64_t flops_fp64 = 0;
  std::uint64_t flops_fp32 = 0;
  std::uint64_t flops_fp16 = 0;
  std::uint64_t flops_tensor = 0;
  std::uint64_t bytes_read = 0;
  std::uint64_t bytes_written = 0;

  std::uint64_t total_flops() const {
    return flops_fp64 + flops_fp32 + flops_fp16 + flops_tensor;
  }
  std::uint64_t total_bytes() const { return bytes_read + bytes_written; }
};

struct WorkloadProfile {
  std::string label;  // e.g. "pytorch fp16 fwd batch=16"
  std::vector<KernelRecord> kernels;
};

struct KernelAggregate {
  double computational_complexity = 0.0;  // FLOPs ("CC")
  double bandwidth_complexity = 0.0;      // Bytes ("BC")
  double total_time_sec = 0.0;
  std::uint64_t total_invocations = 0;
  double zero_ai_bytes = 0.0;  // bytes moved by kernels with zero FLOPs
};

// Per-pipeline FLOP weights. Complexity is precision-agnostic, so these
// default to 1 everywhere.
struct FlopWeighting {
  double fp64 = 1.0;
  double fp32 = 1.0;
  double fp16 = 1.0;
  double tensor = 1.0;
};

// Expected header, bit exact:
// kernel_name,invocations,time_ns,flops_fp64,flops_fp32,flops_fp16,flops_tensor,bytes_read,bytes_written
WorkloadProfile parse_profile_csv(std::istream& in, const std::string& label = {});
WorkloadProfile parse_profile_csv(const std::string& csv_text, const std::string& label = {});
std::string serialize_profile_csv(const WorkloadProfile& p);

std::string serialize_profile_json(const WorkloadProfile& p);
WorkloadProfile parse_profile_json(const std::string& json_text);

KernelAggregate aggregate(const WorkloadProfile& p, const FlopWeighting& w = {});

// zero_ai_bytes / BC, 0 when BC == 0.
double zero_ai_share(const KernelAggregate& agg);

}  // namespace roofkit
