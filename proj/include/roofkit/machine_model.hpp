#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace roofkit {

// Architecture capabilities. All values are in base SI units: FLOP, Byte,
// second. Display prefixes (G/T) are applied only at formatting time.

struct ComputeCeiling {
  std::string label;
  double flops_per_sec = 0.0;
};

struct MemoryCeiling {
  std::string label;
  double bytes_per_sec = 0.0;
};

struct MachineSpec {
  std::string name;
  std::vector<ComputeCeiling> compute_ceilings;  // file order preserved
  std::vector<MemoryCeiling> memory_ceilings;
  double launch_overhead_sec = 0.0;  // per kernel launch
  // Set when the input omitted launch_overhead_sec and 0 was assumed.
  bool overhead_defaulted = false;

  const ComputeCeiling& compute_ceiling(const std::string& label) const;
  const MemoryCeiling& memory_ceiling(const std::string& label) const;
};

// Factors of the matrix-pipeline peak: SMs x units/SM x clock x ops/unit/cycle
// x FMA factor.
struct TensorCorePeakParams {
  std::int64_t sm_count = 1;
  std::int64_t tc_per_sm = 1;
  double clock_hz = 1.0;
  std::int64_t ops_per_tc_per_cycle = 64;  // 4x4x4 matrix unit
  std::int64_t fma_factor = 2;
};

void validate(const TensorCorePeakParams& p);
void validate(const MachineSpec& spec);

double derive_tensor_core_peak(const TensorCorePeakParams& p);

// FLOPs/Byte at which compute and memory predict equal time.
double machine_balance(const ComputeCeiling& c, const MemoryCeiling& m);

MachineSpec parse_machine_spec(const std::string& json_text);
MachineSpec load_machine_spec(std::istream& in);
std::string serialize_machine_spec(const MachineSpec& spec);

}  // namespace roofkit
