#include "roofkit/machine_model.hpp"

#include <istream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "roofkit/errors.hpp"

namespace roofkit {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError("machine spec: " + path + " " + what);
}

double require_number(const ordered_json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "must be a number");
  return j.get<double>();
}

std::string require_string(const ordered_json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "must be a string");
  return j.get<std::string>();
}

const ordered_json& require_key(const ordered_json& j, const std::string& key,
                                const std::string& parent) {
  auto it = j.find(key);
  if (it == j.end()) {
    std::string path = parent.empty() ? key : parent + "." + key;
    fail(path, "is missing");
  }
  return *it;
}

}  // namespace

const ComputeCeiling& MachineSpec::compute_ceiling(const std::string& label) const {
  for (const auto& c : compute_ceilings) {
    if (c.label == label) return c;
  }
  throw SchemaError("machine spec: no compute ceiling labeled '" + label + "'");
}

const MemoryCeiling& MachineSpec::memory_ceiling(const std::string& label) const {
  for (const auto& m : memory_ceilings) {
    if (m.label == label) return m;
  }
  throw SchemaError("machine spec: no memory ceiling labeled '" + label + "'");
}

void validate(const TensorCorePeakParams& p) {
  if (p.sm_count < 1) throw SchemaError("tensor core params: sm_count must be >= 1");
  if (p.tc_per_sm < 1) throw SchemaError("tensor core params: tc_per_sm must be >= 1");
  if (!(p.clock_hz > 0.0)) throw SchemaError("tensor core params: clock_hz must be > 0");
  if (p.ops_per_tc_per_cycle < 1)
    throw SchemaError("tensor core params: ops_per_tc_per_cycle must be >= 1");
  if (p.fma_factor < 1) throw SchemaError("tensor core params: fma_factor must be >= 1");
}

void validate(const MachineSpec& spec) {
  if (spec.compute_ceilings.empty()) fail("compute_ceilings", "must not be empty");
  if (spec.memory_ceilings.empty()) fail("memory_ceilings", "must not be empty");
  if (spec.launch_overhead_sec < 0.0) fail("launch_overhead_sec", "must be >= 0");
  std::set<std::string> seen;
  for (size_t i = 0; i < spec.compute_ceilings.size(); ++i) {
    const auto& c = spec.compute_ceilings[i];
    std::string path = "compute_ceilings[" + std::to_string(i) + "]";
    if (c.label.empty()) fail(path + ".label", "must not be empty");
    if (!(c.flops_per_sec > 0.0)) fail(path + ".flops_per_sec", "must be > 0");
    if (!seen.insert(c.label).second) fail(path + ".label", "duplicates '" + c.label + "'");
  }
  seen.clear();
  for (size_t i = 0; i < spec.memory_ceilings.size(); ++i) {
    const auto& m = spec.memory_ceilings[i];
    std::string path = "memory_ceilings[" + std::to_string(i) + "]";
    if (m.label.empty()) fail(path + ".label", "must not be empty");
    if (!(m.bytes_per_sec > 0.0)) fail(path + ".bytes_per_sec", "must be > 0");
    if (!seen.insert(m.label).second) fail(path + ".label", "duplicates '" + m.label + "'");
  }
}

double derive_tensor_core_peak(const TensorCorePeakParams& p) {
  validate(p);
  return static_cast<double>(p.sm_count) * static_cast<double>(p.tc_per_sm) * p.clock_hz *
         static_cast<double>(p.ops_per_tc_per_cycle) * static_cast<double>(p.fma_factor);
}

double machine_balance(const ComputeCeiling& c, const MemoryCeiling& m) {
  return c.flops_per_sec / m.bytes_per_sec;
}

MachineSpec parse_machine_spec(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("machine spec: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("machine spec: top level must be an object");

  MachineSpec spec;
  spec.name = require_string(require_key(j, "name", ""), "name");

  const auto& cj = require_key(j, "compute_ceilings", "");
  if (!cj.is_array()) fail("compute_ceilings", "must be an array");
  for (size_t i = 0; i < cj.size(); ++i) {
    std::string path = "compute_ceilings[" + std::to_string(i) + "]";
    if (!cj[i].is_object()) fail(path, "must be an object");
    ComputeCeiling c;
    c.label = require_string(require_key(cj[i], "label", path), path + ".label");
    c.flops_per_sec =
        require_number(require_key(cj[i], "flops_per_sec", path), path + ".flops_per_sec");
    spec.compute_ceilings.push_back(std::move(c));
  }

  const auto& mj = require_key(j, "memory_ceilings", "");
  if (!mj.is_array()) fail("memory_ceilings", "must be an array");
  for (size_t i = 0; i < mj.size(); ++i) {
    std::string path = "memory_ceilings[" + std::to_string(i) + "]";
    if (!mj[i].is_object()) fail(path, "must be an object");
    MemoryCeiling m;
    m.label = require_string(require_key(mj[i], "label", path), path + ".label");
    m.bytes_per_sec =
        require_number(require_key(mj[i], "bytes_per_sec", path), path + ".bytes_per_sec");
    spec.memory_ceilings.push_back(std::move(m));
  }

  if (auto it = j.find("launch_overhead_sec"); it != j.end()) {
    spec.launch_overhead_sec = require_number(*it, "launch_overhead_sec");
  } else {
    spec.launch_overhead_sec = 0.0;
    spec.overhead_defaulted = true;
  }

  validate(spec);
  return spec;
}

MachineSpec load_machine_spec(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_machine_spec(buf.str());
}

std::string serialize_machine_spec(const MachineSpec& spec) {
  ordered_json j;
  j["name"] = spec.name;
  j["compute_ceilings"] = ordered_json::array();
  for (const auto& c : spec.compute_ceilings) {
    j["compute_ceilings"].push_back({{"label", c.label}, {"flops_per_sec", c.flops_per_sec}});
  }
  j["memory_ceilings"] = ordered_json::array();
  for (const auto& m : spec.memory_ceilings) {
    j["memory_ceilings"].push_back({{"label", m.label}, {"bytes_per_sec", m.bytes_per_sec}});
  }
  j["launch_overhead_sec"] = spec.launch_overhead_sec;
  return j.dump(2) + "\n";
}

}  // namespace roofkit
