#include "roofkit/profile_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <sstream>

#include "json.hpp"
#include "roofkit/errors.hpp"
#include "roofkit/format.hpp"

namespace roofkit {

namespace {

constexpr const char* kColumns[] = {
    "kernel_name", "invocations",  "time_ns",      "flops_fp64", "flops_fp32",
    "flops_fp16",  "flops_tensor", "bytes_read",   "bytes_written"};
constexpr size_t kNumColumns = sizeof(kColumns) / sizeof(kColumns[0]);

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(field);
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  out.push_back(field);
  return out;
}

double parse_number(const std::string& cell, const std::string& column, size_t row) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw SchemaError("profile csv: row " + std::to_string(row) + ", column '" + column +
                      "': non-numeric value '" + cell + "'");
  }
  if (v < 0.0) {
    throw SchemaError("profile csv: row " + std::to_string(row) + ", column '" + column +
                      "': negative value '" + cell + "'");
  }
  return v;
}

std::uint64_t parse_count(const std::string& cell, const std::string& column, size_t row) {
  double v = parse_number(cell, column, row);
  if (v != std::floor(v) || v > 1.8e19) {
    throw SchemaError("profile csv: row " + std::to_string(row) + ", column '" + column +
                      "': expected an integer count, got '" + cell + "'");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

WorkloadProfile parse_profile_csv(std::istream& in, const std::string& label) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile_csv(buf.str(), label);
}

WorkloadProfile parse_profile_csv(const std::string& csv_text, const std::string& label) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("profile csv: empty file");

  auto header = split_csv_line(line);
  for (size_t i = 0; i < kNumColumns; ++i) {
    if (i >= header.size() || header[i] != kColumns[i]) {
      throw SchemaError(std::string("profile csv: missing or misnamed column '") + kColumns[i] +
                        "' at position " + std::to_string(i + 1));
    }
  }
  if (header.size() != kNumColumns) {
    throw SchemaError("profile csv: unexpected extra column '" + header[kNumColumns] + "'");
  }

  WorkloadProfile profile;
  profile.label = label;
  size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() != kNumColumns) {
      throw SchemaError("profile csv: row " + std::to_string(row) + " has " +
                        std::to_string(cells.size()) + " fields, expected " +
                        std::to_string(kNumColumns));
    }
    KernelRecord r;
    r.kernel_name = cells[0];
    r.invocations = parse_count(cells[1], "invocations", row);
    if (r.invocations < 1) {
      throw SchemaError("profile csv: row " + std::to_string(row) +
                        ", column 'invocations': must be >= 1");
    }
    r.total_time_sec = parse_number(cells[2], "time_ns", row) * 1e-9;
    r.flops_fp64 = parse_count(cells[3], "flops_fp64", row);
    r.flops_fp32 = parse_count(cells[4], "flops_fp32", row);
    r.flops_fp16 = parse_count(cells[5], "flops_fp16", row);
    r.flops_tensor = parse_count(cells[6], "flops_tensor", row);
    r.bytes_read = parse_count(cells[7], "bytes_read", row);
    r.bytes_written = parse_count(cells[8], "bytes_written", row);
    profile.kernels.push_back(std::move(r));
  }
  return profile;
}

std::string serialize_profile_csv(const WorkloadProfile& p) {
  std::string out;
  for (size_t i = 0; i < kNumColumns; ++i) {
    if (i) out += ',';
    out += kColumns[i];
  }
  out += '\n';
  for (const auto& r : p.kernels) {
    out += r.kernel_name;
    out += ',' + std::to_string(r.invocations);
    out += ',' + num_full(r.total_time_sec * 1e9);
    out += ',' + std::to_string(r.flops_fp64);
    out += ',' + std::to_string(r.flops_fp32);
    out += ',' + std::to_string(r.flops_fp16);
    out += ',' + std::to_string(r.flops_tensor);
    out += ',' + std::to_string(r.bytes_read);
    out += ',' + std::to_string(r.bytes_written);
    out += '\n';
  }
  return out;
}

std::string serialize_profile_json(const WorkloadProfile& p) {
  nlohmann::ordered_json j;
  j["label"] = p.label;
  j["kernels"] = nlohmann::ordered_json::array();
  for (const auto& r : p.kernels) {
    j["kernels"].push_back({{"kernel_name", r.kernel_name},
                            {"invocations", r.invocations},
                            {"total_time_sec", r.total_time_sec},
                            {"flops_fp64", r.flops_fp64},
                            {"flops_fp32", r.flops_fp32},
                            {"flops_fp16", r.flops_fp16},
                            {"flops_tensor", r.flops_tensor},
                            {"bytes_read", r.bytes_read},
                            {"bytes_written", r.bytes_written}});
  }
  return j.dump(2) + "\n";
}

WorkloadProfile parse_profile_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("profile json: invalid JSON: ") + e.what());
  }
  WorkloadProfile p;
  try {
    p.label = j.at("label").get<std::string>();
    for (const auto& kj : j.at("kernels")) {
      KernelRecord r;
      r.kernel_name = kj.at("kernel_name").get<std::string>();
      r.invocations = kj.at("invocations").get<std::uint64_t>();
      r.total_time_sec = kj.at("total_time_sec").get<double>();
      r.flops_fp64 = kj.at("flops_fp64").get<std::uint64_t>();
      r.flops_fp32 = kj.at("flops_fp32").get<std::uint64_t>();
      r.flops_fp16 = kj.at("flops_fp16").get<std::uint64_t>();
      r.flops_tensor = kj.at("flops_tensor").get<std::uint64_t>();
      r.bytes_read = kj.at("bytes_read").get<std::uint64_t>();
      r.bytes_written = kj.at("bytes_written").get<std::uint64_t>();
      if (r.invocations < 1) throw SchemaError("profile json: invocations must be >= 1");
      p.kernels.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("profile json: ") + e.what());
  }
  return p;
}

KernelAggregate aggregate(const WorkloadProfile& p, const FlopWeighting& w) {
  // Integer fields accumulate exactly in 64 bits; time is summed over
  // value-sorted addends so any permutation of the kernel list yields
  // bit-identical totals.
  std::uint64_t fp64 = 0, fp32 = 0, fp16 = 0, tensor = 0;
  std::uint64_t bytes = 0, zero_ai = 0, invocations = 0;
  std::vector<double> times;
  times.reserve(p.kernels.size());
  for (const auto& r : p.kernels) {
    fp64 += r.flops_fp64;
    fp32 += r.flops_fp32;
    fp16 += r.flops_fp16;
    tensor += r.flops_tensor;
    bytes += r.total_bytes();
    invocations += r.invocations;
    if (r.total_flops() == 0) zero_ai += r.total_bytes();
    times.push_back(r.total_time_sec);
  }
  std::sort(times.begin(), times.end());

  KernelAggregate agg;
  agg.computational_complexity =
      w.fp64 * static_cast<double>(fp64) + w.fp32 * static_cast<double>(fp32) +
      w.fp16 * static_cast<double>(fp16) + w.tensor * static_cast<double>(tensor);
  agg.bandwidth_complexity = static_cast<double>(bytes);
  for (double t : times) agg.total_time_sec += t;
  agg.total_invocations = invocations;
  agg.zero_ai_bytes = static_cast<double>(zero_ai);
  return agg;
}

double zero_ai_share(const KernelAggregate& agg) {
  if (agg.bandwidth_complexity == 0.0) return 0.0;
  return agg.zero_ai_bytes / agg.bandwidth_complexity;
}

}  // namespace roofkit
