#include <cmath>
#include <random>

#include "doctest.h"
#include "roofkit/errors.hpp"
#include "roofkit/machine_model.hpp"
#include "test_util.hpp"

using namespace roofkit;

TEST_CASE("tensor core peak from hardware factors") {
  // 80 SMs x 8 units x 1.312 GHz x 4^3 ops x 2 (FMA)
  CHECK(derive_tensor_core_peak({80, 8, 1.312e9, 64, 2}) ==
        doctest::Approx(1.07479e14).epsilon(1e-3));
  CHECK(derive_tensor_core_peak({1, 1, 1.0, 1, 1}) == 1.0);
  CHECK(derive_tensor_core_peak({2, 4, 1.0e9, 64, 2}) == doctest::Approx(1.024e12).epsilon(1e-12));
}

TEST_CASE("tensor core peak is multiplicative in every factor") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::int64_t> small(1, 128);
  for (int trial = 0; trial < 200; ++trial) {
    TensorCorePeakParams p{small(rng), small(rng), testutil::log_uniform(rng, 6, 10),
                           small(rng), small(rng)};
    double base = derive_tensor_core_peak(p);
    TensorCorePeakParams variants[] = {p, p, p, p, p};
    variants[0].sm_count *= 2;
    variants[1].tc_per_sm *= 2;
    variants[2].clock_hz *= 2;
    variants[3].ops_per_tc_per_cycle *= 2;
    variants[4].fma_factor *= 2;
    for (const auto& v : variants) {
      double doubled = derive_tensor_core_peak(v);
      CHECK(std::fabs(doubled - 2.0 * base) <= 2.3e-16 * std::fabs(doubled));
    }
  }
}

TEST_CASE("tensor core params are validated") {
  CHECK_THROWS_AS(derive_tensor_core_peak({0, 8, 1.0e9, 64, 2}), SchemaError);
  CHECK_THROWS_AS(derive_tensor_core_peak({80, 8, 0.0, 64, 2}), SchemaError);
}

TEST_CASE("machine balance") {
  CHECK(std::fabs(machine_balance({"tc", 1.07479e14}, {"hbm", 8.288e11}) - 129.68) <= 0.01);
  CHECK(machine_balance({"x", 7.5e12}, {"x", 7.5e12}) == 1.0);
  CHECK(std::fabs(machine_balance({"fp32", 1.516e13}, {"hbm", 8.288e11}) - 18.29) <= 0.01);
}

TEST_CASE("machine balance inverts exactly") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    ComputeCeiling c{"c", testutil::log_uniform(rng, 9, 15)};
    MemoryCeiling m{"m", testutil::log_uniform(rng, 8, 13)};
    double recovered = machine_balance(c, m) * m.bytes_per_sec;
    CHECK(std::fabs(recovered - c.flops_per_sec) <= 1e-12 * c.flops_per_sec);
  }
}

TEST_CASE("v100 machine spec loads with ceilings in file order") {
  MachineSpec spec = testutil::v100();
  CHECK(spec.name == "V100");
  REQUIRE(spec.compute_ceilings.size() == 3);
  CHECK(spec.compute_ceilings[0].label == "TensorCore");
  CHECK(spec.compute_ceilings[1].label == "FP16");
  CHECK(spec.compute_ceilings[2].label == "FP32");
  REQUIRE(spec.memory_ceilings.size() == 1);
  CHECK(spec.memory_ceilings[0].bytes_per_sec == 8.288e11);
  CHECK(spec.launch_overhead_sec == 4.2e-6);
  CHECK_FALSE(spec.overhead_defaulted);
}

TEST_CASE("machine spec schema errors carry the key path") {
  std::string zero_bw = R"({"name":"m","compute_ceilings":[{"label":"c","flops_per_sec":1.0}],
    "memory_ceilings":[{"label":"m","bytes_per_sec":0}],"launch_overhead_sec":0})";
  CHECK_THROWS_WITH_AS(parse_machine_spec(zero_bw),
                       doctest::Contains("memory_ceilings[0].bytes_per_sec"), SchemaError);

  std::string missing = R"({"compute_ceilings":[],"memory_ceilings":[]})";
  CHECK_THROWS_WITH_AS(parse_machine_spec(missing), doctest::Contains("name"), SchemaError);

  std::string dup = R"({"name":"m","compute_ceilings":[{"label":"c","flops_per_sec":1.0},
    {"label":"c","flops_per_sec":2.0}],
    "memory_ceilings":[{"label":"m","bytes_per_sec":1.0}],"launch_overhead_sec":0})";
  CHECK_THROWS_WITH_AS(parse_machine_spec(dup), doctest::Contains("compute_ceilings[1].label"),
                       SchemaError);

  CHECK_THROWS_AS(parse_machine_spec("{not json"), SchemaError);
}

TEST_CASE("omitted launch overhead defaults to zero with a warning flag") {
  std::string text = R"({"name":"m","compute_ceilings":[{"label":"c","flops_per_sec":1.0}],
    "memory_ceilings":[{"label":"m","bytes_per_sec":1.0}]})";
  MachineSpec spec = parse_machine_spec(text);
  CHECK(spec.launch_overhead_sec == 0.0);
  CHECK(spec.overhead_defaulted);
}

TEST_CASE("serialize then parse is the identity on valid specs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    MachineSpec spec;
    spec.name = "machine-" + std::to_string(trial);
    int n_compute = 1 + static_cast<int>(rng() % 4);
    int n_memory = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n_compute; ++i) {
      spec.compute_ceilings.push_back(
          {"c" + std::to_string(i), testutil::log_uniform(rng, 9, 15)});
    }
    for (int i = 0; i < n_memory; ++i) {
      spec.memory_ceilings.push_back(
          {"m" + std::to_string(i), testutil::log_uniform(rng, 8, 13)});
    }
    spec.launch_overhead_sec = testutil::log_uniform(rng, -7, -5);

    MachineSpec back = parse_machine_spec(serialize_machine_spec(spec));
    CHECK(back.name == spec.name);
    REQUIRE(back.compute_ceilings.size() == spec.compute_ceilings.size());
    for (size_t i = 0; i < spec.compute_ceilings.size(); ++i) {
      CHECK(back.compute_ceilings[i].label == spec.compute_ceilings[i].label);
      CHECK(back.compute_ceilings[i].flops_per_sec == spec.compute_ceilings[i].flops_per_sec);
    }
    REQUIRE(back.memory_ceilings.size() == spec.memory_ceilings.size());
    for (size_t i = 0; i < spec.memory_ceilings.size(); ++i) {
      CHECK(back.memory_ceilings[i].label == spec.memory_ceilings[i].label);
      CHECK(back.memory_ceilings[i].bytes_per_sec == spec.memory_ceilings[i].bytes_per_sec);
    }
    CHECK(back.launch_overhead_sec == spec.launch_overhead_sec);
  }
}

TEST_CASE("ceiling lookup by label") {
  MachineSpec spec = testutil::v100();
  CHECK(spec.compute_ceiling("FP32").flops_per_sec == 1.516e13);
  CHECK_THROWS_AS(spec.compute_ceiling("FP8"), SchemaError);
  CHECK_THROWS_AS(spec.memory_ceiling("L2"), SchemaError);
}
