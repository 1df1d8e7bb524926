#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "roofkit/errors.hpp"
#include "roofkit/sweep.hpp"
#include "test_util.hpp"

using namespace roofkit;

namespace {

Conv2DSpec conv_template() {
  Conv2DSpec s;
  s.n = 16;
  s.h = 112;
  s.w = 112;
  s.c_in = 64;
  s.k_h = 3;
  s.k_w = 3;
  s.c_out = 64;
  s.stride = 2;
  s.elem_bytes = 2;
  return s;
}

LSTMSpec lstm_template() {
  LSTMSpec s;
  s.batch = 16;
  s.seq_len = 16;
  s.input_features = 32;
  s.hidden = 16;
  s.elem_bytes = 2;
  return s;
}

}  // namespace

TEST_CASE("conv2d batch sweep preserves arithmetic intensity") {
  MachineSpec m = testutil::v100();
  CeilingSelection sel = select_ceilings(m, "TensorCore");
  SweepSeries series = run_analytical_sweep(conv_template(), "batch", {16, 32, 64}, m, sel,
                                            {1, 0}, "conv2d fwd");
  REQUIRE(series.points.size() == 3);
  CHECK(series.predicted);
  CHECK(series.machine_name == "V100");
  double ai = series.points[0].analyzed.ai;
  for (const auto& p : series.points) CHECK(p.analyzed.ai == ai);
}

TEST_CASE("lstm sequence sweep: predicted runtime proportional to T when overhead-bound") {
  MachineSpec m = testutil::v100();
  CeilingSelection sel = select_ceilings(m, "TensorCore");
  SweepSeries series = run_analytical_sweep(lstm_template(), "seq_len", {16, 32, 64, 128}, m,
                                            sel, {2, 0}, "lstm fwd");
  REQUIRE(series.points.size() == 4);
  double per_t = series.points[0].analyzed.measured_time_sec / 16.0;
  for (const auto& p : series.points) {
    CHECK(p.analyzed.classification == BoundClass::OverheadBound);
    CHECK(p.analyzed.measured_time_sec ==
          doctest::Approx(per_t * p.parameter_value).epsilon(1e-12));
  }
}

TEST_CASE("single-value sweep yields a single point") {
  MachineSpec m = testutil::v100();
  SweepSeries series = run_analytical_sweep(conv_template(), "stride", {2}, m,
                                            select_ceilings(m), {1, 0});
  CHECK(series.points.size() == 1);
  CHECK(series.series_label == "conv2d stride");
}

TEST_CASE("sweep errors") {
  MachineSpec m = testutil::v100();
  CeilingSelection sel = select_ceilings(m);
  CHECK_THROWS_WITH_AS(
      run_analytical_sweep(conv_template(), "depth", {1, 2}, m, sel, {1, 0}),
      doctest::Contains("unknown conv2d parameter"), SchemaError);
  CHECK_THROWS_WITH_AS(run_analytical_sweep(conv_template(), "stride", {0, 1}, m, sel, {1, 0}),
                       doctest::Contains("stride"), SchemaError);
  CHECK_THROWS_WITH_AS(
      run_analytical_sweep(conv_template(), "batch", {16, 16}, m, sel, {1, 0}),
      doctest::Contains("duplicate"), SchemaError);
  CHECK_THROWS_AS(run_analytical_sweep(conv_template(), "batch", {}, m, sel, {1, 0}),
                  SchemaError);
  CHECK_THROWS_WITH_AS(
      run_analytical_sweep(conv_template(), "batch", {2.5}, m, sel, {1, 0}),
      doctest::Contains("integer"), SchemaError);
}

TEST_CASE("sweep output is independent of value ordering") {
  MachineSpec m = testutil::v100();
  CeilingSelection sel = select_ceilings(m, "TensorCore");
  SweepSeries a = run_analytical_sweep(lstm_template(), "batch", {16, 32, 64, 128}, m, sel,
                                       {2, 4});
  SweepSeries b = run_analytical_sweep(lstm_template(), "batch", {128, 16, 64, 32}, m, sel,
                                       {2, 4});
  REQUIRE(a.points.size() == b.points.size());
  for (size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].parameter_value == b.points[i].parameter_value);
    CHECK(a.points[i].analyzed.measured_time_sec == b.points[i].analyzed.measured_time_sec);
    CHECK(a.points[i].analyzed.ai == b.points[i].analyzed.ai);
  }
}

TEST_CASE("measured series ordered by the label-encoded parameter") {
  MachineSpec m = testutil::v100();
  CeilingSelection sel = select_ceilings(m, "TensorCore");
  std::vector<WorkloadProfile> profiles;
  // Deliberately out of order.
  for (int batch : {64, 16, 32}) {
    std::string name = "lstm_pt_fwd_batch" + std::to_string(batch) + ".csv";
    profiles.push_back(parse_profile_csv(testutil::read_file(testutil::fixture_path(name)),
                                         "pytorch fwd batch=" + std::to_string(batch)));
  }
  SweepSeries series = build_measured_series(profiles, "batch", m, sel, "pytorch fwd");
  REQUIRE(series.points.size() == 3);
  CHECK_FALSE(series.predicted);
  CHECK(series.points[0].parameter_value == 16.0);
  CHECK(series.points[1].parameter_value == 32.0);
  CHECK(series.points[2].parameter_value == 64.0);
  for (const auto& p : series.points) {
    CHECK(p.analyzed.classification == BoundClass::OverheadBound);
  }
}

TEST_CASE("measured series label errors") {
  MachineSpec m = testutil::v100();
  CeilingSelection sel = select_ceilings(m);
  WorkloadProfile p;
  p.label = "no parameter here";
  p.kernels.push_back({"k", 1, 1e-3, 0, 100, 0, 0, 10, 10});
  CHECK_THROWS_WITH_AS(build_measured_series({p}, "batch", m, sel),
                       doctest::Contains("batch="), SchemaError);

  WorkloadProfile a = p, b = p;
  a.label = "run batch=16";
  b.label = "run batch=16 again";
  CHECK_THROWS_WITH_AS(build_measured_series({a, b}, "batch", m, sel),
                       doctest::Contains("duplicate"), SchemaError);
}

TEST_CASE("sweep config parses single objects and arrays") {
  std::string one = testutil::read_file(testutil::fixture_path("lstm_seq_sweep.json"));
  auto configs = parse_sweep_config(one);
  REQUIRE(configs.size() == 1);
  CHECK(configs[0].parameter == "seq_len");
  CHECK(configs[0].invocations.kernels_per_step == 2);
  CHECK(configs[0].invocations.epilogue_invocations == 0);
  CHECK(std::holds_alternative<LSTMSpec>(configs[0].layer_template));

  std::string many = testutil::read_file(testutil::fixture_path("lstm_batch_sweep.json"));
  auto batch = parse_sweep_config(many);
  REQUIRE(batch.size() == 3);
  CHECK(batch[0].label == "pytorch fp16 fwd");
  CHECK(batch[1].invocations.kernels_per_step == 15);

  CHECK_THROWS_WITH_AS(parse_sweep_config(R"({"layer":"conv2d"})"),
                       doctest::Contains("template"), SchemaError);
  CHECK_THROWS_WITH_AS(parse_sweep_config(R"({"layer":"dense","template":{},
    "parameter":"n","values":[1]})"),
                       doctest::Contains("unknown layer"), SchemaError);
  CHECK_THROWS_AS(parse_sweep_config("[]"), SchemaError);
}

TEST_CASE("lstm batch sweep fixture reproduces the framework invocation counts") {
  MachineSpec m = testutil::v100();
  CeilingSelection sel = select_ceilings(m, "TensorCore");
  auto configs =
      parse_sweep_config(testutil::read_file(testutil::fixture_path("lstm_batch_sweep.json")));
  REQUIRE(configs.size() == 3);
  std::vector<std::uint64_t> expected = {36, 243, 277};
  for (size_t i = 0; i < configs.size(); ++i) {
    SweepSeries series = run_sweep_config(configs[i], m, sel);
    for (const auto& p : series.points) {
      CHECK(p.analyzed.invocations == expected[i]);
      CHECK(p.analyzed.classification == BoundClass::OverheadBound);
    }
    // Overhead-dominated: runtime does not move with batch size.
    double t0 = series.points.front().analyzed.measured_time_sec;
    for (const auto& p : series.points) CHECK(p.analyzed.measured_time_sec == t0);
  }
}
