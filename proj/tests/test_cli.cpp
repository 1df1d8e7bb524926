#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  fs::path dir = fs::temp_directory_path() / "roofkit_cli_test";
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args) {
  fs::path dir = work_dir();
  fs::path out = dir / "stdout.txt";
  fs::path err = dir / "stderr.txt";
  std::string cmd = std::string(ROOFKIT_CLI_PATH) + " " + args + " > " + out.string() + " 2> " +
                    err.string();
  int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = testutil::read_file(out.string());
  r.err = testutil::read_file(err.string());
  return r;
}

std::string q(const std::string& s) { return "'" + s + "'"; }

}  // namespace

TEST_CASE("derive-tc prints the tensor core peak") {
  CliResult r = run_cli("machine derive-tc --sms 80 --tc-per-sm 8 --clock-ghz 1.312");
  CHECK(r.exit_code == 0);
  double value = std::strtod(r.out.c_str(), nullptr);
  CHECK(std::fabs(value - 1.07479e14) / 1.07479e14 <= 1e-3);
}

TEST_CASE("usage errors exit 1") {
  CliResult r = run_cli("machine derive-tc --sms 80");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("error") != std::string::npos);

  r = run_cli("frobnicate");
  CHECK(r.exit_code == 1);
}

TEST_CASE("schema errors exit 2 and name the problem") {
  fs::path dir = work_dir();
  fs::path bad_csv = dir / "bad.csv";
  std::ofstream(bad_csv) << "kernel_name,invocations,time_ns,flops_fp64,flops_fp32,flops_fp16,"
                            "flops_tensor,bytes_rd,bytes_written\nk,1,1,0,0,0,0,0,0\n";
  CliResult r = run_cli("ingest --profile " + q(bad_csv.string()) + " --out " +
                        q((dir / "out.json").string()));
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("bytes_read") != std::string::npos);

  r = run_cli("analyze --profile /nonexistent.csv --machine /nonexistent.json "
              "--ceiling TensorCore --report " +
              q((dir / "r.json").string()));
  CHECK(r.exit_code == 2);
}

TEST_CASE("ingest canonicalizes a profile") {
  fs::path dir = work_dir();
  fs::path out = dir / "profile.json";
  CliResult r = run_cli("ingest --profile " +
                        q(testutil::fixture_path("lstm_pytorch_fwd_batch16.csv")) + " --out " +
                        q(out.string()));
  CHECK(r.exit_code == 0);
  std::string json = testutil::read_file(out.string());
  CHECK(json.find("\"label\": \"lstm_pytorch_fwd_batch16\"") != std::string::npos);
  CHECK(json.find("gemmSN_TN_kernel") != std::string::npos);
}

TEST_CASE("analyze classifies the lstm fixture as overhead bound") {
  fs::path dir = work_dir();
  fs::path report = dir / "lstm_report.json";
  CliResult r = run_cli("analyze --profile " +
                        q(testutil::fixture_path("lstm_pytorch_fwd_batch16.csv")) +
                        " --machine " + q(testutil::fixture_path("v100.json")) +
                        " --ceiling TensorCore --report " + q(report.string()));
  CHECK(r.exit_code == 0);
  std::string json = testutil::read_file(report.string());
  CHECK(json.find("\"class\": \"OverheadBound\"") != std::string::npos);
  CHECK(json.find("\"binding\": \"launch overhead\"") != std::string::npos);
}

TEST_CASE("identical invocations produce identical bytes") {
  fs::path dir = work_dir();
  fs::path report1 = dir / "r1.json";
  fs::path report2 = dir / "r2.json";
  fs::path svg1 = dir / "c1.svg";
  fs::path svg2 = dir / "c2.svg";
  std::string base = "analyze --profile " + q(testutil::fixture_path("conv2d_fp16_fwd.csv")) +
                     " --machine " + q(testutil::fixture_path("v100.json")) +
                     " --ceiling TensorCore --chart 4d";
  CHECK(run_cli(base + " --report " + q(report1.string()) + " --svg " + q(svg1.string()))
            .exit_code == 0);
  CHECK(run_cli(base + " --report " + q(report2.string()) + " --svg " + q(svg2.string()))
            .exit_code == 0);
  CHECK(testutil::read_file(report1.string()) == testutil::read_file(report2.string()));
  CHECK(testutil::read_file(svg1.string()) == testutil::read_file(svg2.string()));

  fs::path svg3 = dir / "c3.svg";
  fs::path svg4 = dir / "c4.svg";
  std::string plot = "plot --config " + q(testutil::fixture_path("lstm_batch_sweep.json")) +
                     " --machine " + q(testutil::fixture_path("v100.json")) +
                     " --ceiling TensorCore --chart 4d";
  CHECK(run_cli(plot + " --svg " + q(svg3.string())).exit_code == 0);
  CHECK(run_cli(plot + " --svg " + q(svg4.string())).exit_code == 0);
  CHECK(testutil::read_file(svg3.string()) == testutil::read_file(svg4.string()));
}

TEST_CASE("model subcommands print the complexity point and bound runtime") {
  CliResult r = run_cli(
      "model conv2d --batch 16 --height 112 --width 112 --channels 64 --kernel-h 3 "
      "--kernel-w 3 --filters 64 --stride 2 --elem-bytes 2 --machine " +
      q(testutil::fixture_path("v100.json")) + " --ceiling TensorCore");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("cc_flops 3568435200") != std::string::npos);
  CHECK(r.out.find("bound_runtime_sec") != std::string::npos);

  r = run_cli(
      "model lstm --batch 16 --seq-len 16 --features 32 --hidden 16 --elem-bytes 2 "
      "--kernels-per-step 2 --epilogue-invocations 4 --machine " +
      q(testutil::fixture_path("v100.json")) + " --ceiling TensorCore");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("cc_flops 1626112") != std::string::npos);
  CHECK(r.out.find("invocations 36") != std::string::npos);
  CHECK(r.out.find("class OverheadBound") != std::string::npos);
}

TEST_CASE("sweep writes a report and chart") {
  fs::path dir = work_dir();
  fs::path report = dir / "sweep_report.json";
  fs::path svg = dir / "sweep.svg";
  CliResult r = run_cli("sweep --config " + q(testutil::fixture_path("lstm_seq_sweep.json")) +
                        " --machine " + q(testutil::fixture_path("v100.json")) +
                        " --ceiling TensorCore --report " + q(report.string()) + " --svg " +
                        q(svg.string()) + " --chart time");
  CHECK(r.exit_code == 0);
  std::string json = testutil::read_file(report.string());
  CHECK(json.find("\"predicted\": true") != std::string::npos);
  std::string chart = testutil::read_file(svg.string());
  CHECK(chart.find("Bandwidth Time (s)") != std::string::npos);
}
