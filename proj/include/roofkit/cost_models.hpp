#pragma once

#include <cstdint>
#include <string>

#include "roofkit/roofline_core.hpp"

namespace roofkit {

// Analytical complexity for Conv2D and LSTM layers. Every multiply-accumulate
// counts as 2 FLOPs; bias adds and activations after a Conv2D are excluded.

struct Conv2DSpec {
  std::int64_t n = 1;      // batch
  std::int64_t h = 1;      // input height
  std::int64_t w = 1;      // input width
  std::int64_t c_in = 1;   // input channels
  std::int64_t k_h = 1;    // kernel height
  std::int64_t k_w = 1;    // kernel width
  std::int64_t c_out = 1;  // filters
  std::int64_t stride = 1;
  std::int64_t padding = 0;
  std::int64_t elem_bytes = 4;  // one of 2, 4, 8
};

enum class WeightTraffic {
  StreamedPerStep,  // weights re-read every timestep
  ResidentOnce,     // weights read once for the whole sequence
};

struct LSTMSpec {
  std::int64_t batch = 1;
  std::int64_t seq_len = 1;
  std::int64_t input_features = 1;
  std::int64_t hidden = 1;
  std::int64_t elem_bytes = 4;  // one of 2, 4, 8
  WeightTraffic weight_traffic = WeightTraffic::StreamedPerStep;
  std::int64_t activation_flops = 1;  // FLOPs charged per sigma/tanh element
};

void validate(const Conv2DSpec& s);
void validate(const LSTMSpec& s);

struct OutputDims {
  std::int64_t h_out = 0;
  std::int64_t w_out = 0;
};

// floor((dim + 2*padding - kernel)/stride) + 1 per axis; reduces to
// H' = H - K_H + 1 at stride 1, padding 0.
OutputDims conv2d_output_dims(const Conv2DSpec& s);

ComplexityPoint conv2d_complexity(const Conv2DSpec& s);

// Literal loop-nest MAC count, 2 FLOPs per accumulated product. Test oracle;
// refuses instances with n*h*w*c_in*c_out > 1e7.
std::uint64_t conv2d_flops_oracle(const Conv2DSpec& s);

ComplexityPoint lstm_complexity(const LSTMSpec& s);

// Instrumented literal evaluation of the six cell equations, counting every
// scalar multiply, add, and activation. Test oracle; refuses instances with
// batch*seq_len*hidden*(hidden+input_features) > 1e7.
std::uint64_t lstm_flops_oracle(const LSTMSpec& s);

// Dependency-chain lower bound on serialized stages: 3 per timestep
// (gates -> cell state -> hidden state).
std::int64_t lstm_sequential_depth(const LSTMSpec& s);

// Launch-count models calibrated against observed framework behavior: a
// Conv2D layer maps to a fixed number of kernels, an LSTM launches
// kernels_per_step per timestep plus a fixed epilogue.
std::int64_t invocation_estimate(const Conv2DSpec& s, std::int64_t kernels_per_step);
std::int64_t invocation_estimate(const LSTMSpec& s, std::int64_t kernels_per_step,
                                 std::int64_t epilogue_invocations);

WeightTraffic weight_traffic_from_string(const std::string& s);
std::string to_string(WeightTraffic t);

}  // namespace roofkit
