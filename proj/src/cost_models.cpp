#include "roofkit/cost_models.hpp"

#include <cmath>
#include <vector>

#include "roofkit/errors.hpp"

namespace roofkit {

namespace {

void check_elem_bytes(std::int64_t elem_bytes, const char* what) {
  if (elem_bytes != 2 && elem_bytes != 4 && elem_bytes != 8) {
    throw SchemaError(std::string(what) + ": elem_bytes must be 2, 4, or 8");
  }
}

void check_positive(std::int64_t v, const char* what, const char* field) {
  if (v < 1) {
    throw SchemaError(std::string(what) + ": " + field + " must be >= 1");
  }
}

}  // namespace

void validate(const Conv2DSpec& s) {
  check_positive(s.n, "conv2d spec", "n");
  check_positive(s.h, "conv2d spec", "h");
  check_positive(s.w, "conv2d spec", "w");
  check_positive(s.c_in, "conv2d spec", "c_in");
  check_positive(s.k_h, "conv2d spec", "k_h");
  check_positive(s.k_w, "conv2d spec", "k_w");
  check_positive(s.c_out, "conv2d spec", "c_out");
  check_positive(s.stride, "conv2d spec", "stride");
  if (s.padding < 0) throw SchemaError("conv2d spec: padding must be >= 0");
  check_elem_bytes(s.elem_bytes, "conv2d spec");
  if (s.h + 2 * s.padding < s.k_h || s.w + 2 * s.padding < s.k_w) {
    throw SchemaError("conv2d spec: padded input smaller than the kernel window");
  }
}

void validate(const LSTMSpec& s) {
  check_positive(s.batch, "lstm spec", "batch");
  check_positive(s.seq_len, "lstm spec", "seq_len");
  check_positive(s.input_features, "lstm spec", "input_features");
  check_positive(s.hidden, "lstm spec", "hidden");
  check_elem_bytes(s.elem_bytes, "lstm spec");
  if (s.activation_flops < 0) throw SchemaError("lstm spec: activation_flops must be >= 0");
}

OutputDims conv2d_output_dims(const Conv2DSpec& s) {
  validate(s);
  OutputDims d;
  d.h_out = (s.h + 2 * s.padding - s.k_h) / s.stride + 1;
  d.w_out = (s.w + 2 * s.padding - s.k_w) / s.stride + 1;
  return d;
}

ComplexityPoint conv2d_complexity(const Conv2DSpec& s) {
  auto [h_out, w_out] = conv2d_output_dims(s);
  double n = static_cast<double>(s.n);
  double window = static_cast<double>(s.c_in) * static_cast<double>(s.k_h) *
                  static_cast<double>(s.k_w);
  ComplexityPoint p;
  p.cc = 2.0 * n * static_cast<double>(h_out) * static_cast<double>(w_out) *
         static_cast<double>(s.c_out) * window;
  // Compulsory traffic per sample: input tile, weights, output tile. Weight
  // reads are charged per sample, which keeps arithmetic intensity
  // independent of batch size.
  double input_elems = static_cast<double>(s.h) * static_cast<double>(s.w) *
                       static_cast<double>(s.c_in);
  double weight_elems = window * static_cast<double>(s.c_out);
  double output_elems = static_cast<double>(h_out) * static_cast<double>(w_out) *
                        static_cast<double>(s.c_out);
  p.bc = n * (input_elems + weight_elems + output_elems) * static_cast<double>(s.elem_bytes);
  return p;
}

std::uint64_t conv2d_flops_oracle(const Conv2DSpec& s) {
  validate(s);
  double scale = static_cast<double>(s.n) * static_cast<double>(s.h) *
                 static_cast<double>(s.w) * static_cast<double>(s.c_in) *
                 static_cast<double>(s.c_out);
  if (scale > 1e7) {
    throw SchemaError("conv2d_flops_oracle: instance too large (n*h*w*c_in*c_out > 1e7)");
  }
  auto [h_out, w_out] = conv2d_output_dims(s);
  std::uint64_t flops = 0;
  for (std::int64_t img = 0; img < s.n; ++img) {
    for (std::int64_t oh = 0; oh < h_out; ++oh) {
      for (std::int64_t ow = 0; ow < w_out; ++ow) {
        for (std::int64_t co = 0; co < s.c_out; ++co) {
          // One MAC per (channel, kh, kw); positions falling in the padding
          // ring still multiply by the implicit zero.
          for (std::int64_t ci = 0; ci < s.c_in; ++ci) {
            for (std::int64_t kh = 0; kh < s.k_h; ++kh) {
              for (std::int64_t kw = 0; kw < s.k_w; ++kw) {
                flops += 2;
              }
            }
          }
        }
      }
    }
  }
  return flops;
}

ComplexityPoint lstm_complexity(const LSTMSpec& s) {
  validate(s);
  double h = static_cast<double>(s.hidden);
  double d = static_cast<double>(s.input_features);
  double batch = static_cast<double>(s.batch);
  double steps = static_cast<double>(s.seq_len);
  double eb = static_cast<double>(s.elem_bytes);

  // Four gate mat-vecs with bias add, then the elementwise cell update:
  // C_t (2 mul + 1 add per element), h_t (1 mul), and activations on
  // f/i/o (sigma) plus C-hat and tanh(C_t).
  double gates = 4.0 * (2.0 * h * (h + d) + h);
  double elementwise = 3.0 * h + h;
  double activations = static_cast<double>(s.activation_flops) * (3.0 * h + 2.0 * h);
  ComplexityPoint p;
  p.cc = steps * batch * (gates + elementwise + activations);

  double weight_elems = 4.0 * h * (h + d) + 4.0 * h;
  double state_elems = d + 4.0 * h;  // x_t in, h and C state in/out
  double weight_reads =
      (s.weight_traffic == WeightTraffic::StreamedPerStep) ? steps * weight_elems : weight_elems;
  p.bc = (weight_reads + steps * batch * state_elems) * eb;
  return p;
}

std::uint64_t lstm_flops_oracle(const LSTMSpec& s) {
  validate(s);
  double scale = static_cast<double>(s.batch) * static_cast<double>(s.seq_len) *
                 static_cast<double>(s.hidden) *
                 static_cast<double>(s.hidden + s.input_features);
  if (scale > 1e7) {
    throw SchemaError("lstm_flops_oracle: instance too large (B*T*h*(h+d) > 1e7)");
  }

  const size_t h = static_cast<size_t>(s.hidden);
  const size_t d = static_cast<size_t>(s.input_features);
  std::uint64_t flops = 0;

  auto mul = [&flops](double a, double b) {
    flops += 1;
    return a * b;
  };
  auto add = [&flops](double a, double b) {
    flops += 1;
    return a + b;
  };
  auto sigma = [&flops, &s](double x) {
    flops += static_cast<std::uint64_t>(s.activation_flops);
    return 1.0 / (1.0 + std::exp(-x));
  };
  auto tanh_act = [&flops, &s](double x) {
    flops += static_cast<std::uint64_t>(s.activation_flops);
    return std::tanh(x);
  };
  // Gate mat-vec on the concatenated [h_{t-1}, x_t] vector; the accumulator
  // starts at zero so every product pairs with an add (MAC = 2 FLOPs).
  auto gate_preact = [&](const std::vector<double>& weights_row, const std::vector<double>& z,
                         double bias) {
    double acc = 0.0;
    for (size_t m = 0; m < z.size(); ++m) acc = add(acc, mul(weights_row[m], z[m]));
    return add(acc, bias);
  };

  std::vector<double> weights_row(h + d, 0.01);
  const double bias = 0.02;

  for (std::int64_t sample = 0; sample < s.batch; ++sample) {
    std::vector<double> hidden_state(h, 0.0);
    std::vector<double> cell_state(h, 0.0);
    for (std::int64_t t = 0; t < s.seq_len; ++t) {
      std::vector<double> z(h + d);
      for (size_t r = 0; r < h; ++r) z[r] = hidden_state[r];
      for (size_t r = 0; r < d; ++r) z[h + r] = 0.05;

      for (size_t r = 0; r < h; ++r) {
        double f = sigma(gate_preact(weights_row, z, bias));
        double i = sigma(gate_preact(weights_row, z, bias));
        double c_hat = tanh_act(gate_preact(weights_row, z, bias));
        double o = sigma(gate_preact(weights_row, z, bias));
        cell_state[r] = add(mul(f, cell_state[r]), mul(i, c_hat));
        hidden_state[r] = mul(o, tanh_act(cell_state[r]));
      }
    }
  }
  return flops;
}

std::int64_t lstm_sequential_depth(const LSTMSpec& s) {
  validate(s);
  return 3 * s.seq_len;
}

std::int64_t invocation_estimate(const Conv2DSpec& s, std::int64_t kernels_per_step) {
  validate(s);
  if (kernels_per_step < 1) {
    throw SchemaError("invocation_estimate: kernels_per_step must be >= 1");
  }
  return kernels_per_step;
}

std::int64_t invocation_estimate(const LSTMSpec& s, std::int64_t kernels_per_step,
                                 std::int64_t epilogue_invocations) {
  validate(s);
  if (kernels_per_step < 1) {
    throw SchemaError("invocation_estimate: kernels_per_step must be >= 1");
  }
  if (epilogue_invocations < 0) {
    throw SchemaError("invocation_estimate: epilogue_invocations must be >= 0");
  }
  return kernels_per_step * s.seq_len + epilogue_invocations;
}

WeightTraffic weight_traffic_from_string(const std::string& s) {
  if (s == "streamed" || s == "StreamedPerStep") return WeightTraffic::StreamedPerStep;
  if (s == "resident" || s == "ResidentOnce") return WeightTraffic::ResidentOnce;
  throw SchemaError("unknown weight_traffic '" + s + "' (use streamed|resident)");
}

std::string to_string(WeightTraffic t) {
  return t == WeightTraffic::StreamedPerStep ? "streamed" : "resident";
}

}  // namespace roofkit
