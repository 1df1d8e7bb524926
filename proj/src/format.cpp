#include "roofkit/format.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>

namespace roofkit {

namespace {

std::string printf_to_string(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

std::string num_g6(double v) { return printf_to_string("%.6g", v); }

std::string num_full(double v) {
  if (v == std::floor(v) && std::fabs(v) < 1e15) return printf_to_string("%.0f", v);
  // %.17g always round-trips; shorten when fewer digits already do.
  for (int prec = 1; prec < 17; ++prec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  return printf_to_string("%.17g", v);
}

std::string num_px(double v) { return printf_to_string("%.2f", v); }

std::string format_si(double v, const std::string& unit) {
  struct Prefix {
    double factor;
    const char* symbol;
  };
  static const Prefix prefixes[] = {
      {1e15, "P"}, {1e12, "T"}, {1e9, "G"},  {1e6, "M"},  {1e3, "K"},
      {1.0, ""},   {1e-3, "m"}, {1e-6, "u"}, {1e-9, "n"}, {1e-12, "p"},
  };
  if (v == 0.0 || !std::isfinite(v)) return num_g6(v) + " " + unit;
  double mag = std::fabs(v);
  for (const auto& p : prefixes) {
    if (mag >= p.factor) return num_g6(v / p.factor) + " " + p.symbol + unit;
  }
  return num_g6(v) + " " + unit;
}

void append_fmt(std::string& out, const char* fmt, ...) {
  char buf[1024];
  va_list args;
  va_start(args, fmt);
  int n = std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  if (n > 0) out.append(buf, static_cast<size_t>(std::min<int>(n, sizeof(buf) - 1)));
}

}  // namespace roofkit
