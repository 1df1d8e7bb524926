#pragma once

#include <string>

namespace roofkit {

// Deterministic number formatting. All human-facing output goes through these
// helpers so that identical inputs always produce identical bytes.

// 6 significant digits, "%.6g".
std::string num_g6(double v);

// Shortest representation that round-trips the double exactly.
std::string num_full(double v);

// Fixed two decimals, used for pixel coordinates.
std::string num_px(double v);

// Scale a base-unit quantity with an SI prefix for display, e.g.
// format_si(1.07479e14, "FLOP/s") -> "107.479 TFLOP/s",
// format_si(4.2e-6, "s") -> "4.2 us". Internal math never uses prefixes.
std::string format_si(double v, const std::string& unit);

void append_fmt(std::string& out, const char* fmt, ...);

}  // namespace roofkit
