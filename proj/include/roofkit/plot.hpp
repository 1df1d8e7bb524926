#pragma once

#include <optional>
#include <string>
#include <vector>

#include "roofkit/machine_model.hpp"
#include "roofkit/sweep.hpp"

namespace roofkit {

enum class ChartKind {
  ClassicRoofline,   // AI vs attained FLOP/s with ceilings
  ComplexityPlane,   // BC vs CC with machine-balance diagonals and overhead box
  TimePlane,         // bandwidth time vs compute time with runtime isocurves
  ComplexityTime4D,  // closed complexity symbols + open rescaled-time symbols
};

ChartKind chart_kind_from_string(const std::string& s);
std::string to_string(ChartKind k);

struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct ChartSpec {
  ChartKind kind = ChartKind::ClassicRoofline;
  MachineSpec machine;
  std::vector<std::string> compute_ceiling_labels;  // drawn; empty selects all
  std::string memory_ceiling_label;                 // empty selects the first
  // Diagonal used for classification and for scaling open time symbols.
  std::string classify_ceiling_label;  // empty selects the first
  std::vector<SweepSeries> series;
  std::optional<AxisRange> x_range;  // log axes; lo > 0 and lo < hi
  std::optional<AxisRange> y_range;
  std::string title;
};

// Log10 value-to-pixel mapping for one axis. Exposed so tests can check that
// drawn elements land where the transform says they should.
struct LogMapper {
  AxisRange range;
  double px_lo = 0.0;
  double px_hi = 0.0;
  double to_px(double v) const;
  double to_value(double px) const;
};

struct ChartRanges {
  AxisRange x;
  AxisRange y;
};

// Smallest decade-aligned range containing all points plus the chart's
// machine landmarks (overhead box corners, ceiling intersections), padded by
// one decade on each side.
ChartRanges auto_range(const ChartSpec& spec);

// Deterministic, self-contained SVG 1.1. Identical spec -> identical bytes.
std::string render_chart(const ChartSpec& spec);

}  // namespace roofkit
