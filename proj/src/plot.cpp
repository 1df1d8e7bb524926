#include "roofkit/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "roofkit/errors.hpp"
#include "roofkit/format.hpp"
#include "roofkit/roofline_core.hpp"

namespace roofkit {

namespace {

// Fixed canvas so goldens stay stable: 960x720, 12pt sans-serif.
constexpr double kCanvasW = 960.0;
constexpr double kCanvasH = 720.0;
constexpr double kPlotX0 = 90.0;
constexpr double kPlotX1 = 930.0;
constexpr double kPlotY0 = 56.0;   // top
constexpr double kPlotY1 = 656.0;  // bottom
constexpr double kMarkerSize = 4.5;
// Fraction of the axis minimum used to stand in for zero on log axes.
constexpr double kZeroClampFactor = 1e-2;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

enum class MarkerShape { Circle, Square, Diamond, Triangle };
constexpr MarkerShape kShapes[] = {MarkerShape::Circle, MarkerShape::Square,
                                   MarkerShape::Diamond, MarkerShape::Triangle};
constexpr size_t kShapeCount = sizeof(kShapes) / sizeof(kShapes[0]);

struct XY {
  double x = 0.0;
  double y = 0.0;
};

struct SeriesGeometry {
  std::string label;
  bool predicted = false;
  const char* color = kPalette[0];
  MarkerShape shape = MarkerShape::Circle;
  std::vector<XY> closed;  // primary coordinates for the chart kind
  std::vector<XY> open;    // rescaled time coordinates (4D only)
  double t_overhead_max = 0.0;
  double overhead_ceiling_flops = 0.0;  // classic chart; 0 when undefined
};

struct ChartContext {
  const ChartSpec* spec = nullptr;
  std::vector<ComputeCeiling> drawn_ceilings;
  CeilingSelection sel;
  double mb_sel = 0.0;
  std::vector<SeriesGeometry> series;
};

ChartContext prepare(const ChartSpec& spec) {
  validate(spec.machine);
  if (spec.series.empty()) throw SchemaError("chart: series must not be empty");
  for (const auto& s : spec.series) {
    if (s.points.empty()) throw SchemaError("chart: series '" + s.series_label + "' is empty");
    if (s.machine_name != spec.machine.name) {
      throw SchemaError("chart: series '" + s.series_label + "' belongs to machine '" +
                        s.machine_name + "', chart uses '" + spec.machine.name + "'");
    }
  }
  for (const auto& r : {spec.x_range, spec.y_range}) {
    if (r && !(r->lo > 0.0 && r->lo < r->hi)) {
      throw SchemaError("chart: axis range must satisfy 0 < min < max");
    }
  }

  ChartContext ctx;
  ctx.spec = &spec;
  if (spec.compute_ceiling_labels.empty()) {
    ctx.drawn_ceilings = spec.machine.compute_ceilings;
  } else {
    for (const auto& label : spec.compute_ceiling_labels) {
      ctx.drawn_ceilings.push_back(spec.machine.compute_ceiling(label));
    }
  }
  ctx.sel = select_ceilings(spec.machine, spec.classify_ceiling_label, spec.memory_ceiling_label);
  ctx.mb_sel = machine_balance(ctx.sel.compute, ctx.sel.memory);

  for (size_t i = 0; i < spec.series.size(); ++i) {
    const auto& s = spec.series[i];
    SeriesGeometry g;
    g.label = s.series_label;
    g.predicted = s.predicted;
    g.color = kPalette[i % kPaletteSize];
    g.shape = kShapes[i % kShapeCount];
    double min_ceiling = std::numeric_limits<double>::infinity();
    for (const auto& p : s.points) {
      const AnalyzedKernel& k = p.analyzed;
      switch (spec.kind) {
        case ChartKind::ClassicRoofline:
          g.closed.push_back({k.ai, k.attained_flops_per_sec});
          break;
        case ChartKind::ComplexityPlane:
          g.closed.push_back({k.complexity.bc, k.complexity.cc});
          break;
        case ChartKind::TimePlane:
          g.open.push_back({k.time.bandwidth_time_sec, k.time.compute_time_sec});
          break;
        case ChartKind::ComplexityTime4D: {
          g.closed.push_back({k.complexity.bc, k.complexity.cc});
          ComplexityPoint o = open_symbol(k, ctx.sel);
          g.open.push_back({o.bc, o.cc});
          break;
        }
      }
      g.t_overhead_max = std::max(g.t_overhead_max, k.overhead_sec);
      if (k.overhead_sec > 0.0 && k.complexity.cc > 0.0) {
        min_ceiling = std::min(min_ceiling, k.complexity.cc / k.overhead_sec);
      }
    }
    if (std::isfinite(min_ceiling)) g.overhead_ceiling_flops = min_ceiling;
    ctx.series.push_back(std::move(g));
  }
  return ctx;
}

void push_positive(std::vector<double>& out, double v) {
  if (std::isfinite(v) && v > 0.0) out.push_back(v);
}

AxisRange align_and_pad(const std::vector<double>& values) {
  if (values.empty()) throw SchemaError("chart: no positive finite values to place on a log axis");
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  int lo_dec = static_cast<int>(std::floor(std::log10(lo)));
  int hi_dec = static_cast<int>(std::ceil(std::log10(hi)));
  return {std::pow(10.0, lo_dec - 1), std::pow(10.0, hi_dec + 1)};
}

void gather_range_candidates(const ChartContext& ctx, std::vector<double>& xs,
                             std::vector<double>& ys) {
  const ChartSpec& spec = *ctx.spec;
  for (const auto& g : ctx.series) {
    for (const auto& p : g.closed) {
      push_positive(xs, p.x);
      push_positive(ys, p.y);
    }
    for (const auto& p : g.open) {
      push_positive(xs, p.x);
      push_positive(ys, p.y);
    }
  }
  switch (spec.kind) {
    case ChartKind::ClassicRoofline:
      for (const auto& c : ctx.drawn_ceilings) {
        push_positive(xs, machine_balance(c, ctx.sel.memory));
        push_positive(ys, c.flops_per_sec);
      }
      for (const auto& g : ctx.series) push_positive(ys, g.overhead_ceiling_flops);
      break;
    case ChartKind::ComplexityPlane:
    case ChartKind::ComplexityTime4D:
      for (const auto& g : ctx.series) {
        if (g.t_overhead_max > 0.0) {
          push_positive(xs, ctx.sel.memory.bytes_per_sec * g.t_overhead_max);
          push_positive(ys, ctx.sel.compute.flops_per_sec * g.t_overhead_max);
        }
      }
      break;
    case ChartKind::TimePlane:
      for (const auto& g : ctx.series) {
        if (g.t_overhead_max > 0.0) {
          push_positive(xs, g.t_overhead_max);
          push_positive(ys, g.t_overhead_max);
        }
      }
      break;
  }
}

std::string axis_title_x(ChartKind k) {
  switch (k) {
    case ChartKind::ClassicRoofline: return "Arithmetic Intensity (FLOPs/Byte)";
    case ChartKind::ComplexityPlane: return "Bandwidth Complexity (Bytes)";
    case ChartKind::TimePlane: return "Bandwidth Time (s)";
    case ChartKind::ComplexityTime4D:
      return "Bandwidth Complexity (Bytes); open: Bandwidth Time x Peak B/s";
  }
  return "";
}

std::string axis_title_y(ChartKind k) {
  switch (k) {
    case ChartKind::ClassicRoofline: return "Attained Performance (FLOP/s)";
    case ChartKind::ComplexityPlane: return "Computational Complexity (FLOPs)";
    case ChartKind::TimePlane: return "Compute Time (s)";
    case ChartKind::ComplexityTime4D:
      return "Computational Complexity (FLOPs); open: Compute Time x Peak FLOP/s";
  }
  return "";
}

std::string decade_label(int k) { return "1e" + std::to_string(k); }

class SvgBuilder {
 public:
  explicit SvgBuilder(const ChartContext& ctx, const ChartRanges& ranges)
      : ctx_(ctx),
        x_{ranges.x, kPlotX0, kPlotX1},
        y_{ranges.y, kPlotY1, kPlotY0} {}  // y grows downward in SVG

  std::string build();

 private:
  void header();
  void grid();
  void machine_elements();
  void series_lines();
  void series_markers();
  void legend();
  void footer();

  void line(double x0, double y0, double x1, double y1, const std::string& attrs,
            const std::string& id = {});
  void polyline(const std::vector<XY>& pts, const char* color, bool dashed);
  void marker(double px, double py, const SeriesGeometry& g, bool open, bool clamped,
              const char* cls = nullptr);
  void text(double px, double py, const std::string& anchor, const std::string& content,
            const std::string& extra = {});

  // Substitute the documented epsilon for zero before mapping; the pixel is
  // then pinned to the plot edge.
  double clamp_px_x(double v, bool* clamped) const;
  double clamp_px_y(double v, bool* clamped) const;
  bool in_range_x(double v) const { return v >= x_.range.lo && v <= x_.range.hi; }
  bool in_range_y(double v) const { return v >= y_.range.lo && v <= y_.range.hi; }

  const ChartContext& ctx_;
  LogMapper x_;
  LogMapper y_;
  std::string out_;
};

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

double SvgBuilder::clamp_px_x(double v, bool* clamped) const {
  *clamped = false;
  if (!std::isfinite(v)) {
    *clamped = true;
    return v > 0 ? kPlotX1 : kPlotX0;
  }
  if (v <= 0.0) {
    *clamped = true;
    v = x_.range.lo * kZeroClampFactor;
  }
  return clamp(x_.to_px(v), kPlotX0, kPlotX1);
}

double SvgBuilder::clamp_px_y(double v, bool* clamped) const {
  *clamped = false;
  if (!std::isfinite(v)) {
    *clamped = true;
    return v > 0 ? kPlotY0 : kPlotY1;
  }
  if (v <= 0.0) {
    *clamped = true;
    v = y_.range.lo * kZeroClampFactor;
  }
  return clamp(y_.to_px(v), kPlotY0, kPlotY1);
}

void SvgBuilder::header() {
  append_fmt(out_,
             "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%g\" "
             "height=\"%g\" viewBox=\"0 0 %g %g\">\n",
             kCanvasW, kCanvasH, kCanvasW, kCanvasH);
  out_ += "<defs><clipPath id=\"plot\"><rect x=\"" + num_px(kPlotX0) + "\" y=\"" +
          num_px(kPlotY0) + "\" width=\"" + num_px(kPlotX1 - kPlotX0) + "\" height=\"" +
          num_px(kPlotY1 - kPlotY0) + "\"/></clipPath></defs>\n";
  out_ += "<rect width=\"" + num_px(kCanvasW) + "\" height=\"" + num_px(kCanvasH) +
          "\" fill=\"#ffffff\"/>\n";
  out_ += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\">\n";
  text(kCanvasW / 2, 30.0, "middle", ctx_.spec->title, " font-size=\"16\"");
  text((kPlotX0 + kPlotX1) / 2, 702.0, "middle", axis_title_x(ctx_.spec->kind));
  append_fmt(out_,
             "<text x=\"24.00\" y=\"%s\" text-anchor=\"middle\" "
             "transform=\"rotate(-90 24 %s)\">%s</text>\n",
             num_px((kPlotY0 + kPlotY1) / 2).c_str(), num_px((kPlotY0 + kPlotY1) / 2).c_str(),
             axis_title_y(ctx_.spec->kind).c_str());
}

void SvgBuilder::line(double x0, double y0, double x1, double y1, const std::string& attrs,
                      const std::string& id) {
  out_ += "<line";
  if (!id.empty()) out_ += " id=\"" + id + "\"";
  out_ += " x1=\"" + num_px(x0) + "\" y1=\"" + num_px(y0) + "\" x2=\"" + num_px(x1) +
          "\" y2=\"" + num_px(y1) + "\" " + attrs + "/>\n";
}

void SvgBuilder::text(double px, double py, const std::string& anchor,
                      const std::string& content, const std::string& extra) {
  out_ += "<text x=\"" + num_px(px) + "\" y=\"" + num_px(py) + "\" text-anchor=\"" + anchor +
          "\"" + extra + ">" + content + "</text>\n";
}

void SvgBuilder::grid() {
  line(kPlotX0, kPlotY0, kPlotX0, kPlotY1, "stroke=\"#222222\" stroke-width=\"1\"");
  line(kPlotX0, kPlotY1, kPlotX1, kPlotY1, "stroke=\"#222222\" stroke-width=\"1\"");
  int x_first = static_cast<int>(std::ceil(std::log10(x_.range.lo) - 1e-9));
  int x_last = static_cast<int>(std::floor(std::log10(x_.range.hi) + 1e-9));
  for (int k = x_first; k <= x_last; ++k) {
    double px = x_.to_px(std::pow(10.0, k));
    line(px, kPlotY0, px, kPlotY1, "stroke=\"#dddddd\" stroke-width=\"1\"");
    text(px, 674.0, "middle", decade_label(k));
  }
  int y_first = static_cast<int>(std::ceil(std::log10(y_.range.lo) - 1e-9));
  int y_last = static_cast<int>(std::floor(std::log10(y_.range.hi) + 1e-9));
  for (int k = y_first; k <= y_last; ++k) {
    double py = y_.to_px(std::pow(10.0, k));
    line(kPlotX0, py, kPlotX1, py, "stroke=\"#dddddd\" stroke-width=\"1\"");
    text(kPlotX0 - 6, py + 4, "end", decade_label(k));
  }
}

void SvgBuilder::machine_elements() {
  const ChartSpec& spec = *ctx_.spec;
  const double pb = ctx_.sel.memory.bytes_per_sec;
  const double pf_sel = ctx_.sel.compute.flops_per_sec;
  out_ += "<g clip-path=\"url(#plot)\">\n";
  switch (spec.kind) {
    case ChartKind::ClassicRoofline: {
      // Memory diagonal: attainable = bandwidth * ai.
      double max_pf = 0.0;
      for (const auto& c : ctx_.drawn_ceilings) max_pf = std::max(max_pf, c.flops_per_sec);
      double x_end = std::min(x_.range.hi, max_pf / pb);
      if (x_end > x_.range.lo) {
        line(x_.to_px(x_.range.lo), y_.to_px(pb * x_.range.lo), x_.to_px(x_end),
             y_.to_px(pb * x_end), "stroke=\"#222222\" stroke-width=\"1.5\"", "roofline-diag");
      }
      for (size_t i = 0; i < ctx_.drawn_ceilings.size(); ++i) {
        const auto& c = ctx_.drawn_ceilings[i];
        double mb = machine_balance(c, ctx_.sel.memory);
        double x_start = std::max(x_.range.lo, mb);
        line(x_.to_px(x_start), y_.to_px(c.flops_per_sec), kPlotX1, y_.to_px(c.flops_per_sec),
             "stroke=\"#222222\" stroke-width=\"1.5\"", "ceiling-" + std::to_string(i));
        text(kPlotX1 - 4, y_.to_px(c.flops_per_sec) - 5, "end",
             c.label + " " + format_si(c.flops_per_sec, "FLOP/s"));
      }
      text(x_.to_px(x_.range.lo) + 6, y_.to_px(pb * x_.range.lo) - 8, "start",
           ctx_.sel.memory.label + " " + format_si(pb, "B/s"));
      for (size_t i = 0; i < ctx_.series.size(); ++i) {
        const auto& g = ctx_.series[i];
        if (g.overhead_ceiling_flops <= 0.0) continue;
        double py = y_.to_px(g.overhead_ceiling_flops);
        line(kPlotX0, py, kPlotX1, py,
             std::string("stroke=\"") + g.color + "\" stroke-width=\"1\" stroke-dasharray=\"6 4\"",
             "ovh-ceiling-" + std::to_string(i));
        text(kPlotX0 + 6, py - 5, "start", "launch overhead",
             std::string(" fill=\"") + g.color + "\"");
      }
      break;
    }
    case ChartKind::ComplexityPlane:
    case ChartKind::ComplexityTime4D: {
      for (size_t i = 0; i < ctx_.drawn_ceilings.size(); ++i) {
        double mb = machine_balance(ctx_.drawn_ceilings[i], ctx_.sel.memory);
        double x0 = std::max(x_.range.lo, y_.range.lo / mb);
        double x1 = std::min(x_.range.hi, y_.range.hi / mb);
        if (x0 >= x1) continue;
        line(x_.to_px(x0), y_.to_px(mb * x0), x_.to_px(x1), y_.to_px(mb * x1),
             "stroke=\"#888888\" stroke-width=\"1\"", "mbdiag-" + std::to_string(i));
        text(x_.to_px(x1) - 6, y_.to_px(mb * x1) + 14, "end",
             ctx_.drawn_ceilings[i].label + " balance " + num_g6(mb),
             " fill=\"#888888\"");
      }
      for (size_t i = 0; i < ctx_.series.size(); ++i) {
        const auto& g = ctx_.series[i];
        if (g.t_overhead_max <= 0.0) continue;
        double corner_x = x_.to_px(pb * g.t_overhead_max);
        double corner_y = y_.to_px(pf_sel * g.t_overhead_max);
        append_fmt(out_,
                   "<rect id=\"ovbox-%zu\" x=\"%s\" y=\"%s\" width=\"%s\" height=\"%s\" "
                   "fill=\"none\" stroke=\"%s\" stroke-width=\"1\" stroke-dasharray=\"3 3\"/>\n",
                   i, num_px(kPlotX0).c_str(), num_px(corner_y).c_str(),
                   num_px(corner_x - kPlotX0).c_str(), num_px(kPlotY1 - corner_y).c_str(),
                   g.color);
      }
      break;
    }
    case ChartKind::TimePlane: {
      double d0 = std::max(x_.range.lo, y_.range.lo);
      double d1 = std::min(x_.range.hi, y_.range.hi);
      if (d0 < d1) {
        line(x_.to_px(d0), y_.to_px(d0), x_.to_px(d1), y_.to_px(d1),
             "stroke=\"#888888\" stroke-width=\"1\"", "diag-eq");
      }
      // Runtime isocurves: L-shaped max(ct, bt) contours at each decade.
      int first = static_cast<int>(std::ceil(std::log10(std::min(x_.range.lo, y_.range.lo))));
      int last = static_cast<int>(std::floor(std::log10(std::max(x_.range.hi, y_.range.hi))));
      for (int k = first; k <= last; ++k) {
        double c = std::pow(10.0, k);
        bool x_visible = c >= x_.range.lo && c <= x_.range.hi;
        bool y_visible = c >= y_.range.lo && c <= y_.range.hi;
        if (!x_visible && !y_visible) continue;
        std::string id = "iso-" + std::to_string(k);
        std::string attrs = "stroke=\"#bbbbbb\" stroke-width=\"1\" stroke-dasharray=\"2 3\"";
        if (x_visible) {
          line(x_.to_px(c), kPlotY1, x_.to_px(c), y_.to_px(std::min(c, y_.range.hi)), attrs,
               id + "-v");
        }
        if (y_visible) {
          line(x_.to_px(std::min(c, x_.range.hi)), y_.to_px(c), kPlotX0, y_.to_px(c), attrs,
               id + "-h");
        }
        if (x_visible && y_visible) {
          text(x_.to_px(c) + 4, y_.to_px(c) - 4, "start", decade_label(k) + " s",
               " fill=\"#999999\"");
        }
      }
      for (size_t i = 0; i < ctx_.series.size(); ++i) {
        const auto& g = ctx_.series[i];
        if (g.t_overhead_max <= 0.0) continue;
        double corner_x = x_.to_px(g.t_overhead_max);
        double corner_y = y_.to_px(g.t_overhead_max);
        append_fmt(out_,
                   "<rect id=\"ovsq-%zu\" x=\"%s\" y=\"%s\" width=\"%s\" height=\"%s\" "
                   "fill=\"none\" stroke=\"%s\" stroke-width=\"1\" stroke-dasharray=\"3 3\"/>\n",
                   i, num_px(kPlotX0).c_str(), num_px(corner_y).c_str(),
                   num_px(corner_x - kPlotX0).c_str(), num_px(kPlotY1 - corner_y).c_str(),
                   g.color);
      }
      break;
    }
  }
  out_ += "</g>\n";
}

void SvgBuilder::polyline(const std::vector<XY>& pts, const char* color, bool dashed) {
  if (pts.size() < 2) return;
  std::string d;
  for (const auto& p : pts) {
    bool cx = false, cy = false;
    double px = clamp_px_x(p.x, &cx);
    double py = clamp_px_y(p.y, &cy);
    d += (d.empty() ? "M" : " L") + num_px(px) + " " + num_px(py);
  }
  out_ += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
  if (dashed) out_ += " stroke-dasharray=\"6 4\"";
  out_ += "/>\n";
}

void SvgBuilder::marker(double px, double py, const SeriesGeometry& g, bool open, bool clamped,
                        const char* cls_override) {
  const double r = kMarkerSize;
  std::string cls = cls_override ? cls_override : (clamped ? "ptz" : (open ? "pto" : "pt"));
  out_ += "<g class=\"" + cls + "\" transform=\"translate(" + num_px(px) + "," + num_px(py) +
          ")\">";
  if (clamped) {
    // Hollow cross for values clamped onto the log axes (zero or infinite).
    append_fmt(out_,
               "<path d=\"M-%g 0 L%g 0 M0 -%g L0 %g\" stroke=\"%s\" stroke-width=\"1.5\" "
               "fill=\"none\"/>",
               r, r, r, r, g.color);
  } else {
    std::string fill = open ? "none" : g.color;
    std::string stroke = std::string(g.color);
    std::string style =
        "fill=\"" + fill + "\" stroke=\"" + stroke + "\" stroke-width=\"1.5\"";
    switch (g.shape) {
      case MarkerShape::Circle:
        append_fmt(out_, "<circle r=\"%g\" %s/>", r, style.c_str());
        break;
      case MarkerShape::Square:
        append_fmt(out_, "<rect x=\"-%g\" y=\"-%g\" width=\"%g\" height=\"%g\" %s/>", r, r,
                   2 * r, 2 * r, style.c_str());
        break;
      case MarkerShape::Diamond:
        append_fmt(out_, "<path d=\"M0 -%g L%g 0 L0 %g L-%g 0 Z\" %s/>", r * 1.3, r * 1.3,
                   r * 1.3, r * 1.3, style.c_str());
        break;
      case MarkerShape::Triangle:
        append_fmt(out_, "<path d=\"M0 -%g L%g %g L-%g %g Z\" %s/>", r * 1.2, r * 1.2, r,
                   r * 1.2, r, style.c_str());
        break;
    }
  }
  out_ += "</g>\n";
}

void SvgBuilder::series_lines() {
  out_ += "<g clip-path=\"url(#plot)\">\n";
  for (const auto& g : ctx_.series) {
    polyline(g.closed, g.color, /*dashed=*/false);
    polyline(g.open, g.color, /*dashed=*/true);
  }
  out_ += "</g>\n";
}

void SvgBuilder::series_markers() {
  for (const auto& g : ctx_.series) {
    for (int pass = 0; pass < 2; ++pass) {
      const auto& pts = pass == 0 ? g.closed : g.open;
      bool open = pass == 1;
      for (const auto& p : pts) {
        bool zero_x = !(std::isfinite(p.x) && p.x > 0.0);
        bool zero_y = !(std::isfinite(p.y) && p.y > 0.0);
        if (zero_x || zero_y) {
          bool cx = false, cy = false;
          marker(clamp_px_x(p.x, &cx), clamp_px_y(p.y, &cy), g, open, /*clamped=*/true);
          continue;
        }
        if (!in_range_x(p.x) || !in_range_y(p.y)) continue;
        marker(x_.to_px(p.x), y_.to_px(p.y), g, open, /*clamped=*/false);
      }
    }
  }
}

void SvgBuilder::legend() {
  double ly = kPlotY0 + 16;
  for (const auto& g : ctx_.series) {
    line(kPlotX0 + 10, ly - 4, kPlotX0 + 38, ly - 4,
         std::string("stroke=\"") + g.color + "\" stroke-width=\"1.5\"");
    marker(kPlotX0 + 24, ly - 4, g, /*open=*/false, /*clamped=*/false, "lg");
    text(kPlotX0 + 46, ly, "start", g.label + (g.predicted ? " [PRED]" : " [MEAS]"));
    ly += 18;
  }
  if (ctx_.spec->kind == ChartKind::ComplexityTime4D) {
    text(kPlotX0 + 10, ly, "start",
         "closed+solid: complexity; open+dashed: time x peak", " fill=\"#666666\"");
  }
}

void SvgBuilder::footer() { out_ += "</g>\n</svg>\n"; }

std::string SvgBuilder::build() {
  header();
  grid();
  machine_elements();
  series_lines();
  series_markers();
  legend();
  footer();
  return out_;
}

}  // namespace

ChartKind chart_kind_from_string(const std::string& s) {
  if (s == "classic") return ChartKind::ClassicRoofline;
  if (s == "complexity") return ChartKind::ComplexityPlane;
  if (s == "time") return ChartKind::TimePlane;
  if (s == "4d") return ChartKind::ComplexityTime4D;
  throw SchemaError("unknown chart kind '" + s + "' (use classic|complexity|time|4d)");
}

std::string to_string(ChartKind k) {
  switch (k) {
    case ChartKind::ClassicRoofline: return "classic";
    case ChartKind::ComplexityPlane: return "complexity";
    case ChartKind::TimePlane: return "time";
    case ChartKind::ComplexityTime4D: return "4d";
  }
  return "classic";
}

double LogMapper::to_px(double v) const {
  double l0 = std::log10(range.lo);
  double l1 = std::log10(range.hi);
  return px_lo + (std::log10(v) - l0) / (l1 - l0) * (px_hi - px_lo);
}

double LogMapper::to_value(double px) const {
  double l0 = std::log10(range.lo);
  double l1 = std::log10(range.hi);
  return std::pow(10.0, l0 + (px - px_lo) / (px_hi - px_lo) * (l1 - l0));
}

ChartRanges auto_range(const ChartSpec& spec) {
  ChartContext ctx = prepare(spec);
  std::vector<double> xs, ys;
  gather_range_candidates(ctx, xs, ys);
  return {align_and_pad(xs), align_and_pad(ys)};
}

std::string render_chart(const ChartSpec& spec) {
  ChartContext ctx = prepare(spec);
  std::vector<double> xs, ys;
  gather_range_candidates(ctx, xs, ys);
  ChartRanges ranges;
  ranges.x = spec.x_range ? *spec.x_range : align_and_pad(xs);
  ranges.y = spec.y_range ? *spec.y_range : align_and_pad(ys);
  SvgBuilder builder(ctx, ranges);
  return builder.build();
}

}  // namespace roofkit
