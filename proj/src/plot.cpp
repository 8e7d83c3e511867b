#include "msplot/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "msplot/csv.hpp"
#include "msplot/error.hpp"

namespace msplot {

namespace {

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kStyle =
    "<style>"
    ".mark{stroke:#333;stroke-width:0.5}"
    ".normal{fill:#a0a0a0}.flagged{fill:#d62728}.correct{fill:#d62728}"
    ".false_alarm{fill:#1f77b4}.missed{fill:#17becf}"
    ".boundary{fill:none;stroke:#000;stroke-width:1.2}"
    ".reference{fill:none;stroke:#000;stroke-dasharray:4 3}"
    ".axis{stroke:#000;stroke-width:1}"
    "text{font-family:sans-serif;font-size:12px}"
    ".title{font-size:14px;font-weight:bold}"
    "</style>\n";

std::string svg_open(double width, double height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fmt2(width) + "\" height=\"" + fmt2(height) + "\" viewBox=\"0 0 " + fmt2(width) + ' ' + fmt2(height) +
         "\">\n" + kStyle + "<rect x=\"0\" y=\"0\" width=\"" + fmt2(width) + "\" height=\"" + fmt2(height) +
         "\" fill=\"#fff\"/>\n";
}

PlotFrame frame_for(const Eigen::Ref<const Eigen::MatrixXd>& xy) {
  PlotFrame f;
  if (xy.rows() == 0) return f;
  f.x_min = xy.col(0).minCoeff();
  f.x_max = xy.col(0).maxCoeff();
  f.y_min = xy.col(1).minCoeff();
  f.y_max = xy.col(1).maxCoeff();
  auto pad = [](double& lo, double& hi) {
    const double span = hi - lo;
    const double margin = span > 0 ? 0.05 * span : std::max(0.5, 0.05 * std::abs(lo));
    lo -= margin;
    hi += margin;
  };
  pad(f.x_min, f.x_max);
  pad(f.y_min, f.y_max);
  return f;
}

// One panel's worth of SVG, translated to (ox, oy).
class PanelWriter {
 public:
  PanelWriter(std::string& out, const PlotFrame& frame, double ox, double oy)
      : out_(out), frame_(frame), ox_(ox), oy_(oy) {}

  void axes(const std::string& xlabel, const std::string& ylabel, const std::string& title) {
    const double lo = PlotFrame::kMargin;
    const double hi = PlotFrame::kSize - PlotFrame::kMargin;
    out_ += "<line class=\"axis\" x1=\"" + X(lo) + "\" y1=\"" + Y(hi) + "\" x2=\"" + X(hi) + "\" y2=\"" + Y(hi) +
            "\"/>\n";
    out_ += "<line class=\"axis\" x1=\"" + X(lo) + "\" y1=\"" + Y(lo) + "\" x2=\"" + X(lo) + "\" y2=\"" + Y(hi) +
            "\"/>\n";
    for (int k = 0; k <= 4; ++k) {
      const double fx = frame_.x_min + (frame_.x_max - frame_.x_min) * k / 4.0;
      const double fy = frame_.y_min + (frame_.y_max - frame_.y_min) * k / 4.0;
      out_ += "<text x=\"" + X(frame_.px(fx)) + "\" y=\"" + Y(hi + 16) + "\" text-anchor=\"middle\">" +
              tick_label(fx) + "</text>\n";
      out_ += "<text x=\"" + X(lo - 6) + "\" y=\"" + Y(frame_.py(fy) + 4) + "\" text-anchor=\"end\">" +
              tick_label(fy) + "</text>\n";
    }
    out_ += "<text x=\"" + X(PlotFrame::kSize / 2) + "\" y=\"" + Y(PlotFrame::kSize - 18) +
            "\" text-anchor=\"middle\">" + xml_escape(xlabel) + "</text>\n";
    out_ += "<text x=\"" + X(16) + "\" y=\"" + Y(PlotFrame::kSize / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 " +
            X(16) + ' ' + Y(PlotFrame::kSize / 2) + ")\">" + xml_escape(ylabel) + "</text>\n";
    out_ += "<text class=\"title\" x=\"" + X(PlotFrame::kSize / 2) + "\" y=\"" + Y(30) + "\" text-anchor=\"middle\">" +
            xml_escape(title) + "</text>\n";
  }

  void polyline(const Eigen::Ref<const Eigen::MatrixXd>& xy, const char* cls, bool closed) {
    out_ += closed ? "<polygon class=\"" : "<polyline class=\"";
    out_ += cls;
    out_ += "\" points=\"";
    for (Index r = 0; r < xy.rows(); ++r) {
      if (r) out_ += ' ';
      out_ += X(frame_.px(xy(r, 0))) + ',' + Y(frame_.py(xy(r, 1)));
    }
    out_ += "\"/>\n";
  }

  void marks(const Eigen::Ref<const Eigen::MatrixXd>& xy, const std::vector<MarkClass>& classes,
             const std::vector<std::string>* ids) {
    for (Index i = 0; i < xy.rows(); ++i) {
      out_ += "<circle class=\"mark ";
      out_ += to_string(classes[static_cast<std::size_t>(i)]);
      out_ += "\" cx=\"" + X(frame_.px(xy(i, 0))) + "\" cy=\"" + Y(frame_.py(xy(i, 1))) + "\" r=\"4\"";
      if (ids)
        out_ += "><title>" + xml_escape((*ids)[static_cast<std::size_t>(i)]) + "</title></circle>\n";
      else
        out_ += "/>\n";
    }
  }

 private:
  std::string X(double v) const { return fmt2(ox_ + v); }
  std::string Y(double v) const { return fmt2(oy_ + v); }

  std::string& out_;
  const PlotFrame& frame_;
  double ox_, oy_;
};

bool draws_boundary(const OutlyingnessSummary& summary, const MsPlotOptions& options) {
  return options.detection && options.detection->boundary && options.detection->boundary->dim == 2 &&
         summary.dims() == 1 && options.mode == MsMode::full;
}

std::vector<bool> flags_of(const MsPlotOptions& options) {
  return options.detection ? options.detection->flags : std::vector<bool>{};
}

}  // namespace

std::string_view to_string(MarkClass c) noexcept {
  switch (c) {
    case MarkClass::normal: return "normal";
    case MarkClass::flagged: return "flagged";
    case MarkClass::correct: return "correct";
    case MarkClass::false_alarm: return "false_alarm";
    case MarkClass::missed: return "missed";
  }
  return "normal";
}

std::vector<MarkClass> mark_classes(Index n, const std::vector<bool>* flags, const std::vector<bool>* truth) {
  std::vector<MarkClass> out(static_cast<std::size_t>(n), MarkClass::normal);
  if (flags && !flags->empty() && static_cast<Index>(flags->size()) != n)
    throw Error(Errc::ShapeMismatch, "one flag per curve required");
  if (truth && static_cast<Index>(truth->size()) != n) throw Error(Errc::ShapeMismatch, "one truth label per curve required");
  for (std::size_t i = 0; i < out.size(); ++i) {
    const bool f = flags && !flags->empty() && (*flags)[i];
    if (truth) {
      const bool t = (*truth)[i];
      out[i] = f && t ? MarkClass::correct : f ? MarkClass::false_alarm : t ? MarkClass::missed : MarkClass::normal;
    } else if (f) {
      out[i] = MarkClass::flagged;
    }
  }
  return out;
}

double PlotFrame::px(double x) const {
  return kMargin + (x - x_min) / (x_max - x_min) * (kSize - 2 * kMargin);
}
double PlotFrame::py(double y) const {
  return kSize - kMargin - (y - y_min) / (y_max - y_min) * (kSize - 2 * kMargin);
}
double PlotFrame::data_x(double p) const { return x_min + (p - kMargin) / (kSize - 2 * kMargin) * (x_max - x_min); }
double PlotFrame::data_y(double p) const {
  return y_min + (kSize - kMargin - p) / (kSize - 2 * kMargin) * (y_max - y_min);
}

Eigen::MatrixXd msplot_render_coordinates(const OutlyingnessSummary& summary, MsMode mode) {
  if (mode == MsMode::full && summary.dims() == 1) return ms_coordinates(summary, MsMode::full);
  return ms_coordinates(summary, MsMode::norm);
}

PlotFrame msplot_frame(const OutlyingnessSummary& summary, const MsPlotOptions& options) {
  Eigen::MatrixXd xy = msplot_render_coordinates(summary, options.mode);
  if (draws_boundary(summary, options)) {
    const auto& v = options.detection->boundary->vertices;
    Eigen::MatrixXd all(xy.rows() + v.rows(), 2);
    all << xy, v;
    xy = std::move(all);
  }
  return frame_for(xy);
}

PlotDocument emit_msplot(const OutlyingnessSummary& summary, const std::vector<std::string>& ids,
                         const MsPlotOptions& options) {
  const Index n = summary.curves();
  if (static_cast<Index>(ids.size()) != n) throw Error(Errc::ShapeMismatch, "one id per curve required");
  const auto flags = flags_of(options);
  PlotDocument doc;
  doc.format = options.format;
  doc.n_marks = n;

  if (options.format == PlotFormat::csv) {
    const Eigen::MatrixXd coords = ms_coordinates(summary, options.mode);
    std::string& out = doc.payload;
    out = "curve_id";
    if (options.mode == MsMode::full)
      for (Index k = 0; k < summary.dims(); ++k) out += ",mo_" + std::to_string(k + 1);
    else
      out += ",mo_norm";
    out += ",vo";
    if (!flags.empty()) out += ",flagged";
    out += '\n';
    for (Index i = 0; i < n; ++i) {
      out += ids[static_cast<std::size_t>(i)];
      for (Index c = 0; c < coords.cols(); ++c) out += ',' + format_double(coords(i, c));
      if (!flags.empty()) out += flags[static_cast<std::size_t>(i)] ? ",1" : ",0";
      out += '\n';
    }
    return doc;
  }

  if (options.mode == MsMode::full && summary.dims() > 2)
    throw Error(Errc::NoBoundaryGeometry,
                "full-mode MS-plot with p > 2 cannot be rendered; use norm mode or csv output");

  const Eigen::MatrixXd xy = msplot_render_coordinates(summary, options.mode);
  const PlotFrame frame = msplot_frame(summary, options);
  const bool signed_mo = options.mode == MsMode::full && summary.dims() == 1;

  doc.payload = svg_open(PlotFrame::kSize, PlotFrame::kSize);
  PanelWriter panel(doc.payload, frame, 0, 0);
  panel.axes(signed_mo ? "MO" : "‖MO‖", "VO", options.title);
  if (draws_boundary(summary, options)) panel.polyline(options.detection->boundary->vertices, "boundary", true);
  panel.marks(xy, mark_classes(n, &flags, options.truth), &ids);
  doc.payload += "</svg>\n";
  return doc;
}

MsArrayData ms_array_data(const FunctionalSample& sample, Index directions, std::uint64_t seed) {
  const Index p = sample.dims();
  if (p < 2) throw Error(Errc::ArrayNeedsMultivariate, "an MS-plot array needs p >= 2");
  MsArrayData data;
  for (Index k = 0; k < p; ++k) data.marginal.push_back(summarize(sample.select_dims({k}), DirectionSet{}));
  const auto dirs = sample_directions(directions, 2, seed);
  data.joint.assign(static_cast<std::size_t>(p), std::vector<std::optional<OutlyingnessSummary>>(static_cast<std::size_t>(p)));
  for (Index k = 0; k < p; ++k)
    for (Index l = k + 1; l < p; ++l)
      data.joint[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = summarize(sample.select_dims({k, l}), dirs);
  return data;
}

PlotDocument emit_msplot_array(const MsArrayData& data, const std::vector<bool>* flags,
                               const std::vector<bool>* truth) {
  const Index p = data.dims();
  if (p < 2) throw Error(Errc::ArrayNeedsMultivariate, "an MS-plot array needs p >= 2");
  const Index n = data.marginal.front().curves();
  const auto classes = mark_classes(n, flags, truth);

  PlotDocument doc;
  doc.format = PlotFormat::svg;
  doc.n_marks = n * p * p;
  const double size = PlotFrame::kSize * static_cast<double>(p);
  doc.payload = svg_open(size, size);
  for (Index row = 0; row < p; ++row) {
    for (Index col = 0; col < p; ++col) {
      const bool diagonal = row == col;
      const auto& joint = data.joint[static_cast<std::size_t>(std::min(row, col))][static_cast<std::size_t>(std::max(row, col))];
      const OutlyingnessSummary& s = diagonal ? data.marginal[static_cast<std::size_t>(row)] : *joint;
      const Eigen::MatrixXd xy = ms_coordinates(s, diagonal ? MsMode::full : MsMode::norm);
      const PlotFrame frame = frame_for(xy);
      const std::string title = diagonal ? "X" + std::to_string(row + 1)
                                         : "(X" + std::to_string(std::min(row, col) + 1) + ", X" +
                                               std::to_string(std::max(row, col) + 1) + ")";
      doc.payload += "<g class=\"panel\" data-row=\"" + std::to_string(row) + "\" data-col=\"" + std::to_string(col) +
                     "\">\n";
      PanelWriter panel(doc.payload, frame, PlotFrame::kSize * static_cast<double>(col),
                        PlotFrame::kSize * static_cast<double>(row));
      panel.axes(diagonal ? "MO" : "‖MO‖", "VO", title);
      panel.marks(xy, classes, nullptr);
      doc.payload += "</g>\n";
    }
  }
  doc.payload += "</svg>\n";
  return doc;
}

PlotDocument emit_outliergram(const OutlyingnessSummary& summary, const std::vector<std::string>& ids,
                              PlotFormat format, const std::vector<bool>* flags) {
  const Index n = summary.curves();
  if (static_cast<Index>(ids.size()) != n) throw Error(Errc::ShapeMismatch, "one id per curve required");
  const Eigen::VectorXd mo_norm = summary.mo.rowwise().norm();
  PlotDocument doc;
  doc.format = format;
  doc.n_marks = n;

  if (format == PlotFormat::csv) {
    doc.payload = "curve_id,mo_norm,fo,vo_gap\n";
    for (Index i = 0; i < n; ++i)
      doc.payload += ids[static_cast<std::size_t>(i)] + ',' + format_double(mo_norm(i)) + ',' +
                     format_double(summary.fo(i)) + ',' + format_double(summary.fo(i) - mo_norm(i) * mo_norm(i)) +
                     '\n';
    return doc;
  }

  Eigen::MatrixXd xy(n, 2);
  xy.col(0) = mo_norm;
  xy.col(1) = summary.fo;
  PlotFrame frame = frame_for(xy);
  frame.x_min = std::min(frame.x_min, 0.0);
  frame.y_min = std::min(frame.y_min, 0.0);

  constexpr Index kSegments = 100;
  const double top = std::sqrt(std::max(frame.y_max, 0.0));
  const double x_end = std::min(frame.x_max, top);
  Eigen::MatrixXd parabola(kSegments + 1, 2);
  for (Index k = 0; k <= kSegments; ++k) {
    const double x = x_end * static_cast<double>(k) / static_cast<double>(kSegments);
    parabola(k, 0) = x;
    parabola(k, 1) = x * x;
  }

  doc.payload = svg_open(PlotFrame::kSize, PlotFrame::kSize);
  PanelWriter panel(doc.payload, frame, 0, 0);
  panel.axes("‖MO‖", "FO", "Outliergram");
  panel.polyline(parabola, "reference", false);
  panel.marks(xy, mark_classes(n, flags, nullptr), &ids);
  doc.payload += "</svg>\n";
  return doc;
}

}  // namespace msplot
