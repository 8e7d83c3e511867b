#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msplot/detect.hpp"
#include "msplot/functional.hpp"
#include "msplot/grid.hpp"

namespace msplot {

enum class PlotFormat { svg, csv };

/// A standalone document. For svg, `n_marks` counts <circle class="mark ...">
/// elements; for csv, data rows.
struct PlotDocument {
  PlotFormat format = PlotFormat::svg;
  std::string payload;
  Index n_marks = 0;
};

/// Styling roles of a curve's mark.
enum class MarkClass { normal, flagged, correct, false_alarm, missed };

std::string_view to_string(MarkClass c) noexcept;

/// Without truth: normal / flagged. With truth: normal / correct /
/// false_alarm / missed. Empty flags give all-normal.
std::vector<MarkClass> mark_classes(Index n, const std::vector<bool>* flags, const std::vector<bool>* truth);

/// Data window of a 600 x 600 panel.
struct PlotFrame {
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  static constexpr double kSize = 600.0;
  static constexpr double kMargin = 60.0;

  double px(double x) const;
  double py(double y) const;
  double data_x(double px) const;
  double data_y(double py) const;
};

struct MsPlotOptions {
  MsMode mode = MsMode::full;
  PlotFormat format = PlotFormat::svg;
  const DetectionResult* detection = nullptr;
  const std::vector<bool>* truth = nullptr;
  std::string title = "MS-plot";
};

/// The (x, y) pairs an MS-plot renders: (MO, VO) for p = 1 in full mode,
/// (|MO|, VO) otherwise.
Eigen::MatrixXd msplot_render_coordinates(const OutlyingnessSummary& summary, MsMode mode);

/// Frame covering the rendered points and, when drawn, the boundary.
PlotFrame msplot_frame(const OutlyingnessSummary& summary, const MsPlotOptions& options);

/// MS-plot. SVG renders (MO, VO) for p = 1; for p = 2 in full mode the 3-D
/// scatter is rendered in norm mode (the csv carries all coordinates). Full
/// mode with p > 2 as svg throws NoBoundaryGeometry. The detection ellipse is
/// drawn whenever the rendered plane is the fitted plane (p = 1, srmd rule).
PlotDocument emit_msplot(const OutlyingnessSummary& summary, const std::vector<std::string>& ids,
                         const MsPlotOptions& options = {});

/// Summaries backing an MS-plot array: marginal per dimension and joint per pair.
struct MsArrayData {
  std::vector<OutlyingnessSummary> marginal;
  std::vector<std::vector<std::optional<OutlyingnessSummary>>> joint;  // [k][l], k < l

  Index dims() const { return static_cast<Index>(marginal.size()); }
};

/// Throws ArrayNeedsMultivariate for p = 1.
MsArrayData ms_array_data(const FunctionalSample& sample, Index directions = kDefaultDirections,
                          std::uint64_t seed = kDefaultDirectionSeed);

/// p x p panels: marginal MS-plots on the diagonal, joint norm-mode MS-plots
/// off the diagonal. `n_marks` is the total over all panels (n p^2).
PlotDocument emit_msplot_array(const MsArrayData& data, const std::vector<bool>* flags = nullptr,
                               const std::vector<bool>* truth = nullptr);

/// (|MO|, FO) against the parabola FO = |MO|^2. CSV columns:
/// curve_id,mo_norm,fo,vo_gap.
PlotDocument emit_outliergram(const OutlyingnessSummary& summary, const std::vector<std::string>& ids,
                              PlotFormat format = PlotFormat::svg, const std::vector<bool>* flags = nullptr);

}  // namespace msplot
