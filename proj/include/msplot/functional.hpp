#pragma once

#include <Eigen/Core>

#include "msplot/grid.hpp"
#include "msplot/pointwise.hpp"

namespace msplot {

/// Per-curve mean (MO, n x p), variation (VO) and total (FO) directional
/// outlyingness. FO = |MO|^2 + VO holds whenever the weights sum to one.
struct OutlyingnessSummary {
  Eigen::MatrixXd mo;
  Eigen::VectorXd vo;
  Eigen::VectorXd fo;

  Index curves() const { return mo.rows(); }
  Index dims() const { return mo.cols(); }
};

/// Weighted sums of the field over the grid. Throws InvalidGrid when the
/// weights do not sum to one within 1e-9.
OutlyingnessSummary summarize(const PointwiseField& field, const Grid& grid);

/// Field and summary in one call.
OutlyingnessSummary summarize(const FunctionalSample& sample, const DirectionSet& dirs);
OutlyingnessSummary summarize(const FunctionalSample& sample);

enum class MsMode { full, norm };

/// Rows (MO', VO) in full mode or (|MO|, VO) in norm mode.
Eigen::MatrixXd ms_coordinates(const OutlyingnessSummary& summary, MsMode mode);

}  // namespace msplot
