#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "msplot/grid.hpp"

namespace msplot {

inline constexpr Index kDefaultDirections = 200;
inline constexpr std::uint64_t kDefaultDirectionSeed = 1;

/// K unit directions in R^p, one per row.
struct DirectionSet {
  Eigen::MatrixXd directions;
  std::uint64_t seed = 0;

  Index count() const { return directions.rows(); }
  Index dim() const { return directions.cols(); }
};

/// K directions uniform on the unit sphere (normalized Gaussian vectors).
/// Throws UseClosedForm for p < 2.
DirectionSet sample_directions(Index count, Index p, std::uint64_t seed);

/// Signed univariate outlyingness (x - median) / MAD.
/// Throws DegenerateCrossSection when the MAD is zero.
double directional_outlyingness_1d(double x, const Eigen::Ref<const Eigen::VectorXd>& cross_section);

/// Median and MAD of every projection u'X of one cross-section. Directions
/// whose projected MAD is zero are marked unusable and skipped.
class ProjectedCrossSection {
 public:
  ProjectedCrossSection(const Eigen::Ref<const Eigen::MatrixXd>& cross_section, const DirectionSet& dirs);

  /// max over usable directions of |u'x - med| / MAD.
  double sdo(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// SDO of every row of the cross-section it was built from.
  Eigen::VectorXd sample_sdo() const;

  bool degenerate() const { return usable_dirs_.rows() == 0; }

 private:
  Eigen::MatrixXd projections_;  // n x K_usable
  Eigen::MatrixXd usable_dirs_;  // K_usable x p
  Eigen::VectorXd median_;
  Eigen::VectorXd mad_;
};

/// Stahel-Donoho outlyingness of x w.r.t. the cross-section, with the
/// supremum over the sphere replaced by a maximum over `dirs`.
double sdo_md(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::MatrixXd>& cross_section,
              const DirectionSet& dirs);

/// Index of the sample point of minimal outlyingness (lowest index on ties).
/// The p = 1 overload ranks by |x - med|, which needs no positive MAD.
Index deepest_point(const Eigen::Ref<const Eigen::MatrixXd>& cross_section);
Index deepest_point(const Eigen::Ref<const Eigen::MatrixXd>& cross_section, const DirectionSet& dirs);

/// Directional outlyingness O(X_i(t_j)) for every curve and grid point,
/// stored like FunctionalSample: p component matrices of size n x m.
struct PointwiseField {
  std::vector<Eigen::MatrixXd> components;

  Index curves() const { return components.front().rows(); }
  Index points() const { return components.front().cols(); }
  Index dims() const { return static_cast<Index>(components.size()); }

  Eigen::VectorXd at(Index curve, Index point) const;
};

/// Closed form for p = 1; for p >= 2 uses `dirs` (which must match p).
PointwiseField pointwise_field(const FunctionalSample& sample, const DirectionSet& dirs);

/// As above with the default direction set for p >= 2.
PointwiseField pointwise_field(const FunctionalSample& sample);

}  // namespace msplot
