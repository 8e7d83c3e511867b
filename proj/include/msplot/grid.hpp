#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace msplot {

using Index = Eigen::Index;

/// Design points of the domain (m x q, one row per point) with quadrature
/// weights that sum to one.
struct Grid {
  Eigen::MatrixXd points;
  Eigen::VectorXd weights;

  Index size() const { return points.rows(); }
  Index domain_dim() const { return points.cols(); }

  /// 1-D coordinates; only meaningful when domain_dim() == 1.
  Eigen::VectorXd coordinates() const { return points.col(0); }

  bool operator==(const Grid& other) const {
    return points == other.points && weights == other.weights;
  }
};

/// m equally spaced points on [a, b], each with weight 1/m.
Grid uniform_grid(Index m, double a = 0.0, double b = 1.0);

/// Equal weights on arbitrary points (validated).
Grid equal_weight_grid(Eigen::MatrixXd points);

/// Trapezoidal weights for a non-uniform 1-D grid, normalized to sum to one.
Grid trapezoid_grid(const Eigen::VectorXd& t);

/// Checks the Grid invariants; throws InvalidGrid.
void check_grid(const Grid& grid);

/// Compensated sum of the weights.
double weight_sum(const Grid& grid);

/// Immutable n x m x p tensor of curve evaluations bound to a grid.
/// Stored as p component matrices, each n x m (curve x grid point).
class FunctionalSample {
 public:
  Index curves() const { return components_.front().rows(); }
  Index points() const { return components_.front().cols(); }
  Index dims() const { return static_cast<Index>(components_.size()); }

  double operator()(Index curve, Index point, Index dim) const {
    return components_[static_cast<std::size_t>(dim)](curve, point);
  }

  const Eigen::MatrixXd& component(Index dim) const { return components_[static_cast<std::size_t>(dim)]; }
  const std::vector<Eigen::MatrixXd>& components() const { return components_; }
  const Grid& grid() const { return grid_; }
  const std::vector<std::string>& ids() const { return ids_; }

  /// n x p matrix of all curves at grid index `point`.
  Eigen::MatrixXd cross_section(Index point) const;

  /// Sample restricted to the listed response dimensions.
  FunctionalSample select_dims(const std::vector<Index>& dims) const;

  bool operator==(const FunctionalSample& other) const;

 private:
  FunctionalSample() = default;
  friend FunctionalSample validate(std::vector<Eigen::MatrixXd>, Grid, std::vector<std::string>);

  std::vector<Eigen::MatrixXd> components_;
  Grid grid_;
  std::vector<std::string> ids_;
};

/// The only way to obtain a FunctionalSample. Throws ShapeMismatch,
/// NonFiniteValue (index = curve) or DuplicateId.
FunctionalSample validate(std::vector<Eigen::MatrixXd> components, Grid grid, std::vector<std::string> ids);

/// Labels "1".."n".
std::vector<std::string> default_ids(Index n);

struct LabeledSample {
  FunctionalSample sample;
  std::vector<bool> truth;  // true = drawn from the contamination model
};

}  // namespace msplot
