#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "msplot/grid.hpp"

namespace msplot {

/// Minimum covariance determinant fit.
///
/// `det` is the determinant of the ordinary (h - 1 divisor) covariance of the
/// selected subset. `scatter` is the maximum-likelihood subset covariance
/// multiplied by `consistency`, so that squared distances are on the scale of
/// a Gaussian chi-square / F law.
struct RobustFit {
  Eigen::VectorXd location;
  Eigen::MatrixXd scatter;
  std::vector<Index> subset;  // ascending
  double det = 0.0;
  double consistency = 1.0;
  Index h = 0;
  Index n = 0;
  Index d = 0;
};

/// floor((n + d + 1) / 2)
Index default_subset_size(Index n, Index d);

/// Gaussian consistency factor (h/n) / P(chi2_{d+2} <= chi2_{d}^{-1}(h/n)).
double mcd_consistency_factor(Index d, Index n, Index h);

/// Mean and h-1 divisor covariance of the rows listed in `subset`.
struct SubsetMoments {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};
SubsetMoments subset_moments(const Eigen::Ref<const Eigen::MatrixXd>& points, const std::vector<Index>& subset);

/// Determinant of the subset covariance; throws SingularScatter when it is
/// numerically singular.
double subset_determinant(const Eigen::Ref<const Eigen::MatrixXd>& points, const std::vector<Index>& subset);

/// One concentration step: the h = |subset| points closest, in Mahalanobis
/// distance, to the subset's own mean and covariance. Result is ascending;
/// ties in distance go to the lower index. Throws SingularScatter.
std::vector<Index> c_step(const Eigen::Ref<const Eigen::MatrixXd>& points, const std::vector<Index>& subset);

struct McdOptions {
  Index h = 0;  // 0 selects default_subset_size
  Index starts = 500;
  Index keep = 10;
  Index max_steps = 100;
  std::uint64_t seed = 0;
  /// Called with (det before, det after) for every C-step taken.
  std::function<void(double, double)> on_c_step;
};

/// FastMCD: random elemental starts inflated to h points, two C-steps each,
/// the best `keep` refined to convergence. Throws InsufficientData when
/// n <= d + 1 and SingularScatter when every candidate is singular.
RobustFit fast_mcd(const Eigen::Ref<const Eigen::MatrixXd>& points, const McdOptions& options = {});

}  // namespace msplot
