#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "msplot/functional.hpp"
#include "msplot/grid.hpp"
#include "msplot/mcd.hpp"

namespace msplot {

/// Squared robust Mahalanobis distance of every row to the fit.
/// Throws SingularScatter when the scatter is not positive definite.
Eigen::VectorXd srmd(const Eigen::Ref<const Eigen::MatrixXd>& points, const RobustFit& fit);

/// Degrees of freedom of the Wishart approximation to the MCD scatter
/// (Croux-Haesbroeck asymptotics with the Hardin-Rousseeuw small-sample
/// prediction), plus the consistency factor they are built on.
struct WishartDf {
  double consistency = 1.0;
  double asymptotic = 0.0;
  double predicted = 0.0;
};
WishartDf mcd_wishart_df(Index d, Index n, Index h);

enum class CutoffMethod {
  f_predicted,   // scaled F with predicted degrees of freedom
  f_calibrated,  // scaled F with degrees of freedom fitted to simulated Gaussian SRMD tails
  chi_square,    // chi-square_d quantile
};

struct CutoffOptions {
  CutoffMethod method = CutoffMethod::f_predicted;
  Index calibration_reps = 100;
  std::uint64_t calibration_seed = 20180101;
  Index calibration_starts = 100;
};

/// d m / (m - d + 1) * F_{d, m-d+1}^{-1}(q).
double scaled_f_cutoff(Index d, double m, double q);

/// Degrees of freedom m whose scaled F cutoff is exceeded by a fraction 1 - q
/// of SRMD values from seeded Gaussian samples of size n.
double calibrate_wishart_df(Index d, Index n, Index h, double q, const CutoffOptions& options);

/// SRMD threshold at quantile q in (0, 1); throws DomainError otherwise.
double cutoff(Index d, Index n, Index h, double q, const CutoffOptions& options = {});

/// Points y with (y - location)' scatter^{-1} (y - location) = threshold:
/// a closed polyline (d = 2) or a latitude-longitude triangle mesh (d = 3).
struct Boundary {
  Index dim = 0;
  Eigen::MatrixXd vertices;  // one vertex per row
  std::vector<std::array<Index, 3>> triangles;
};

/// Throws NoBoundaryGeometry for d outside {2, 3}.
Boundary ellipsoid_boundary(const RobustFit& fit, double threshold, Index resolution = 128);

enum class DetectMethod { srmd_f, boxplot };

struct DetectionResult {
  DetectMethod method = DetectMethod::srmd_f;
  std::vector<bool> flags;

  // srmd_f
  Eigen::VectorXd srmd;
  double cutoff = 0.0;
  std::optional<RobustFit> fit;
  std::optional<Boundary> boundary;

  // boxplot: per-coordinate fences
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  Index flagged_count() const;
};

struct DetectorConfig {
  DetectMethod method = DetectMethod::srmd_f;
  double quantile = 0.993;
  double inflation = 1.5;
  Index directions = kDefaultDirections;
  std::uint64_t direction_seed = kDefaultDirectionSeed;
  Index mcd_starts = 500;
  std::uint64_t mcd_seed = 0;
  CutoffOptions cutoff;
  Index boundary_resolution = 128;
};

/// Rule applied to already computed MS coordinates (n x d).
DetectionResult detect_points(const Eigen::Ref<const Eigen::MatrixXd>& coords, const DetectorConfig& config);

/// Component-wise boxplot rule: flag a row with any coordinate outside
/// [Q1 - k IQR, Q3 + k IQR] of its column.
DetectionResult boxplot_rule(const Eigen::Ref<const Eigen::MatrixXd>& coords, double inflation);

struct Detection {
  OutlyingnessSummary summary;
  DetectionResult result;
};

/// Pointwise field, summary, full-mode MS coordinates, then the configured
/// rule. Throws InsufficientData when n <= p + 2.
Detection detect_outliers(const FunctionalSample& sample, const DetectorConfig& config = {});

}  // namespace msplot
