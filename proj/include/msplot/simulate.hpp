#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "msplot/grid.hpp"
#include "msplot/rng.hpp"

namespace msplot {

/// Symmetric matrix K(s_i, s_j) over the points of `t`.
Eigen::MatrixXd covariance_matrix(const Eigen::VectorXd& t, const std::function<double(double, double)>& kernel);

/// sigma2 * exp(-rate * |s - t|^power)
Eigen::MatrixXd powered_exponential_covariance(const Eigen::VectorXd& t, double sigma2, double rate,
                                               double power = 1.0);

struct MaternParams {
  double nu = 0.5;
  double alpha = 1.0;
  double sigma_i = 1.0;
  double sigma_j = 1.0;
  double rho = 1.0;
};

/// Block covariance of a bivariate process with Matern (cross-)covariances
/// C_ij(s, t) = rho_ij sigma_i sigma_j M(|s - t|; nu_ij, alpha_ij).
/// Ordering: all grid points of component 1, then component 2.
Eigen::MatrixXd bivariate_matern_covariance(const Eigen::VectorXd& t, const MaternParams& c11, const MaternParams& c22,
                                            const MaternParams& c12);

/// Zero-or-given-mean Gaussian vector with a fixed covariance, factored once.
/// Factorization adds 0, 1e-12, 1e-10, 1e-8 times the mean diagonal until it
/// succeeds; NotPositiveDefinite after that.
class GaussianProcess {
 public:
  GaussianProcess(const Eigen::MatrixXd& cov, Eigen::VectorXd mean);

  /// count x dim draws
  Eigen::MatrixXd draw(Index count, Rng& rng) const;
  Eigen::VectorXd draw_one(Rng& rng) const;

  double jitter() const { return jitter_; }
  Index dim() const { return mean_.size(); }

 private:
  Eigen::MatrixXd lower_;
  Eigen::VectorXd mean_;
  double jitter_ = 0.0;
};

Eigen::MatrixXd gp_sample(const Eigen::MatrixXd& cov, const Eigen::VectorXd& mean, Index count, std::uint64_t seed);

struct ModelSpec {
  int model_id = 1;
  Index n = 100;
  double c = 0.1;
  Index m = 50;
  std::uint64_t seed = 0;
};

/// round(c * n)
Index contaminated_count(const ModelSpec& spec);

/// Curves from simulation models 1-5 on uniform_grid(m, [0, 1]).
/// Throws UnknownModel for ids outside 1..5.
LabeledSample model_sample(const ModelSpec& spec);

}  // namespace msplot
