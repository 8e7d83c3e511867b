#include "msplot/mcd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <boost/math/distributions/chi_squared.hpp>

#include "msplot/error.hpp"
#include "msplot/rng.hpp"

namespace msplot {

namespace {

constexpr double kSingularRatio = 1e-12;

struct Factored {
  SubsetMoments moments;
  Eigen::LLT<Eigen::MatrixXd> llt;
  double det = 0.0;
};

bool is_singular(const Eigen::MatrixXd& cov) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return !(top > 0) || es.eigenvalues().minCoeff() <= kSingularRatio * top;
}

// nullopt when the subset covariance is singular
std::optional<Factored> factor(const Eigen::Ref<const Eigen::MatrixXd>& points, const std::vector<Index>& subset) {
  Factored f;
  f.moments = subset_moments(points, subset);
  if (is_singular(f.moments.cov)) return std::nullopt;
  f.llt.compute(f.moments.cov);
  if (f.llt.info() != Eigen::Success) return std::nullopt;
  const Eigen::VectorXd diag = f.llt.matrixLLT().diagonal();
  f.det = diag.array().square().prod();
  return f;
}

Eigen::VectorXd squared_distances(const Eigen::Ref<const Eigen::MatrixXd>& points, const Factored& f) {
  const Eigen::MatrixXd centered = (points.rowwise() - f.moments.mean.transpose()).transpose();
  return f.llt.matrixL().solve(centered).colwise().squaredNorm().transpose();
}

std::vector<Index> closest(const Eigen::VectorXd& dist, Index h) {
  std::vector<Index> order(static_cast<std::size_t>(dist.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::partial_sort(order.begin(), order.begin() + h, order.end(), [&](Index a, Index b) {
    return dist(a) < dist(b) || (dist(a) == dist(b) && a < b);
  });
  order.resize(static_cast<std::size_t>(h));
  std::sort(order.begin(), order.end());
  return order;
}

struct Candidate {
  std::vector<Index> subset;
  double det = 0.0;
};

// C-steps from `subset` until it stops changing or `limit` steps are taken.
std::optional<Candidate> concentrate(const Eigen::Ref<const Eigen::MatrixXd>& points, std::vector<Index> subset,
                                     Index limit, const McdOptions& options) {
  auto current = factor(points, subset);
  if (!current) return std::nullopt;
  const Index h = static_cast<Index>(subset.size());
  for (Index step = 0; step < limit; ++step) {
    auto next_subset = closest(squared_distances(points, *current), h);
    if (next_subset == subset) break;
    auto next = factor(points, next_subset);
    if (!next) {
      // h points on a hyperplane: exact fit, cannot be improved on
      if (options.on_c_step) options.on_c_step(current->det, 0.0);
      return Candidate{std::move(next_subset), 0.0};
    }
    if (options.on_c_step) options.on_c_step(current->det, next->det);
    subset = std::move(next_subset);
    current = std::move(next);
  }
  return Candidate{std::move(subset), current->det};
}

}  // namespace

Index default_subset_size(Index n, Index d) { return (n + d + 1) / 2; }

double mcd_consistency_factor(Index d, Index n, Index h) {
  if (h >= n) return 1.0;
  const double alpha = static_cast<double>(h) / static_cast<double>(n);
  const boost::math::chi_squared chi_d(static_cast<double>(d));
  const boost::math::chi_squared chi_d2(static_cast<double>(d + 2));
  const double q = boost::math::quantile(chi_d, alpha);
  return alpha / boost::math::cdf(chi_d2, q);
}

SubsetMoments subset_moments(const Eigen::Ref<const Eigen::MatrixXd>& points, const std::vector<Index>& subset) {
  const Index d = points.cols();
  const auto h = static_cast<Index>(subset.size());
  Eigen::MatrixXd rows(h, d);
  for (Index r = 0; r < h; ++r) rows.row(r) = points.row(subset[static_cast<std::size_t>(r)]);
  SubsetMoments mm;
  mm.mean = rows.colwise().mean().transpose();
  const Eigen::MatrixXd centered = rows.rowwise() - mm.mean.transpose();
  mm.cov = (centered.transpose() * centered) / static_cast<double>(std::max<Index>(h - 1, 1));
  return mm;
}

double subset_determinant(const Eigen::Ref<const Eigen::MatrixXd>& points, const std::vector<Index>& subset) {
  const auto f = factor(points, subset);
  if (!f) throw Error(Errc::SingularScatter, "subset covariance is singular");
  return f->det;
}

std::vector<Index> c_step(const Eigen::Ref<const Eigen::MatrixXd>& points, const std::vector<Index>& subset) {
  const auto f = factor(points, subset);
  if (!f) throw Error(Errc::SingularScatter, "subset covariance is singular");
  return closest(squared_distances(points, *f), static_cast<Index>(subset.size()));
}

RobustFit fast_mcd(const Eigen::Ref<const Eigen::MatrixXd>& points, const McdOptions& options) {
  const Index n = points.rows();
  const Index d = points.cols();
  if (n <= d + 1)
    throw Error(Errc::InsufficientData,
                "MCD needs more than d + 1 = " + std::to_string(d + 1) + " points, got " + std::to_string(n));
  const Index h = options.h > 0 ? options.h : default_subset_size(n, d);
  if (h < d + 1 || h > n) throw Error(Errc::DomainError, "subset size must satisfy d + 1 <= h <= n");

  std::vector<Candidate> candidates;
  candidates.reserve(static_cast<std::size_t>(options.starts));
  for (Index s = 0; s < options.starts; ++s) {
    Rng rng(substream_seed(options.seed, static_cast<std::uint64_t>(s)));
    std::vector<Index> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), Index{0});
    std::shuffle(pool.begin(), pool.end(), rng);

    // elemental start, grown until nonsingular
    Index size = d + 1;
    std::optional<Factored> elemental;
    for (; size <= n; ++size) {
      std::vector<Index> start(pool.begin(), pool.begin() + size);
      std::sort(start.begin(), start.end());
      elemental = factor(points, start);
      if (elemental) break;
    }
    if (!elemental) continue;

    auto inflated = closest(squared_distances(points, *elemental), h);
    if (auto c = concentrate(points, std::move(inflated), 2, options)) candidates.push_back(std::move(*c));
  }
  if (candidates.empty()) throw Error(Errc::SingularScatter, "every MCD candidate subset is singular");

  // stable: equal determinants keep start order
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.det < b.det; });
  std::vector<Candidate> best;
  for (auto& c : candidates) {
    if (static_cast<Index>(best.size()) >= options.keep) break;
    const bool dup = std::any_of(best.begin(), best.end(), [&](const Candidate& b) { return b.subset == c.subset; });
    if (!dup) best.push_back(std::move(c));
  }

  std::optional<Candidate> winner;
  for (auto& c : best) {
    auto refined = concentrate(points, std::move(c.subset), options.max_steps, options);
    if (refined && (!winner || refined->det < winner->det)) winner = std::move(refined);
  }
  if (!winner || !(winner->det > 0))
    throw Error(Errc::SingularScatter, "the minimum-determinant subset has a singular covariance");

  RobustFit fit;
  const auto mm = subset_moments(points, winner->subset);
  fit.location = mm.mean;
  fit.consistency = mcd_consistency_factor(d, n, h);
  fit.scatter = mm.cov * (static_cast<double>(h - 1) / static_cast<double>(h)) * fit.consistency;
  fit.subset = std::move(winner->subset);
  fit.det = winner->det;
  fit.h = h;
  fit.n = n;
  fit.d = d;
  return fit;
}

}  // namespace msplot
