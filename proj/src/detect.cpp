#include "msplot/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Cholesky>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>

#include "msplot/error.hpp"
#include "msplot/rng.hpp"
#include "msplot/robust_stats.hpp"

namespace msplot {

namespace {

Eigen::LLT<Eigen::MatrixXd> factor_scatter(const RobustFit& fit) {
  Eigen::LLT<Eigen::MatrixXd> llt(fit.scatter);
  if (llt.info() != Eigen::Success || !(llt.matrixLLT().diagonal().minCoeff() > 0))
    throw Error(Errc::SingularScatter, "MCD scatter is not positive definite");
  return llt;
}

double chisq_cdf(double x, double df) { return boost::math::cdf(boost::math::chi_squared(df), x); }

}  // namespace

Eigen::VectorXd srmd(const Eigen::Ref<const Eigen::MatrixXd>& points, const RobustFit& fit) {
  if (points.cols() != fit.location.size()) throw Error(Errc::ShapeMismatch, "point dimension does not match the fit");
  const auto llt = factor_scatter(fit);
  const Eigen::MatrixXd centered = (points.rowwise() - fit.location.transpose()).transpose();
  return llt.matrixL().solve(centered).colwise().squaredNorm().transpose();
}

WishartDf mcd_wishart_df(Index d_, Index n_, Index h_) {
  WishartDf out;
  const double d = static_cast<double>(d_);
  const double n = static_cast<double>(n_);
  if (h_ >= n_) {
    out.consistency = 1.0;
    out.asymptotic = out.predicted = n - 1.0;
    return out;
  }
  const double trimmed = (n - static_cast<double>(h_)) / n;
  const double kept = 1.0 - trimmed;
  const double q = boost::math::quantile(boost::math::chi_squared(d), kept);
  const double c = kept / chisq_cdf(q, d + 2);
  const double c2 = -0.5 * chisq_cdf(q, d + 2);
  const double c3 = -0.5 * chisq_cdf(q, d + 4);
  const double c4 = 3.0 * c3;
  const double b1 = c * (c3 - c4) / kept;
  const double b2 = 0.5 + c / kept * (c3 - q / d * (c2 + kept / 2.0));
  const double v1 = kept * b1 * b1 * (trimmed * std::pow(c * q / d - 1.0, 2) - 1.0) -
                    2.0 * c3 * c * c * (3.0 * std::pow(b1 - d * b2, 2) + (d + 2.0) * b2 * (2.0 * b1 - d * b2));
  const double v2 = n * std::pow(b1 * (b1 - d * b2) * kept, 2) * c * c;
  const double v = v1 / v2;
  out.consistency = c;
  out.asymptotic = 2.0 / (c * c * v);
  out.predicted = out.asymptotic * std::exp(0.725 - 0.00663 * d - 0.0780 * std::log(n));
  return out;
}

double scaled_f_cutoff(Index d_, double m, double q) {
  const double d = static_cast<double>(d_);
  const double denom_df = m - d + 1.0;
  if (!(denom_df > 0)) throw Error(Errc::DomainError, "Wishart degrees of freedom must exceed d - 1");
  const boost::math::fisher_f f(d, denom_df);
  return d * m / denom_df * boost::math::quantile(f, q);
}

double calibrate_wishart_df(Index d, Index n, Index h, double q, const CutoffOptions& options) {
  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(options.calibration_reps * n));
  std::normal_distribution<double> normal;
  for (Index r = 0; r < options.calibration_reps; ++r) {
    Rng rng(substream_seed(options.calibration_seed, static_cast<std::uint64_t>(r)));
    Eigen::MatrixXd x(n, d);
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < d; ++k) x(i, k) = normal(rng);
    McdOptions mcd;
    mcd.h = h;
    mcd.starts = options.calibration_starts;
    mcd.seed = substream_seed(options.calibration_seed ^ 0xa5a5a5a5ULL, static_cast<std::uint64_t>(r));
    const auto dist = srmd(x, fast_mcd(x, mcd));
    pooled.insert(pooled.end(), dist.data(), dist.data() + dist.size());
  }
  std::sort(pooled.begin(), pooled.end());
  const double target = 1.0 - q;
  auto exceed = [&](double m) {
    const double cut = scaled_f_cutoff(d, m, q);
    const auto above = pooled.end() - std::upper_bound(pooled.begin(), pooled.end(), cut);
    return static_cast<double>(above) / static_cast<double>(pooled.size());
  };
  // exceedance grows with m; bisect in log(m - d + 1)
  double lo = std::log(1e-3), hi = std::log(1e7);
  const double offset = static_cast<double>(d) - 1.0;
  if (exceed(offset + std::exp(lo)) >= target) return offset + std::exp(lo);
  if (exceed(offset + std::exp(hi)) <= target) return offset + std::exp(hi);
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (exceed(offset + std::exp(mid)) > target)
      hi = mid;
    else
      lo = mid;
  }
  return offset + std::exp(0.5 * (lo + hi));
}

double cutoff(Index d, Index n, Index h, double q, const CutoffOptions& options) {
  if (!(q > 0.0 && q < 1.0)) throw Error(Errc::DomainError, "quantile must lie in (0, 1)");
  switch (options.method) {
    case CutoffMethod::chi_square:
      return boost::math::quantile(boost::math::chi_squared(static_cast<double>(d)), q);
    case CutoffMethod::f_calibrated:
      return scaled_f_cutoff(d, calibrate_wishart_df(d, n, h, q, options), q);
    case CutoffMethod::f_predicted:
      break;
  }
  return scaled_f_cutoff(d, mcd_wishart_df(d, n, h).predicted, q);
}

Boundary ellipsoid_boundary(const RobustFit& fit, double threshold, Index resolution) {
  const Index d = fit.location.size();
  if (d != 2 && d != 3)
    throw Error(Errc::NoBoundaryGeometry,
                "boundary geometry exists only for 2 or 3 coordinates; use norm-mode coordinates instead");
  if (!(threshold > 0)) throw Error(Errc::DomainError, "threshold must be positive");
  const auto llt = factor_scatter(fit);
  const Eigen::MatrixXd shape = std::sqrt(threshold) * Eigen::MatrixXd(llt.matrixL());
  constexpr double pi = std::numbers::pi;

  Boundary b;
  b.dim = d;
  if (d == 2) {
    const Index count = std::max<Index>(resolution, 3);
    b.vertices.resize(count, 2);
    for (Index k = 0; k < count; ++k) {
      const double a = 2.0 * pi * static_cast<double>(k) / static_cast<double>(count);
      const Eigen::Vector2d z(std::cos(a), std::sin(a));
      b.vertices.row(k) = (fit.location + shape * z).transpose();
    }
    return b;
  }

  const Index rings = std::max<Index>(resolution / 2, 2);
  const Index sectors = std::max<Index>(resolution, 3);
  b.vertices.resize(rings * sectors + 2, 3);
  auto put = [&](Index row, const Eigen::Vector3d& z) { b.vertices.row(row) = (fit.location + shape * z).transpose(); };
  put(0, Eigen::Vector3d(0, 0, 1));
  for (Index r = 0; r < rings; ++r) {
    const double polar = pi * static_cast<double>(r + 1) / static_cast<double>(rings + 1);
    for (Index s = 0; s < sectors; ++s) {
      const double az = 2.0 * pi * static_cast<double>(s) / static_cast<double>(sectors);
      put(1 + r * sectors + s,
          Eigen::Vector3d(std::sin(polar) * std::cos(az), std::sin(polar) * std::sin(az), std::cos(polar)));
    }
  }
  const Index south = rings * sectors + 1;
  put(south, Eigen::Vector3d(0, 0, -1));
  auto at = [&](Index r, Index s) { return 1 + r * sectors + (s % sectors); };
  for (Index s = 0; s < sectors; ++s) b.triangles.push_back({0, at(0, s), at(0, s + 1)});
  for (Index r = 0; r + 1 < rings; ++r)
    for (Index s = 0; s < sectors; ++s) {
      b.triangles.push_back({at(r, s), at(r + 1, s), at(r + 1, s + 1)});
      b.triangles.push_back({at(r, s), at(r + 1, s + 1), at(r, s + 1)});
    }
  for (Index s = 0; s < sectors; ++s) b.triangles.push_back({at(rings - 1, s), south, at(rings - 1, s + 1)});
  return b;
}

Index DetectionResult::flagged_count() const {
  return static_cast<Index>(std::count(flags.begin(), flags.end(), true));
}

DetectionResult boxplot_rule(const Eigen::Ref<const Eigen::MatrixXd>& coords, double inflation) {
  if (!(inflation >= 0)) throw Error(Errc::DomainError, "inflation factor must be nonnegative");
  DetectionResult r;
  r.method = DetectMethod::boxplot;
  const Index n = coords.rows();
  const Index d = coords.cols();
  r.lower.resize(d);
  r.upper.resize(d);
  r.flags.assign(static_cast<std::size_t>(n), false);
  for (Index k = 0; k < d; ++k) {
    const double q1 = quantile(coords.col(k), 0.25);
    const double q3 = quantile(coords.col(k), 0.75);
    const double iqr = q3 - q1;
    r.lower(k) = std::isinf(inflation) ? -std::numeric_limits<double>::infinity() : q1 - inflation * iqr;
    r.upper(k) = std::isinf(inflation) ? std::numeric_limits<double>::infinity() : q3 + inflation * iqr;
    for (Index i = 0; i < n; ++i)
      if (coords(i, k) < r.lower(k) || coords(i, k) > r.upper(k)) r.flags[static_cast<std::size_t>(i)] = true;
  }
  return r;
}

DetectionResult detect_points(const Eigen::Ref<const Eigen::MatrixXd>& coords, const DetectorConfig& config) {
  if (config.method == DetectMethod::boxplot) return boxplot_rule(coords, config.inflation);
  if (!(config.quantile > 0.0 && config.quantile < 1.0))
    throw Error(Errc::DomainError, "quantile must lie in (0, 1)");

  McdOptions mcd;
  mcd.starts = config.mcd_starts;
  mcd.seed = config.mcd_seed;
  DetectionResult r;
  r.method = DetectMethod::srmd_f;
  r.fit = fast_mcd(coords, mcd);
  r.srmd = srmd(coords, *r.fit);
  r.cutoff = cutoff(r.fit->d, r.fit->n, r.fit->h, config.quantile, config.cutoff);
  r.flags.resize(static_cast<std::size_t>(coords.rows()));
  for (Index i = 0; i < coords.rows(); ++i) r.flags[static_cast<std::size_t>(i)] = r.srmd(i) > r.cutoff;
  if (r.fit->d == 2 || r.fit->d == 3) r.boundary = ellipsoid_boundary(*r.fit, r.cutoff, config.boundary_resolution);
  return r;
}

Detection detect_outliers(const FunctionalSample& sample, const DetectorConfig& config) {
  const Index n = sample.curves();
  const Index p = sample.dims();
  if (n <= p + 2)
    throw Error(Errc::InsufficientData, "detection needs more than p + 2 = " + std::to_string(p + 2) + " curves");
  Detection out;
  if (p == 1)
    out.summary = summarize(sample, DirectionSet{});
  else
    out.summary = summarize(sample, sample_directions(config.directions, p, config.direction_seed));
  out.result = detect_points(ms_coordinates(out.summary, MsMode::full), config);
  return out;
}

}  // namespace msplot
