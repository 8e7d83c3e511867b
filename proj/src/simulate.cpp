#include "msplot/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "msplot/error.hpp"
#include "msplot/special.hpp"

namespace msplot {

Eigen::MatrixXd covariance_matrix(const Eigen::VectorXd& t, const std::function<double(double, double)>& kernel) {
  const Index m = t.size();
  Eigen::MatrixXd cov(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = i; j < m; ++j) cov(i, j) = cov(j, i) = kernel(t(i), t(j));
  return cov;
}

Eigen::MatrixXd powered_exponential_covariance(const Eigen::VectorXd& t, double sigma2, double rate, double power) {
  return covariance_matrix(t, [=](double s, double u) { return sigma2 * std::exp(-rate * std::pow(std::abs(s - u), power)); });
}

Eigen::MatrixXd bivariate_matern_covariance(const Eigen::VectorXd& t, const MaternParams& c11, const MaternParams& c22,
                                            const MaternParams& c12) {
  const Index m = t.size();
  auto block = [&](const MaternParams& p) {
    return covariance_matrix(
        t, [&](double s, double u) { return p.rho * p.sigma_i * p.sigma_j * matern(s - u, p.nu, p.alpha); });
  };
  Eigen::MatrixXd cov(2 * m, 2 * m);
  cov.topLeftCorner(m, m) = block(c11);
  cov.bottomRightCorner(m, m) = block(c22);
  const Eigen::MatrixXd cross = block(c12);
  cov.topRightCorner(m, m) = cross;
  cov.bottomLeftCorner(m, m) = cross.transpose();
  return cov;
}

GaussianProcess::GaussianProcess(const Eigen::MatrixXd& cov, Eigen::VectorXd mean) : mean_(std::move(mean)) {
  if (cov.rows() != cov.cols() || cov.rows() != mean_.size())
    throw Error(Errc::ShapeMismatch, "covariance and mean sizes disagree");
  const double scale = cov.diagonal().mean();
  for (double rel : {0.0, 1e-12, 1e-10, 1e-8}) {
    Eigen::MatrixXd a = cov;
    a.diagonal().array() += rel * scale;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) {
      lower_ = llt.matrixL();
      jitter_ = rel * scale;
      return;
    }
  }
  throw Error(Errc::NotPositiveDefinite, "covariance is not positive definite even with jitter");
}

Eigen::VectorXd GaussianProcess::draw_one(Rng& rng) const {
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(dim());
  for (Index k = 0; k < dim(); ++k) z(k) = normal(rng);
  return mean_ + lower_ * z;
}

Eigen::MatrixXd GaussianProcess::draw(Index count, Rng& rng) const {
  Eigen::MatrixXd out(count, dim());
  for (Index r = 0; r < count; ++r) out.row(r) = draw_one(rng).transpose();
  return out;
}

Eigen::MatrixXd gp_sample(const Eigen::MatrixXd& cov, const Eigen::VectorXd& mean, Index count, std::uint64_t seed) {
  Rng rng(seed);
  return GaussianProcess(cov, mean).draw(count, rng);
}

Index contaminated_count(const ModelSpec& spec) {
  return static_cast<Index>(std::llround(spec.c * static_cast<double>(spec.n)));
}

namespace {

constexpr double kPi = std::numbers::pi;

void check_spec(const ModelSpec& spec) {
  if (spec.model_id < 1 || spec.model_id > 5)
    throw Error(Errc::UnknownModel, "model id must be 1..5, got " + std::to_string(spec.model_id));
  if (spec.n < 1) throw Error(Errc::DomainError, "sample size must be positive");
  if (!(spec.c >= 0.0 && spec.c < 1.0)) throw Error(Errc::DomainError, "contamination level must lie in [0, 1)");
}

}  // namespace

LabeledSample model_sample(const ModelSpec& spec) {
  check_spec(spec);
  const Grid grid = uniform_grid(spec.m, 0.0, 1.0);
  const Eigen::VectorXd t = grid.coordinates();
  const Index m = spec.m;
  const Index n = spec.n;
  Rng rng(spec.seed);

  std::vector<bool> truth(static_cast<std::size_t>(n), false);
  {
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (Index k = 0; k < contaminated_count(spec); ++k) truth[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = true;
  }

  std::uniform_int_distribution<int> coin(0, 1);
  auto sign = [&] { return coin(rng) == 0 ? -1.0 : 1.0; };
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(m);
  std::vector<Eigen::MatrixXd> comps;

  if (spec.model_id == 5) {
    MaternParams c11{1.2, 0.2, 0.1, 0.1, 1.0};
    MaternParams c22{0.6, 0.1, 0.1, 0.1, 1.0};
    MaternParams c12{1.0, 0.16, 0.1, 0.1, 0.1};
    const GaussianProcess noise(bivariate_matern_covariance(t, c11, c22, c12), Eigen::VectorXd::Zero(2 * m));
    std::uniform_real_distribution<double> level(-1.1, 1.1);
    comps.assign(2, Eigen::MatrixXd(n, m));
    for (Index i = 0; i < n; ++i) {
      const Eigen::VectorXd e = noise.draw_one(rng);
      Eigen::VectorXd x1 = e.head(m), x2 = e.tail(m);
      if (truth[static_cast<std::size_t>(i)]) {
        x1.array() += (4.0 * kPi * t.array()).sin();
        x2.array() += (8.0 * kPi * t.array()).cos();
      } else {
        x1.array() += level(rng);
        x2.array() += level(rng);
      }
      comps[0].row(i) = x1.transpose();
      comps[1].row(i) = x2.transpose();
    }
    return {validate(std::move(comps), grid, default_ids(n)), std::move(truth)};
  }

  comps.assign(1, Eigen::MatrixXd(n, m));
  Eigen::MatrixXd& x = comps[0];
  const Eigen::VectorXd trend = 4.0 * t;

  switch (spec.model_id) {
    case 1:
    case 2: {
      const GaussianProcess noise(powered_exponential_covariance(t, 1.0, 1.0), zero);
      std::uniform_real_distribution<double> start(0.1, 0.9);
      for (Index i = 0; i < n; ++i) {
        Eigen::VectorXd row = trend + noise.draw_one(rng);
        if (truth[static_cast<std::size_t>(i)]) {
          const double u = sign();
          if (spec.model_id == 1) {
            row.array() += 8.0 * u;
          } else {
            const double from = start(rng);
            for (Index j = 0; j < m; ++j)
              if (t(j) >= from && t(j) <= from + 0.05) row(j) += 8.0 * u;
          }
        }
        x.row(i) = row.transpose();
      }
      break;
    }
    case 3: {
      const GaussianProcess noise(powered_exponential_covariance(t, 0.3, 1.0 / 0.3), zero);
      const Eigen::VectorXd main = 30.0 * t.array() * (1.0 - t.array()).pow(1.5);
      const Eigen::VectorXd reversed = 30.0 * (1.0 - t.array()) * t.array().pow(1.5);
      for (Index i = 0; i < n; ++i) {
        const Eigen::VectorXd e = noise.draw_one(rng);
        x.row(i) = ((truth[static_cast<std::size_t>(i)] ? reversed : main) + e).transpose();
      }
      break;
    }
    case 4: {
      const GaussianProcess main(powered_exponential_covariance(t, 1.0, 1.0), zero);
      const GaussianProcess other(powered_exponential_covariance(t, 5.0, 2.0, 0.5), zero);
      for (Index i = 0; i < n; ++i) {
        const auto& gp = truth[static_cast<std::size_t>(i)] ? other : main;
        x.row(i) = (trend + gp.draw_one(rng)).transpose();
      }
      break;
    }
    default:
      break;
  }
  return {validate(std::move(comps), grid, default_ids(n)), std::move(truth)};
}

}  // namespace msplot
