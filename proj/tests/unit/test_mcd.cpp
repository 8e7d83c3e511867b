#include <cmath>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>
#include <doctest.h>

#include "../oracles.hpp"
#include "msplot/error.hpp"
#include "msplot/mcd.hpp"
#include "msplot/rng.hpp"

using namespace msplot;

namespace {

Eigen::MatrixXd gaussian_points(Index n, Index d, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> z;
  Eigen::MatrixXd x(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < d; ++k) x(i, k) = z(rng);
  return x;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an msplot::Error");
  return Errc::DomainError;
}

}  // namespace

TEST_CASE("subset size and consistency factor") {
  CHECK(default_subset_size(100, 2) == 51);
  CHECK(default_subset_size(10, 2) == 6);
  CHECK(default_subset_size(5, 2) == 4);
  // with every point kept the factor is one
  CHECK(mcd_consistency_factor(2, 100, 100) == doctest::Approx(1.0).epsilon(1e-12));
  const double a = 0.5;
  const boost::math::chi_squared chi_d(3), chi_d2(5);
  const double expected = a / boost::math::cdf(chi_d2, boost::math::quantile(chi_d, a));
  CHECK(mcd_consistency_factor(3, 200, 100) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("exact five-point example") {
  Eigen::MatrixXd x(5, 2);
  x << 0, 0, 1, 0, 0, 1, 1, 1, 10, 10;
  const auto best = oracle::exhaustive_mcd(x, 4);
  CHECK(best.subset == std::vector<int>{0, 1, 2, 3});
  CHECK(best.det == doctest::Approx(1.0 / 9).epsilon(1e-12));

  McdOptions opt;
  opt.h = 4;
  opt.seed = 1;
  const auto fit = fast_mcd(x, opt);
  CHECK(fit.subset == std::vector<Index>{0, 1, 2, 3});
  CHECK(fit.det == doctest::Approx(1.0 / 9).epsilon(1e-12));
  CHECK(fit.location(0) == doctest::Approx(0.5));
  CHECK(fit.location(1) == doctest::Approx(0.5));
  CHECK(fit.h == 4);
  CHECK(fit.n == 5);
  CHECK(fit.d == 2);
}

TEST_CASE("c-step never increases the determinant") {
  const Eigen::MatrixXd x = gaussian_points(40, 2, 3);
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Index> all(40);
    std::iota(all.begin(), all.end(), Index{0});
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<Index> subset(all.begin(), all.begin() + 21);
    std::sort(subset.begin(), subset.end());
    const double before = subset_determinant(x, subset);
    const auto next = c_step(x, subset);
    CHECK(next.size() == 21);
    CHECK(std::is_sorted(next.begin(), next.end()));
    CHECK(subset_determinant(x, next) <= before * (1 + 1e-12));
  }
}

TEST_CASE("a converged subset is a fixed point") {
  const Eigen::MatrixXd x = gaussian_points(30, 3, 8);
  std::vector<Index> subset(17);
  std::iota(subset.begin(), subset.end(), Index{0});
  for (int step = 0; step < 200; ++step) {
    auto next = c_step(x, subset);
    if (next == subset) break;
    subset = std::move(next);
  }
  CHECK(c_step(x, subset) == subset);
}

TEST_CASE("singular subsets") {
  Eigen::MatrixXd x = gaussian_points(10, 2, 9);
  for (Index i = 0; i < 4; ++i) x.row(i) = Eigen::RowVector2d(1, 1);
  CHECK(code_of([&] { c_step(x, {0, 1, 2, 3}); }) == Errc::SingularScatter);

  const Eigen::MatrixXd same = Eigen::MatrixXd::Constant(8, 2, 2.0);
  CHECK(code_of([&] { fast_mcd(same); }) == Errc::SingularScatter);
  CHECK(code_of([&] { fast_mcd(gaussian_points(3, 2, 1)); }) == Errc::InsufficientData);
}

TEST_CASE("fast mcd matches exhaustive search on small samples") {
  int hits = 0;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd x = gaussian_points(10, 2, 1000 + trial);
    McdOptions opt;
    opt.h = 6;
    opt.seed = trial;
    const auto fit = fast_mcd(x, opt);
    const auto best = oracle::exhaustive_mcd(x, 6);
    if (std::abs(fit.det - best.det) <= 1e-9 * best.det) ++hits;
  }
  CHECK(hits >= 19);
}

TEST_CASE("fast mcd result beats its starts and is reproducible") {
  const Eigen::MatrixXd x = gaussian_points(60, 3, 10);
  McdOptions opt;
  opt.seed = 5;
  double worst_step = 0;
  opt.on_c_step = [&](double before, double after) { worst_step = std::max(worst_step, after - before * (1 + 1e-12)); };
  const auto fit = fast_mcd(x, opt);
  CHECK(worst_step <= 0.0);
  CHECK(fit.subset.size() == static_cast<std::size_t>(default_subset_size(60, 3)));
  CHECK(std::adjacent_find(fit.subset.begin(), fit.subset.end()) == fit.subset.end());
  CHECK(fit.det == doctest::Approx(subset_determinant(x, fit.subset)).epsilon(1e-12));
  opt.on_c_step = nullptr;
  const auto again = fast_mcd(x, opt);
  CHECK(again.subset == fit.subset);
  CHECK(again.scatter == fit.scatter);

  // the scatter is the consistency-scaled maximum-likelihood covariance
  const auto mom = subset_moments(x, fit.subset);
  const double h = static_cast<double>(fit.h);
  CHECK((fit.scatter - fit.consistency * mom.cov * (h - 1) / h).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((fit.scatter - fit.scatter.transpose()).cwiseAbs().maxCoeff() == 0.0);
}
