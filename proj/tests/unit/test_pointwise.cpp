#include <cmath>
#include <random>

#include <doctest.h>

#include "../oracles.hpp"
#include "msplot/error.hpp"
#include "msplot/pointwise.hpp"
#include "msplot/rng.hpp"

using namespace msplot;

namespace {

Eigen::MatrixXd gaussian_matrix(Index rows, Index cols, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> z;
  Eigen::MatrixXd x(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) x(i, j) = z(rng);
  return x;
}

FunctionalSample gaussian_sample(Index n, Index m, Index p, std::uint64_t seed) {
  std::vector<Eigen::MatrixXd> comps;
  for (Index k = 0; k < p; ++k) comps.push_back(gaussian_matrix(n, m, seed * 31 + static_cast<std::uint64_t>(k)));
  return validate(std::move(comps), uniform_grid(m), default_ids(n));
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

TEST_CASE("univariate directional outlyingness") {
  Eigen::VectorXd cs(3);
  cs << -1, 0, 1;
  CHECK(directional_outlyingness_1d(1.0, cs) == 1.0);
  CHECK(directional_outlyingness_1d(0.0, cs) == 0.0);
  CHECK(directional_outlyingness_1d(-3.0, cs) == -3.0);

  Eigen::VectorXd flat = Eigen::VectorXd::Constant(3, 5.0);
  CHECK(code_of([&] { directional_outlyingness_1d(2.0, flat); }) == Errc::DegenerateCrossSection);
}

TEST_CASE("direction sets") {
  const auto d = sample_directions(200, 2, 1);
  CHECK(d.count() == 200);
  CHECK(d.dim() == 2);
  for (Index k = 0; k < d.count(); ++k) CHECK(std::abs(d.directions.row(k).norm() - 1.0) <= 1e-12);

  const auto again = sample_directions(200, 2, 1);
  CHECK(again.directions == d.directions);
  CHECK(sample_directions(200, 2, 2).directions != d.directions);

  const auto d5 = sample_directions(50, 5, 9);
  for (Index k = 0; k < d5.count(); ++k) CHECK(std::abs(d5.directions.row(k).norm() - 1.0) <= 1e-12);

  CHECK(code_of([] { sample_directions(10, 1, 1); }) == Errc::UseClosedForm);
}

TEST_CASE("sdo of the deepest point is the sample minimum") {
  const Eigen::MatrixXd cs = gaussian_matrix(41, 2, 5);
  const auto dirs = sample_directions(300, 2, 3);
  const Index z = deepest_point(cs, dirs);
  double min_sdo = std::numeric_limits<double>::infinity();
  Index argmin = -1;
  for (Index i = 0; i < cs.rows(); ++i) {
    const double s = sdo_md(cs.row(i).transpose(), cs, dirs);
    if (s < min_sdo) {
      min_sdo = s;
      argmin = i;
    }
  }
  CHECK(z == argmin);
  CHECK(sdo_md(cs.row(z).transpose(), cs, dirs) == min_sdo);
}

TEST_CASE("sdo of a symmetric sample at its centre") {
  Eigen::MatrixXd cs(5, 2);
  cs << 0, 0, 1, 0, -1, 0, 0, 1, 0, -1;
  const auto dirs = sample_directions(100, 2, 4);
  CHECK(deepest_point(cs, dirs) == 0);
  CHECK(sdo_md(Eigen::Vector2d(0, 0), cs, dirs) == 0.0);
}

TEST_CASE("sdo against the angular grid oracle") {
  const Eigen::MatrixXd cs = gaussian_matrix(50, 2, 11);
  const auto dirs = sample_directions(500, 2, 12);
  std::vector<double> rel;
  Rng rng(13);
  std::normal_distribution<double> z(0.0, 1.5);
  for (int q = 0; q < 20; ++q) {
    const Eigen::Vector2d x(z(rng), z(rng));
    const double truth = oracle::angular_sdo(x, cs);
    rel.push_back(std::abs(sdo_md(x, cs, dirs) - truth) / truth);
  }
  CHECK(oracle::sorted_median(rel) <= 0.05);
}

TEST_CASE("sdo of identical points is degenerate") {
  const Eigen::MatrixXd cs = Eigen::MatrixXd::Constant(6, 2, 3.0);
  const auto dirs = sample_directions(20, 2, 1);
  CHECK(code_of([&] { sdo_md(Eigen::Vector2d(1, 1), cs, dirs); }) == Errc::DegenerateSample);
}

TEST_CASE("sdo never decreases as directions are added") {
  const Eigen::MatrixXd cs = gaussian_matrix(30, 3, 21);
  const auto big = sample_directions(120, 3, 22);
  DirectionSet small{big.directions.topRows(40), big.seed};
  for (Index i = 0; i < cs.rows(); ++i)
    CHECK(sdo_md(cs.row(i).transpose(), cs, big) >= sdo_md(cs.row(i).transpose(), cs, small));
}

TEST_CASE("deepest point in one dimension") {
  Eigen::MatrixXd a(3, 1), b(3, 1);
  a << -1, 0, 1;
  b << 0, 0, 1;
  CHECK(deepest_point(a) == 1);
  CHECK(deepest_point(b) == 0);
}

TEST_CASE("constant curves give constant outlyingness") {
  Eigen::MatrixXd v(3, 4);
  v.row(0).setConstant(0);
  v.row(1).setConstant(1);
  v.row(2).setConstant(2);
  const auto f = pointwise_field(validate({v}, uniform_grid(4), default_ids(3)));
  for (Index j = 0; j < 4; ++j) {
    CHECK(f.components[0](0, j) == -1.0);
    CHECK(f.components[0](1, j) == 0.0);
    CHECK(f.components[0](2, j) == 1.0);
  }
}

TEST_CASE("deepest curve has a zero field") {
  Eigen::MatrixXd a(5, 3), b(5, 3);
  a << 0, 0, 0, 1, 2, 3, -1, -2, 1, 2, 1, -2, -2, -1, 2;
  b << 0, 0, 0, 1, -1, 2, -1, 1, 1, 2, 2, -2, -2, -2, -1;
  const auto s = validate({a, b}, uniform_grid(3), default_ids(5));
  const auto dirs = sample_directions(200, 2, 7);
  const auto f = pointwise_field(s, dirs);
  for (Index j = 0; j < 3; ++j)
    if (deepest_point(s.cross_section(j), dirs) == 0) CHECK(f.at(0, j).norm() == 0.0);
  CHECK(deepest_point(s.cross_section(0), dirs) == 0);
}

TEST_CASE("field norm equals recomputed sdo away from the deepest point") {
  const auto s = gaussian_sample(25, 6, 2, 3);
  const auto dirs = sample_directions(200, 2, 5);
  const auto f = pointwise_field(s, dirs);
  for (Index j = 0; j < s.points(); ++j) {
    const Eigen::MatrixXd cs = s.cross_section(j);
    const Index z = deepest_point(cs, dirs);
    for (Index i = 0; i < s.curves(); ++i) {
      if (cs.row(i) == cs.row(z))
        CHECK(f.at(i, j).norm() == 0.0);
      else
        CHECK(std::abs(f.at(i, j).norm() - sdo_md(cs.row(i).transpose(), cs, dirs)) <= 1e-12);
    }
  }
}

TEST_CASE("univariate field is exact") {
  const auto s = gaussian_sample(15, 5, 1, 8);
  const auto f = pointwise_field(s);
  for (Index j = 0; j < s.points(); ++j) {
    std::vector<double> col;
    for (Index i = 0; i < s.curves(); ++i) col.push_back(s(i, j, 0));
    const double med = oracle::sorted_median(col), mad = oracle::raw_mad(col);
    for (Index i = 0; i < s.curves(); ++i) CHECK(f.components[0](i, j) == (s(i, j, 0) - med) / mad);
  }
}

TEST_CASE("scale equivariance in one dimension") {
  const auto s = gaussian_sample(12, 4, 1, 9);
  const auto f = pointwise_field(s);
  for (double a : {-1.0, 2.0, -0.5, 4.0}) {
    const auto scaled = validate({a * s.component(0)}, s.grid(), s.ids());
    const auto g = pointwise_field(scaled);
    const double sign = a > 0 ? 1.0 : -1.0;
    CHECK((g.components[0] - sign * f.components[0]).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("permutation equivariance") {
  const auto s = gaussian_sample(10, 4, 2, 10);
  const auto dirs = sample_directions(100, 2, 1);
  const auto f = pointwise_field(s, dirs);
  std::vector<Index> perm = {3, 1, 4, 0, 9, 2, 6, 5, 8, 7};
  std::vector<Eigen::MatrixXd> comps(2, Eigen::MatrixXd(10, 4));
  for (Index k = 0; k < 2; ++k)
    for (Index i = 0; i < 10; ++i) comps[static_cast<std::size_t>(k)].row(i) = s.component(k).row(perm[static_cast<std::size_t>(i)]);
  const auto g = pointwise_field(validate(comps, s.grid(), default_ids(10)), dirs);
  for (Index k = 0; k < 2; ++k)
    for (Index i = 0; i < 10; ++i)
      CHECK(g.components[static_cast<std::size_t>(k)].row(i) ==
            f.components[static_cast<std::size_t>(k)].row(perm[static_cast<std::size_t>(i)]));
}

TEST_CASE("degenerate cross-sections report the grid index") {
  Eigen::MatrixXd v(4, 3);
  v << 1, 5, 2, 2, 5, 1, 3, 5, 0, 4, 5, 7;
  try {
    pointwise_field(validate({v}, uniform_grid(3), default_ids(4)));
    FAIL("degenerate sample accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateCrossSection);
    CHECK(e.index() == 1);
  }
}
