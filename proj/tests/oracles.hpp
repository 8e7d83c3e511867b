#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's numerical code.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace oracle {

inline double sorted_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double raw_mad(const std::vector<double>& v) {
  const double med = sorted_median(v);
  std::vector<double> dev;
  for (double x : v) dev.push_back(std::abs(x - med));
  return sorted_median(dev);
}

// Stahel-Donoho outlyingness of x in R^2 with the supremum taken over
// `angles` equally spaced directions on the half circle.
inline double angular_sdo(const Eigen::Vector2d& x, const Eigen::MatrixXd& cs, int angles = 3600) {
  double best = 0.0;
  std::vector<double> proj(static_cast<std::size_t>(cs.rows()));
  for (int a = 0; a < angles; ++a) {
    const double th = std::numbers::pi * a / angles;
    const Eigen::Vector2d u(std::cos(th), std::sin(th));
    for (Eigen::Index i = 0; i < cs.rows(); ++i) proj[static_cast<std::size_t>(i)] = cs.row(i).dot(u);
    const double mad = raw_mad(proj);
    if (mad <= 0) continue;
    best = std::max(best, std::abs(x.dot(u) - sorted_median(proj)) / mad);
  }
  return best;
}

// Determinant of the (h - 1 divisor) covariance of the selected rows.
inline double subset_cov_det(const Eigen::MatrixXd& pts, const std::vector<int>& idx) {
  const Eigen::Index d = pts.cols();
  Eigen::MatrixXd sel(static_cast<Eigen::Index>(idx.size()), d);
  for (std::size_t r = 0; r < idx.size(); ++r) sel.row(static_cast<Eigen::Index>(r)) = pts.row(idx[r]);
  const Eigen::RowVectorXd mean = sel.colwise().mean();
  const Eigen::MatrixXd c = sel.rowwise() - mean;
  return (c.transpose() * c / static_cast<double>(idx.size() - 1)).determinant();
}

struct ExhaustiveMcd {
  double det = std::numeric_limits<double>::infinity();
  std::vector<int> subset;
};

// Minimum covariance determinant over all C(n, h) subsets.
inline ExhaustiveMcd exhaustive_mcd(const Eigen::MatrixXd& pts, int h) {
  const int n = static_cast<int>(pts.rows());
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + h, true);
  ExhaustiveMcd best;
  do {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (pick[static_cast<std::size_t>(i)]) idx.push_back(i);
    const double det = subset_cov_det(pts, idx);
    if (det < best.det) best = {det, idx};
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

// Fifty-digit modified Bessel function of the second kind.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

inline BigFloat bessel_k(double nu, double x) {
  return boost::math::cyl_bessel_k(BigFloat(nu), BigFloat(x));
}

inline BigFloat matern(double h, double nu, double alpha) {
  if (h == 0) return BigFloat(1);
  const BigFloat z = BigFloat(alpha) * BigFloat(h);
  const BigFloat n(nu);
  return pow(BigFloat(2), 1 - n) / boost::math::tgamma(n) * pow(z, n) * bessel_k(nu, static_cast<double>(z));
}

// Values frozen from a 40-digit mpmath evaluation of besselk.
struct BesselPoint {
  double nu, x, value;
};
inline const std::vector<BesselPoint>& frozen_bessel() {
  static const std::vector<BesselPoint> table = {
      {0.5, 0.01, 12.408434532846929916},       {0.5, 0.5, 1.0750476034999202387},
      {0.5, 1.0, 0.46106850444789455844},       {0.5, 2.0, 0.11993777196806144737},
      {0.5, 20.0, 5.7763739747074446528e-10},   {0.6, 0.01, 17.8112213910917501},
      {0.6, 0.1, 4.214319096862323111},         {0.6, 0.5, 1.1475362894202732494},
      {0.6, 1.9, 0.13925346175521505187},       {0.6, 2.1, 0.10823824625267346774},
      {0.6, 5.0, 0.0038148340894516634837},     {0.6, 50.0, 3.4223457187542740987e-23},
      {1.0, 0.01, 99.973894118296245561},       {1.0, 0.1, 9.8538447808706055744},
      {1.0, 1.0, 0.60190723019723457474},       {1.0, 2.0, 0.13986588181652242728},
      {1.0, 5.0, 0.0040446134454521642084},     {1.0, 20.0, 5.8830579695570381777e-10},
      {1.2, 0.01, 264.89947815468811996},       {1.2, 0.1, 16.573265774746548038},
      {1.2, 0.5, 2.1086579232338185099},        {1.2, 1.0, 0.70107989955789310429},
      {1.2, 1.9, 0.17523118075846916826},       {1.2, 2.0, 0.15291993267063697247},
      {1.2, 2.1, 0.13373083541598148564},       {1.2, 50.0, 3.4591394870288413525e-23},
  };
  return table;
}

// Weighted MO, VO, FO of a field given as p matrices (n x m), by direct loops.
struct Summary {
  Eigen::MatrixXd mo;
  Eigen::VectorXd vo, fo;
};
inline Summary direct_summary(const std::vector<Eigen::MatrixXd>& field, const Eigen::VectorXd& w) {
  const auto n = field.front().rows(), m = field.front().cols();
  const auto p = static_cast<Eigen::Index>(field.size());
  Summary s{Eigen::MatrixXd::Zero(n, p), Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index k = 0; k < p; ++k) {
        s.mo(i, k) += w(j) * field[static_cast<std::size_t>(k)](i, j);
        s.fo(i) += w(j) * field[static_cast<std::size_t>(k)](i, j) * field[static_cast<std::size_t>(k)](i, j);
      }
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index k = 0; k < p; ++k) {
        const double d = field[static_cast<std::size_t>(k)](i, j) - s.mo(i, k);
        s.vo(i) += w(j) * d * d;
      }
  }
  return s;
}

// Parses an SVG document and counts <circle> elements whose class starts
// with "mark", at any depth. Throws on malformed XML.
inline int count_svg_marks(const std::string& svg) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(svg);
  pt::read_xml(in, tree);
  int count = 0;
  auto visit = [&](auto&& self, const pt::ptree& node) -> void {
    for (const auto& [name, child] : node) {
      if (name == "circle") {
        const auto cls = child.template get<std::string>("<xmlattr>.class", "");
        if (cls.rfind("mark", 0) == 0) ++count;
      }
      self(self, child);
    }
  };
  visit(visit, tree);
  return count;
}

}  // namespace oracle
