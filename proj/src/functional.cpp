#include "msplot/functional.hpp"

#include <cmath>

#include "msplot/error.hpp"
#include "msplot/robust_stats.hpp"

namespace msplot {

namespace {

constexpr Index kCompensateAbove = 10000;

template <typename Accumulator>
void summarize_curve(const PointwiseField& field, const Eigen::VectorXd& w, Index i, OutlyingnessSummary& out) {
  const Index m = field.points();
  const Index p = field.dims();
  for (Index k = 0; k < p; ++k) {
    Accumulator acc;
    const auto& comp = field.components[static_cast<std::size_t>(k)];
    for (Index j = 0; j < m; ++j) acc.add(w(j) * comp(i, j));
    out.mo(i, k) = acc.value();
  }
  Accumulator vo, fo;
  for (Index j = 0; j < m; ++j) {
    double dev2 = 0.0, norm2 = 0.0;
    for (Index k = 0; k < p; ++k) {
      const double o = field.components[static_cast<std::size_t>(k)](i, j);
      const double d = o - out.mo(i, k);
      dev2 += d * d;
      norm2 += o * o;
    }
    vo.add(w(j) * dev2);
    fo.add(w(j) * norm2);
  }
  out.vo(i) = vo.value();
  out.fo(i) = fo.value();
}

struct PlainSum {
  double s = 0.0;
  void add(double x) { s += x; }
  double value() const { return s; }
};

}  // namespace

OutlyingnessSummary summarize(const PointwiseField& field, const Grid& grid) {
  if (grid.size() != field.points()) throw Error(Errc::ShapeMismatch, "grid size does not match the field");
  if (std::abs(weight_sum(grid) - 1.0) > 1e-9) throw Error(Errc::InvalidGrid, "weights must sum to 1");
  const Index n = field.curves();
  OutlyingnessSummary out;
  out.mo.resize(n, field.dims());
  out.vo.resize(n);
  out.fo.resize(n);
  for (Index i = 0; i < n; ++i) {
    if (field.points() > kCompensateAbove)
      summarize_curve<CompensatedSum<double>>(field, grid.weights, i, out);
    else
      summarize_curve<PlainSum>(field, grid.weights, i, out);
  }
  return out;
}

OutlyingnessSummary summarize(const FunctionalSample& sample, const DirectionSet& dirs) {
  return summarize(pointwise_field(sample, dirs), sample.grid());
}

OutlyingnessSummary summarize(const FunctionalSample& sample) {
  return summarize(pointwise_field(sample), sample.grid());
}

Eigen::MatrixXd ms_coordinates(const OutlyingnessSummary& summary, MsMode mode) {
  const Index n = summary.curves();
  if (mode == MsMode::norm) {
    Eigen::MatrixXd out(n, 2);
    out.col(0) = summary.mo.rowwise().norm();
    out.col(1) = summary.vo;
    return out;
  }
  Eigen::MatrixXd out(n, summary.dims() + 1);
  out.leftCols(summary.dims()) = summary.mo;
  out.col(summary.dims()) = summary.vo;
  return out;
}

}  // namespace msplot
