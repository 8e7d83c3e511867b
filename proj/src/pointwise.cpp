#include "msplot/pointwise.hpp"

#include <cmath>
#include <limits>

#include "msplot/error.hpp"
#include "msplot/rng.hpp"
#include "msplot/robust_stats.hpp"

namespace msplot {

DirectionSet sample_directions(Index count, Index p, std::uint64_t seed) {
  if (p < 2) throw Error(Errc::UseClosedForm, "univariate outlyingness is computed exactly, no directions needed");
  if (count < 1) throw Error(Errc::DomainError, "at least one direction required");
  Rng rng(seed);
  std::normal_distribution<double> normal;
  DirectionSet set;
  set.seed = seed;
  set.directions.resize(count, p);
  for (Index k = 0; k < count; ++k) {
    double norm = 0.0;
    do {
      for (Index c = 0; c < p; ++c) set.directions(k, c) = normal(rng);
      norm = set.directions.row(k).norm();
    } while (norm < 1e-8);
    set.directions.row(k) /= norm;
  }
  return set;
}

double directional_outlyingness_1d(double x, const Eigen::Ref<const Eigen::VectorXd>& cross_section) {
  const double med = median(cross_section);
  const double spread = mad(cross_section, med);
  if (!(spread > 0)) throw Error(Errc::DegenerateCrossSection, "MAD of the cross-section is zero");
  return (x - med) / spread;
}

ProjectedCrossSection::ProjectedCrossSection(const Eigen::Ref<const Eigen::MatrixXd>& cross_section,
                                             const DirectionSet& dirs) {
  if (dirs.dim() != cross_section.cols())
    throw Error(Errc::ShapeMismatch, "direction dimension does not match the cross-section");
  const Eigen::MatrixXd all = cross_section * dirs.directions.transpose();

  std::vector<Index> keep;
  std::vector<double> med, spread;
  for (Index k = 0; k < all.cols(); ++k) {
    const double mk = median(all.col(k));
    const double sk = mad(all.col(k), mk);
    if (sk > 0) {
      keep.push_back(k);
      med.push_back(mk);
      spread.push_back(sk);
    }
  }
  const auto kept = static_cast<Index>(keep.size());
  projections_.resize(all.rows(), kept);
  usable_dirs_.resize(kept, dirs.dim());
  median_.resize(kept);
  mad_.resize(kept);
  for (Index c = 0; c < kept; ++c) {
    const auto src = keep[static_cast<std::size_t>(c)];
    projections_.col(c) = all.col(src);
    usable_dirs_.row(c) = dirs.directions.row(src);
    median_(c) = med[static_cast<std::size_t>(c)];
    mad_(c) = spread[static_cast<std::size_t>(c)];
  }
}

double ProjectedCrossSection::sdo(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (degenerate()) throw Error(Errc::DegenerateSample, "every projection of the cross-section has zero MAD");
  const Eigen::VectorXd proj = usable_dirs_ * x;
  return ((proj - median_).array().abs() / mad_.array()).maxCoeff();
}

Eigen::VectorXd ProjectedCrossSection::sample_sdo() const {
  if (degenerate()) throw Error(Errc::DegenerateSample, "every projection of the cross-section has zero MAD");
  Eigen::VectorXd out(projections_.rows());
  for (Index i = 0; i < projections_.rows(); ++i)
    out(i) = ((projections_.row(i).transpose() - median_).array().abs() / mad_.array()).maxCoeff();
  return out;
}

double sdo_md(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::MatrixXd>& cross_section,
              const DirectionSet& dirs) {
  return ProjectedCrossSection(cross_section, dirs).sdo(x);
}

namespace {

Index argmin_first(const Eigen::VectorXd& v) {
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i)
    if (v(i) < v(best)) best = i;
  return best;
}

Eigen::VectorXd univariate_outlyingness(const Eigen::Ref<const Eigen::VectorXd>& column) {
  const double med = median(column);
  const double spread = mad(column, med);
  if (!(spread > 0)) throw Error(Errc::DegenerateCrossSection, "MAD of the cross-section is zero");
  return (column.array() - med) / spread;
}

}  // namespace

Index deepest_point(const Eigen::Ref<const Eigen::MatrixXd>& cross_section) {
  if (cross_section.cols() != 1)
    throw Error(Errc::ShapeMismatch, "multivariate cross-sections need a direction set");
  const double med = median(cross_section.col(0));
  return argmin_first((cross_section.col(0).array() - med).abs().matrix());
}

Index deepest_point(const Eigen::Ref<const Eigen::MatrixXd>& cross_section, const DirectionSet& dirs) {
  if (cross_section.cols() == 1) return deepest_point(cross_section);
  return argmin_first(ProjectedCrossSection(cross_section, dirs).sample_sdo());
}

Eigen::VectorXd PointwiseField::at(Index curve, Index point) const {
  Eigen::VectorXd o(dims());
  for (Index k = 0; k < dims(); ++k) o(k) = components[static_cast<std::size_t>(k)](curve, point);
  return o;
}

PointwiseField pointwise_field(const FunctionalSample& sample, const DirectionSet& dirs) {
  const Index n = sample.curves();
  const Index m = sample.points();
  const Index p = sample.dims();
  PointwiseField field;
  field.components.assign(static_cast<std::size_t>(p), Eigen::MatrixXd(n, m));

  if (p == 1) {
    for (Index j = 0; j < m; ++j) {
      try {
        field.components[0].col(j) = univariate_outlyingness(sample.component(0).col(j));
      } catch (const Error&) {
        throw Error(Errc::DegenerateCrossSection, "MAD is zero at grid index " + std::to_string(j), j);
      }
    }
    return field;
  }

  if (dirs.dim() != p) throw Error(Errc::ShapeMismatch, "direction set dimension does not match the sample");
  for (Index j = 0; j < m; ++j) {
    const Eigen::MatrixXd cs = sample.cross_section(j);
    const ProjectedCrossSection projected(cs, dirs);
    if (projected.degenerate())
      throw Error(Errc::DegenerateCrossSection, "every projection has zero MAD at grid index " + std::to_string(j), j);
    const Eigen::VectorXd sdo = projected.sample_sdo();
    const Eigen::VectorXd center = cs.row(argmin_first(sdo)).transpose();
    for (Index i = 0; i < n; ++i) {
      const Eigen::VectorXd diff = cs.row(i).transpose() - center;
      const double dist = diff.norm();
      for (Index k = 0; k < p; ++k)
        field.components[static_cast<std::size_t>(k)](i, j) = dist > 0 ? sdo(i) * diff(k) / dist : 0.0;
    }
  }
  return field;
}

PointwiseField pointwise_field(const FunctionalSample& sample) {
  if (sample.dims() == 1) return pointwise_field(sample, DirectionSet{});
  return pointwise_field(sample, sample_directions(kDefaultDirections, sample.dims(), kDefaultDirectionSeed));
}

}  // namespace msplot
