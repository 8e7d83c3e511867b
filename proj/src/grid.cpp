#include "msplot/grid.hpp"

#include <cmath>
#include <unordered_set>

#include "msplot/error.hpp"
#include "msplot/robust_stats.hpp"

namespace msplot {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidGrid: return "InvalidGrid";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::RaggedGrid: return "RaggedGrid";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownModel: return "UnknownModel";
    case Errc::UseClosedForm: return "UseClosedForm";
    case Errc::ArrayNeedsMultivariate: return "ArrayNeedsMultivariate";
    case Errc::NoBoundaryGeometry: return "NoBoundaryGeometry";
    case Errc::DomainError: return "DomainError";
    case Errc::DegenerateCrossSection: return "DegenerateCrossSection";
    case Errc::DegenerateSample: return "DegenerateSample";
    case Errc::SingularScatter: return "SingularScatter";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
  }
  return "Unknown";
}

bool is_numerical(Errc code) noexcept {
  switch (code) {
    case Errc::DegenerateCrossSection:
    case Errc::DegenerateSample:
    case Errc::SingularScatter:
    case Errc::InsufficientData:
    case Errc::NotPositiveDefinite:
      return true;
    default:
      return false;
  }
}

Grid uniform_grid(Index m, double a, double b) {
  if (m < 2) throw Error(Errc::InvalidGrid, "a grid needs at least 2 points, got " + std::to_string(m));
  if (!(a < b)) throw Error(Errc::InvalidGrid, "interval must satisfy a < b");
  Grid g;
  g.points.resize(m, 1);
  for (Index j = 0; j < m; ++j) {
    // endpoints exact
    g.points(j, 0) = j == m - 1 ? b : a + (b - a) * static_cast<double>(j) / static_cast<double>(m - 1);
  }
  g.weights = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  return g;
}

Grid equal_weight_grid(Eigen::MatrixXd points) {
  Grid g;
  const Index m = points.rows();
  g.points = std::move(points);
  g.weights = Eigen::VectorXd::Constant(m, m > 0 ? 1.0 / static_cast<double>(m) : 0.0);
  check_grid(g);
  return g;
}

Grid trapezoid_grid(const Eigen::VectorXd& t) {
  const Index m = t.size();
  if (m < 2) throw Error(Errc::InvalidGrid, "a grid needs at least 2 points");
  Grid g;
  g.points = t;
  g.weights.resize(m);
  for (Index j = 0; j < m; ++j) {
    const double left = j > 0 ? t(j) - t(j - 1) : 0.0;
    const double right = j + 1 < m ? t(j + 1) - t(j) : 0.0;
    g.weights(j) = 0.5 * (left + right);
  }
  const double total = g.weights.sum();
  if (!(total > 0)) throw Error(Errc::InvalidGrid, "grid points must be strictly increasing");
  g.weights /= total;
  check_grid(g);
  return g;
}

double weight_sum(const Grid& grid) {
  CompensatedSum<double> s;
  for (Index j = 0; j < grid.weights.size(); ++j) s.add(grid.weights(j));
  return s.value();
}

void check_grid(const Grid& grid) {
  const Index m = grid.size();
  if (m < 2) throw Error(Errc::InvalidGrid, "a grid needs at least 2 points");
  if (grid.domain_dim() < 1) throw Error(Errc::InvalidGrid, "grid points need at least one coordinate");
  if (grid.weights.size() != m) throw Error(Errc::InvalidGrid, "one weight per point required");
  if (!grid.points.allFinite() || !grid.weights.allFinite())
    throw Error(Errc::InvalidGrid, "grid contains non-finite values");
  if ((grid.weights.array() < 0).any()) throw Error(Errc::InvalidGrid, "weights must be nonnegative");
  if (std::abs(weight_sum(grid) - 1.0) > 1e-12) throw Error(Errc::InvalidGrid, "weights must sum to 1");
  if (grid.domain_dim() == 1) {
    for (Index j = 1; j < m; ++j)
      if (!(grid.points(j, 0) > grid.points(j - 1, 0)))
        throw Error(Errc::InvalidGrid, "1-D grid points must be strictly increasing", j);
  } else {
    for (Index j = 0; j < m; ++j)
      for (Index k = j + 1; k < m; ++k)
        if (grid.points.row(j) == grid.points.row(k))
          throw Error(Errc::InvalidGrid, "grid points must be distinct", k);
  }
}

Eigen::MatrixXd FunctionalSample::cross_section(Index point) const {
  Eigen::MatrixXd out(curves(), dims());
  for (Index k = 0; k < dims(); ++k) out.col(k) = components_[static_cast<std::size_t>(k)].col(point);
  return out;
}

FunctionalSample FunctionalSample::select_dims(const std::vector<Index>& dims) const {
  std::vector<Eigen::MatrixXd> parts;
  for (Index k : dims) {
    if (k < 0 || k >= this->dims()) throw Error(Errc::ShapeMismatch, "dimension out of range", k);
    parts.push_back(component(k));
  }
  return validate(std::move(parts), grid_, ids_);
}

bool FunctionalSample::operator==(const FunctionalSample& other) const {
  return components_ == other.components_ && grid_ == other.grid_ && ids_ == other.ids_;
}

FunctionalSample validate(std::vector<Eigen::MatrixXd> components, Grid grid, std::vector<std::string> ids) {
  check_grid(grid);
  if (components.empty()) throw Error(Errc::ShapeMismatch, "at least one response dimension required");
  const Index n = components.front().rows();
  const Index m = grid.size();
  if (n < 1) throw Error(Errc::ShapeMismatch, "at least one curve required");
  for (const auto& c : components) {
    if (c.rows() != n || c.cols() != m)
      throw Error(Errc::ShapeMismatch, "component is " + std::to_string(c.rows()) + "x" + std::to_string(c.cols()) +
                                           ", expected " + std::to_string(n) + "x" + std::to_string(m));
  }
  if (static_cast<Index>(ids.size()) != n) throw Error(Errc::ShapeMismatch, "one id per curve required");

  for (const auto& c : components) {
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < m; ++j)
        if (!std::isfinite(c(i, j)))
          throw Error(Errc::NonFiniteValue,
                      "curve '" + ids[static_cast<std::size_t>(i)] + "' at grid index " + std::to_string(j), i);
  }

  std::unordered_set<std::string> seen;
  for (const auto& id : ids)
    if (!seen.insert(id).second) throw Error(Errc::DuplicateId, "curve id '" + id + "' appears twice");

  FunctionalSample s;
  s.components_ = std::move(components);
  s.grid_ = std::move(grid);
  s.ids_ = std::move(ids);
  return s;
}

std::vector<std::string> default_ids(Index n) {
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) ids.push_back(std::to_string(i + 1));
  return ids;
}

}  // namespace msplot
