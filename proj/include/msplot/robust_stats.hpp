#pragma once

// Order statistics on Eigen expressions. Everything here copies its input,
// so any dense expression (a column, a row, a product) can be passed in.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Core>

namespace msplot {

template <typename Derived>
std::vector<typename Derived::Scalar> to_vector(const Eigen::DenseBase<Derived>& x) {
  std::vector<typename Derived::Scalar> out;
  out.reserve(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) out.push_back(x.derived().coeff(i));
  return out;
}

/// Median of a scratch buffer; reorders `v`. Even sizes average the two middle values.
template <typename Scalar>
Scalar median_inplace(std::vector<Scalar>& v) {
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const Scalar upper = v[mid];
  if (n % 2 == 1) return upper;
  const Scalar lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / Scalar(2);
}

template <typename Derived>
typename Derived::Scalar median(const Eigen::DenseBase<Derived>& x) {
  auto v = to_vector(x);
  return median_inplace(v);
}

/// Raw median absolute deviation about `center`, no consistency constant.
template <typename Derived>
typename Derived::Scalar mad(const Eigen::DenseBase<Derived>& x, typename Derived::Scalar center) {
  auto v = to_vector(x);
  for (auto& e : v) e = std::abs(e - center);
  return median_inplace(v);
}

template <typename Derived>
typename Derived::Scalar mad(const Eigen::DenseBase<Derived>& x) {
  return mad(x, median(x));
}

/// Sample quantile with linear interpolation between order statistics
/// (the "type 7" definition).
template <typename Derived>
typename Derived::Scalar quantile(const Eigen::DenseBase<Derived>& x, double prob) {
  using Scalar = typename Derived::Scalar;
  auto v = to_vector(x);
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= v.size()) return v.back();
  return v[lo] + Scalar(h - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
}

/// Neumaier-compensated running sum.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar x) {
    const Scalar t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  Scalar value() const { return sum_ + comp_; }

 private:
  Scalar sum_{0};
  Scalar comp_{0};
};

}  // namespace msplot
