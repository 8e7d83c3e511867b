#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "msplot/bench.hpp"
#include "msplot/detect.hpp"
#include "msplot/functional.hpp"
#include "msplot/grid.hpp"

namespace msplot {

/// Shortest decimal that round-trips to the same double, at most 17
/// significant digits.
std::string format_double(double x);

/// Strict decimal parse; throws ParseError.
double parse_double(std::string_view text);

/// Long format: header `curve_id,t,dim_1,...,dim_p`, one row per (curve, t).
/// Curves keep first-appearance order and rows may come in any order. All
/// curves must share the same set of t values (RaggedGrid otherwise); the
/// grid gets equal weights 1/m.
FunctionalSample parse_long_csv(std::string_view text);

std::string write_long_csv(const FunctionalSample& sample);

/// `curve_id,outlier` with 0/1 values.
std::string write_truth_csv(const std::vector<std::string>& ids, const std::vector<bool>& truth);
std::vector<bool> parse_truth_csv(std::string_view text, const std::vector<std::string>& ids);

/// `curve_id,mo_1..mo_p,vo,fo,srmd,flagged`; srmd is left empty for the
/// boxplot rule.
std::string write_result_csv(const std::vector<std::string>& ids, const Detection& detection);

/// `rep,p_c,p_f`
std::string write_rates_csv(const RateSummary& summary);

/// `statistic,value`
std::string write_rate_summary_csv(const RateSummary& summary);

/// Splits CSV text into rows of fields (no quoting support; fields are
/// trimmed of surrounding whitespace and a trailing CR).
std::vector<std::vector<std::string>> split_csv(std::string_view text);

}  // namespace msplot
