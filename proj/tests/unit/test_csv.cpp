#include <cmath>
#include <limits>

#include <doctest.h>

#include "msplot/csv.hpp"
#include "msplot/error.hpp"
#include "msplot/simulate.hpp"

using namespace msplot;

namespace {

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

TEST_CASE("number formatting round-trips") {
  for (double x : {0.0, 1.0, -2.5, 0.1, 1.0 / 3, 6.02214076e23, 5e-324, std::numeric_limits<double>::max(),
                   -0.0078125, 123456789.123456789})
    CHECK(parse_double(format_double(x)) == x);
  CHECK(format_double(0.5) == "0.5");
  CHECK(code_of([] { parse_double("1.5x"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_double(""); }) == Errc::ParseError);
}

TEST_CASE("long csv parsing") {
  const auto s = parse_long_csv("curve_id,t,dim_1\na,0,1.5\na,1,2.5\nb,0,3\nb,1,4\n");
  CHECK(s.curves() == 2);
  CHECK(s.points() == 2);
  CHECK(s.dims() == 1);
  CHECK(s.ids() == std::vector<std::string>{"a", "b"});
  CHECK(s(0, 1, 0) == 2.5);
  CHECK(s.grid().weights(0) == 0.5);

  const auto shuffled = parse_long_csv("curve_id,t,dim_1,dim_2\nz,1,3,4\nq,0,5,6\nz,0,1,2\nq,1,7,8\n");
  CHECK(shuffled.ids() == std::vector<std::string>{"z", "q"});
  CHECK(shuffled(0, 0, 1) == 2);
  CHECK(shuffled(1, 1, 0) == 7);
}

TEST_CASE("long csv errors") {
  CHECK(code_of([] { parse_long_csv("curve_id,t,dim_1\na,0,1\na,0.5,2\na,1,3\nb,0,1\nb,1,2\n"); }) ==
        Errc::RaggedGrid);
  try {
    parse_long_csv("curve_id,t,dim_1\na,0,1\na,1,oops\n");
    FAIL("bad number accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(code_of([] { parse_long_csv("curve_id,t,dim_1\na,0\n"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_long_csv("id,t,dim_1\na,0,1\n"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_long_csv("curve_id,t,dim_1\na,0,nan\na,1,1\n"); }) == Errc::NonFiniteValue);
  CHECK(code_of([] { parse_long_csv(""); }) == Errc::ParseError);
  CHECK(code_of([] { parse_long_csv("curve_id,t,dim_1\na,0,1\na,0,2\n"); }) == Errc::ParseError);
}

TEST_CASE("simulated samples round-trip through long csv") {
  for (int model : {1, 5}) {
    const auto data = model_sample(ModelSpec{model, 15, 0.2, 12, 3});
    const auto text = write_long_csv(data.sample);
    const auto back = parse_long_csv(text);
    CHECK(back.components() == data.sample.components());
    CHECK(back.ids() == data.sample.ids());
    CHECK(back.grid().points == data.sample.grid().points);
    CHECK(write_long_csv(back) == text);

    const auto truth = parse_truth_csv(write_truth_csv(data.sample.ids(), data.truth), data.sample.ids());
    CHECK(truth == data.truth);
  }
}

TEST_CASE("result csv") {
  const auto data = model_sample(ModelSpec{5, 20, 0.1, 10, 1});
  const auto det = detect_outliers(data.sample, DetectorConfig{.directions = 50, .mcd_starts = 50});
  const auto rows = split_csv(write_result_csv(data.sample.ids(), det));
  CHECK(rows.front() == std::vector<std::string>{"curve_id", "mo_1", "mo_2", "vo", "fo", "srmd", "flagged"});
  REQUIRE(rows.size() == 21);
  for (Index i = 0; i < 20; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i + 1)];
    CHECK(parse_double(row[1]) == det.summary.mo(i, 0));
    CHECK(parse_double(row[3]) == det.summary.vo(i));
    CHECK(parse_double(row[5]) == det.result.srmd(i));
    CHECK(row[6] == (det.result.flags[static_cast<std::size_t>(i)] ? "1" : "0"));
  }

  const auto box = detect_outliers(data.sample, DetectorConfig{.method = DetectMethod::boxplot, .directions = 50});
  const auto brows = split_csv(write_result_csv(data.sample.ids(), box));
  CHECK(brows[1][5].empty());
}

TEST_CASE("rate csvs") {
  RateSummary s;
  s.p_c = {1.0, 0.9};
  s.p_f = {0.1, 0.0};
  s.correct.mean = 0.95;
  s.false_.mean = 0.05;
  const auto rows = split_csv(write_rates_csv(s));
  CHECK(rows.front() == std::vector<std::string>{"rep", "p_c", "p_f"});
  CHECK(rows.size() == 3);
  CHECK(parse_double(rows[2][1]) == 0.9);
  const auto summary = split_csv(write_rate_summary_csv(s));
  CHECK(summary.front() == std::vector<std::string>{"statistic", "value"});
  CHECK(summary[2] == std::vector<std::string>{"p_c_mean", "0.95"});
}
