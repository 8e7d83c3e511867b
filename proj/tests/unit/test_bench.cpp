#include <numeric>

#include <doctest.h>

#include "msplot/bench.hpp"
#include "msplot/error.hpp"

using namespace msplot;

TEST_CASE("detection rates") {
  std::vector<bool> truth(10, false);
  truth[1] = truth[4] = truth[8] = true;
  auto r = detection_rates(truth, truth);
  CHECK(r.correct == 1.0);
  CHECK(r.false_ == 0.0);

  auto extra = truth;
  extra[0] = true;
  r = detection_rates(extra, truth);
  CHECK(r.correct == 1.0);
  CHECK(r.false_ == doctest::Approx(1.0 / 7));

  r = detection_rates(std::vector<bool>(10, false), truth);
  CHECK(r.correct == 0.0);
  CHECK(r.false_ == 0.0);

  r = detection_rates(std::vector<bool>(4, true), std::vector<bool>(4, false));
  CHECK(r.correct == 1.0);
  CHECK(r.false_ == 1.0);
  r = detection_rates(std::vector<bool>(4, false), std::vector<bool>(4, true));
  CHECK(r.correct == 0.0);
  CHECK(r.false_ == 0.0);

  CHECK_THROWS_AS(detection_rates(std::vector<bool>(3), truth), Error);
}

TEST_CASE("perfect rates iff flags equal truth") {
  std::vector<bool> truth = {true, false, false, true, false};
  for (unsigned mask = 0; mask < 32; ++mask) {
    std::vector<bool> flags;
    for (int i = 0; i < 5; ++i) flags.push_back((mask >> i) & 1u);
    const auto r = detection_rates(flags, truth);
    CHECK(((r.correct == 1.0 && r.false_ == 0.0) == (flags == truth)));
  }
}

TEST_CASE("benchmark determinism and substream stability") {
  const ModelSpec spec{1, 40, 0.1, 20, 0};
  DetectorConfig cfg;
  cfg.mcd_starts = 50;
  BenchOptions opt;
  opt.reps = 2;
  opt.seed = 99;
  const auto a = run_benchmark(spec, cfg, opt);
  const auto b = run_benchmark(spec, cfg, opt);
  CHECK(a.p_c == b.p_c);
  CHECK(a.p_f == b.p_f);
  CHECK(a.p_c.size() == 2);

  opt.reps = 4;
  opt.workers = 3;
  const auto c = run_benchmark(spec, cfg, opt);
  CHECK(std::vector<double>(c.p_c.begin(), c.p_c.begin() + 2) == a.p_c);
  CHECK(std::vector<double>(c.p_f.begin(), c.p_f.begin() + 2) == a.p_f);

  const double mean = std::accumulate(c.p_f.begin(), c.p_f.end(), 0.0) / 4.0;
  CHECK(c.false_.mean == doctest::Approx(mean).epsilon(1e-15));
  for (double v : c.p_f) CHECK((v >= 0.0 && v <= 1.0));
  for (double v : c.p_c) CHECK((v >= 0.0 && v <= 1.0));
  CHECK(replication_seed(99, 0) != replication_seed(99, 1));
}

TEST_CASE("benchmark on a single component") {
  DetectorConfig cfg;
  cfg.mcd_starts = 50;
  cfg.directions = 50;
  BenchOptions opt;
  opt.reps = 2;
  opt.seed = 5;
  opt.component = 1;
  const auto r = run_benchmark(ModelSpec{5, 40, 0.1, 20, 0}, cfg, opt);
  CHECK(r.component == 1);
  CHECK(r.p_c.size() == 2);
}

TEST_CASE("benchmark errors") {
  BenchOptions opt;
  opt.reps = 1;
  try {
    run_benchmark(ModelSpec{9, 40, 0.1, 20, 0}, DetectorConfig{}, opt);
    FAIL("accepted model 9");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownModel);
  }
  try {
    run_benchmark(ModelSpec{1, 3, 0.0, 20, 0}, DetectorConfig{}, opt);
    FAIL("accepted n = 3");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InsufficientData);
    CHECK(e.index() == 0);
  }
}
