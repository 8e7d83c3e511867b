#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msplot/detect.hpp"
#include "msplot/simulate.hpp"

namespace msplot {

struct DetectionRates {
  double correct = 0.0;  // p_c: flagged true outliers / true outliers (1 if none)
  double false_ = 0.0;   // p_f: flagged non-outliers / non-outliers (0 if none)
};

/// Throws ShapeMismatch on a length mismatch.
DetectionRates detection_rates(const std::vector<bool>& flags, const std::vector<bool>& truth);

struct RateStats {
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

struct RateSummary {
  ModelSpec spec;
  DetectorConfig config;
  std::optional<Index> component;
  std::vector<double> p_c;
  std::vector<double> p_f;
  RateStats correct;
  RateStats false_;
};

struct BenchOptions {
  Index reps = 200;
  std::uint64_t seed = 0;
  Index workers = 1;
  /// Detect on this single response dimension only (marginal analysis).
  std::optional<Index> component;
};

/// Seed of replication r, independent of worker count and order.
std::uint64_t replication_seed(std::uint64_t seed, Index rep);

/// Simulate, detect and score `reps` replications. A failing replication
/// aborts the run with the replication index attached to the error.
RateSummary run_benchmark(const ModelSpec& spec, const DetectorConfig& config, const BenchOptions& options);

}  // namespace msplot
