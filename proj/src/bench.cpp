#include "msplot/bench.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "msplot/error.hpp"
#include "msplot/robust_stats.hpp"

namespace msplot {

DetectionRates detection_rates(const std::vector<bool>& flags, const std::vector<bool>& truth) {
  if (flags.size() != truth.size()) throw Error(Errc::ShapeMismatch, "flags and truth differ in length");
  std::size_t outliers = 0, hits = 0, normals = 0, false_hits = 0;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (truth[i]) {
      ++outliers;
      hits += flags[i];
    } else {
      ++normals;
      false_hits += flags[i];
    }
  }
  DetectionRates r;
  r.correct = outliers == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(outliers);
  r.false_ = normals == 0 ? 0.0 : static_cast<double>(false_hits) / static_cast<double>(normals);
  return r;
}

std::uint64_t replication_seed(std::uint64_t seed, Index rep) {
  return substream_seed(seed, static_cast<std::uint64_t>(rep));
}

namespace {

RateStats describe(const std::vector<double>& v) {
  const Eigen::Map<const Eigen::VectorXd> x(v.data(), static_cast<Index>(v.size()));
  RateStats s;
  s.mean = x.mean();
  s.median = median(x);
  s.q1 = quantile(x, 0.25);
  s.q3 = quantile(x, 0.75);
  return s;
}

}  // namespace

RateSummary run_benchmark(const ModelSpec& spec, const DetectorConfig& config, const BenchOptions& options) {
  if (options.reps < 1) throw Error(Errc::DomainError, "at least one replication required");
  if (spec.model_id < 1 || spec.model_id > 5)
    throw Error(Errc::UnknownModel, "model id must be 1..5, got " + std::to_string(spec.model_id));

  const auto reps = static_cast<std::size_t>(options.reps);
  RateSummary out;
  out.spec = spec;
  out.config = config;
  out.component = options.component;
  out.p_c.assign(reps, 0.0);
  out.p_f.assign(reps, 0.0);

  auto run_one = [&](std::size_t r) {
    ModelSpec s = spec;
    s.seed = replication_seed(options.seed, static_cast<Index>(r));
    LabeledSample data = model_sample(s);
    const FunctionalSample sample =
        options.component ? data.sample.select_dims({*options.component}) : std::move(data.sample);
    const auto det = detect_outliers(sample, config);
    const auto rates = detection_rates(det.result.flags, data.truth);
    out.p_c[r] = rates.correct;
    out.p_f[r] = rates.false_;
  };

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::optional<std::size_t> failed_rep;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t r = next++; r < reps; r = next++) {
      try {
        run_one(r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        // keep the lowest failing index so the report does not depend on scheduling
        if (!failed_rep || r < *failed_rep) {
          failed_rep = r;
          failure = std::current_exception();
        }
      }
    }
  };

  const auto workers = static_cast<std::size_t>(std::clamp<Index>(options.workers, 1, options.reps));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (failure) {
    const auto rep = static_cast<std::int64_t>(*failed_rep);
    try {
      std::rethrow_exception(failure);
    } catch (const Error& e) {
      throw Error(e.code(), "replication " + std::to_string(rep) + ": " + e.what(), rep);
    }
  }

  out.correct = describe(out.p_c);
  out.false_ = describe(out.p_f);
  return out;
}

}  // namespace msplot
