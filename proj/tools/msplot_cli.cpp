// msplot: functional directional outlyingness, MS-plots and outlier detection.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "msplot/bench.hpp"
#include "msplot/csv.hpp"
#include "msplot/detect.hpp"
#include "msplot/error.hpp"
#include "msplot/plot.hpp"
#include "msplot/simulate.hpp"

namespace {

using namespace msplot;
using json = nlohmann::ordered_json;

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

void write_manifest(const std::string& output, json manifest, Index workers) {
  manifest["workers"] = workers;
  write_file(output + ".manifest.json", manifest.dump(2) + "\n");
}

PlotFormat format_for(const std::string& path) {
  return std::filesystem::path(path).extension() == ".csv" ? PlotFormat::csv : PlotFormat::svg;
}

struct DetectFlags {
  std::string method = "srmd-f";
  double quantile = 0.993;
  double inflation = 1.5;
  Index directions = kDefaultDirections;
  std::uint64_t seed = kDefaultDirectionSeed;
  std::string cutoff_mode = "f";
  Index starts = 500;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--method", method, "Detection rule")
        ->check(CLI::IsMember({"srmd-f", "boxplot"}))
        ->capture_default_str();
    cmd->add_option("--quantile", quantile, "F-cutoff quantile q")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--inflation", inflation, "Boxplot inflation factor k")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--directions", directions, "Random projection directions K (p >= 2)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Seed for projection directions and MCD starts")->capture_default_str();
    cmd->add_option("--cutoff-mode", cutoff_mode, "SRMD cutoff: scaled F (predicted df), calibrated F, chi-square")
        ->check(CLI::IsMember({"f", "f-calibrated", "chisq"}))
        ->capture_default_str();
    cmd->add_option("--starts", starts, "FastMCD random starts")->check(CLI::PositiveNumber)->capture_default_str();
  }

  DetectorConfig config() const {
    if (!(quantile > 0.0 && quantile < 1.0)) throw Error(Errc::DomainError, "--quantile must lie in (0, 1)");
    DetectorConfig c;
    c.method = method == "boxplot" ? DetectMethod::boxplot : DetectMethod::srmd_f;
    c.quantile = quantile;
    c.inflation = inflation;
    c.directions = directions;
    c.direction_seed = seed;
    c.mcd_seed = seed;
    c.mcd_starts = starts;
    c.cutoff.method = cutoff_mode == "chisq"          ? CutoffMethod::chi_square
                      : cutoff_mode == "f-calibrated" ? CutoffMethod::f_calibrated
                                                      : CutoffMethod::f_predicted;
    return c;
  }

  json to_json() const {
    return json{{"method", method},         {"quantile", quantile}, {"inflation", inflation},
                {"directions", directions}, {"seed", seed},         {"cutoff_mode", cutoff_mode},
                {"starts", starts}};
  }
};

struct ModelFlags {
  int model = 1;
  Index n = 100;
  double c = 0.1;
  Index m = 50;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--model", model, "Simulation model 1..5")->capture_default_str();
    cmd->add_option("--n", n, "Sample size")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--c", c, "Contamination level in [0, 1)")->capture_default_str();
    cmd->add_option("--m", m, "Grid points on [0, 1]")->capture_default_str();
  }

  ModelSpec spec(std::uint64_t seed) const { return ModelSpec{model, n, c, m, seed}; }

  json to_json() const { return json{{"model", model}, {"n", n}, {"c", c}, {"m", m}}; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional directional outlyingness: MS-plots and outlier detection"};
  app.require_subcommand(1);
  app.fallthrough();
  Index workers = 1;
  app.add_option("--workers", workers, "Maximum concurrent workers")->check(CLI::PositiveNumber)->capture_default_str();

  // detect
  auto* detect = app.add_subcommand("detect", "Compute MO/VO/FO and flag outlying curves");
  std::string detect_input, detect_out, detect_svg, detect_truth;
  DetectFlags detect_flags;
  detect->add_option("--input", detect_input, "Long-format CSV (curve_id,t,dim_1..dim_p)")->required();
  detect->add_option("--out", detect_out, "Result CSV")->required();
  detect->add_option("--svg", detect_svg, "Optional MS-plot SVG");
  detect->add_option("--truth", detect_truth, "Optional truth CSV (curve_id,outlier) used for mark styling");
  detect_flags.add_to(detect);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Generate a labeled sample from models 1..5");
  ModelFlags sim_model;
  std::uint64_t sim_seed = 1;
  std::string sim_out, sim_truth;
  sim_model.add_to(simulate);
  simulate->add_option("--seed", sim_seed, "Random seed")->capture_default_str();
  simulate->add_option("--out", sim_out, "Long-format CSV of the curves")->required();
  simulate->add_option("--truth", sim_truth, "Truth CSV (curve_id,outlier)");

  // bench
  auto* bench = app.add_subcommand("bench", "Seeded replications with correct/false detection rates");
  ModelFlags bench_model;
  DetectFlags bench_flags;
  Index reps = 200;
  std::uint64_t bench_seed = 1;
  std::string bench_out, bench_summary;
  Index bench_component = 0;
  bench_model.add_to(bench);
  bench->add_option("--reps", reps, "Replications")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--out", bench_out, "Per-replication CSV (rep,p_c,p_f)")->required();
  bench->add_option("--summary", bench_summary, "Summary CSV (statistic,value)");
  auto* component_opt =
      bench->add_option("--component", bench_component, "Detect on this response dimension only (1-based)")
          ->check(CLI::PositiveNumber);
  bench_flags.add_to(bench);
  bench->get_option("--seed")->description("Base seed for replications, directions and MCD");
  bench->get_option("--seed")->default_val(1);

  // array
  auto* array = app.add_subcommand("array", "MS-plot array for multivariate curves");
  std::string array_input, array_out;
  Index array_dirs = kDefaultDirections;
  std::uint64_t array_seed = kDefaultDirectionSeed;
  array->add_option("--input", array_input, "Long-format CSV")->required();
  array->add_option("--out", array_out, "SVG output")->required();
  array->add_option("--directions", array_dirs, "Random projection directions")->capture_default_str();
  array->add_option("--seed", array_seed, "Direction seed")->capture_default_str();

  // outliergram
  auto* og = app.add_subcommand("outliergram", "Outliergram of (|MO|, FO)");
  std::string og_input, og_out;
  Index og_dirs = kDefaultDirections;
  std::uint64_t og_seed = kDefaultDirectionSeed;
  og->add_option("--input", og_input, "Long-format CSV")->required();
  og->add_option("--out", og_out, "SVG output (.csv for data)")->required();
  og->add_option("--directions", og_dirs, "Random projection directions")->capture_default_str();
  og->add_option("--seed", og_seed, "Direction seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*detect) {
      const auto sample = parse_long_csv(read_file(detect_input));
      const auto config = detect_flags.config();
      const auto detection = detect_outliers(sample, config);
      write_file(detect_out, write_result_csv(sample.ids(), detection));
      json manifest{{"subcommand", "detect"}, {"input", detect_input}, {"out", detect_out}};
      manifest.update(detect_flags.to_json());
      manifest["curves"] = sample.curves();
      manifest["points"] = sample.points();
      manifest["dims"] = sample.dims();
      if (detection.result.method == DetectMethod::srmd_f) {
        manifest["cutoff"] = detection.result.cutoff;
        manifest["mcd_subset_size"] = detection.result.fit->h;
      }
      manifest["flagged"] = detection.result.flagged_count();
      if (!detect_svg.empty()) {
        std::vector<bool> truth;
        if (!detect_truth.empty()) truth = parse_truth_csv(read_file(detect_truth), sample.ids());
        MsPlotOptions opt;
        opt.mode = sample.dims() <= 2 ? MsMode::full : MsMode::norm;
        opt.detection = &detection.result;
        opt.truth = detect_truth.empty() ? nullptr : &truth;
        write_file(detect_svg, emit_msplot(detection.summary, sample.ids(), opt).payload);
        manifest["svg"] = detect_svg;
      }
      write_manifest(detect_out, manifest, workers);
      std::cout << detection.result.flagged_count() << " of " << sample.curves() << " curves flagged\n";
    } else if (*simulate) {
      const auto data = model_sample(sim_model.spec(sim_seed));
      write_file(sim_out, write_long_csv(data.sample));
      if (!sim_truth.empty()) write_file(sim_truth, write_truth_csv(data.sample.ids(), data.truth));
      json manifest{{"subcommand", "simulate"}, {"seed", sim_seed}, {"out", sim_out}, {"truth", sim_truth}};
      manifest.update(sim_model.to_json());
      write_manifest(sim_out, manifest, workers);
    } else if (*bench) {
      BenchOptions opt;
      opt.reps = reps;
      opt.seed = bench_flags.seed;
      opt.workers = workers;
      if (component_opt->count() > 0) opt.component = bench_component - 1;
      const auto summary = run_benchmark(bench_model.spec(bench_flags.seed), bench_flags.config(), opt);
      write_file(bench_out, write_rates_csv(summary));
      if (!bench_summary.empty()) write_file(bench_summary, write_rate_summary_csv(summary));
      json manifest{{"subcommand", "bench"}, {"reps", reps}, {"out", bench_out}, {"summary", bench_summary}};
      manifest.update(bench_model.to_json());
      manifest.update(bench_flags.to_json());
      if (opt.component) manifest["component"] = bench_component;
      manifest["p_c_mean"] = summary.correct.mean;
      manifest["p_f_mean"] = summary.false_.mean;
      write_manifest(bench_out, manifest, workers);
      std::cout << "mean p_c = " << format_double(summary.correct.mean)
                << ", mean p_f = " << format_double(summary.false_.mean) << "\n";
    } else if (*array) {
      const auto sample = parse_long_csv(read_file(array_input));
      write_file(array_out, emit_msplot_array(ms_array_data(sample, array_dirs, array_seed)).payload);
      write_manifest(array_out, json{{"subcommand", "array"},
                                     {"input", array_input},
                                     {"out", array_out},
                                     {"directions", array_dirs},
                                     {"seed", array_seed}},
                     workers);
    } else if (*og) {
      const auto sample = parse_long_csv(read_file(og_input));
      const auto summary = sample.dims() == 1
                               ? summarize(sample)
                               : summarize(sample, sample_directions(og_dirs, sample.dims(), og_seed));
      write_file(og_out, emit_outliergram(summary, sample.ids(), format_for(og_out)).payload);
      write_manifest(og_out, json{{"subcommand", "outliergram"},
                                  {"input", og_input},
                                  {"out", og_out},
                                  {"directions", og_dirs},
                                  {"seed", og_seed}},
                     workers);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_numerical(e.code()) ? kExitNumerical : kExitInput;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
