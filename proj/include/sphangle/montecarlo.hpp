#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace sphangle {

enum class StudyKind { kPowerStudy, kFigureData, kConvergenceStudy, kSumLawStudy };

enum class ConvergenceTarget {
  kFixedP,        // n^{2/(p-1)} Theta_min vs the fixed-p extreme law
  kEmpiricalClt,  // mu_{n,p} vs the standard normal, per realization
  kSubexp,        // sub-exponential pivot vs its limit CDF
  kExpRegime,     // exponential-regime pivot and limit angles (needs beta)
  kSuperexp,      // super-exponential pivot vs its limit CDF
  kCosSquare,     // p cos^2 pivot vs its CDF with alpha-hat = log(n)/sqrt(p)
};

/// Declarative description of one reproducible Monte Carlo run. Parsed from a
/// "key = value" config file; see parse_experiment_config.
struct ExperimentSpec {
  StudyKind kind = StudyKind::kPowerStudy;
  std::vector<std::size_t> n_values;
  std::vector<std::size_t> p_values;
  std::size_t replicates = 1;
  double alpha = 0.05;
  std::vector<int> dist_ids;
  ConvergenceTarget target = ConvergenceTarget::kFixedP;
  double beta = 0.0;
  int fig_id = 0;
  std::uint64_t master_seed = 0;
};

/// Parses and validates config text. All schema violations are collected and
/// reported together in the exception message.
ExperimentSpec parse_experiment_config(const std::string& text, const std::string& origin);
std::string experiment_config_reference();

/// One (parameter combination) -> (named numbers) result row.
struct ReportCell {
  std::vector<std::pair<std::string, std::string>> labels;
  std::vector<std::pair<std::string, double>> values;

  double value(const std::string& key) const;
};

/// Numeric dataset behind one figure panel, written as CSV by the CLI.
struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const;
};

/// Results of a run. Everything under results_json() is a pure function of
/// the spec (independent of thread count and wall time); wall_seconds and
/// other provenance live only in the full report.
struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<ReportCell> cells;
  std::vector<ReportTable> tables;
  std::string tolerance_note;
  double wall_seconds = 0.0;

  nlohmann::ordered_json spec_json() const;
  nlohmann::ordered_json results_json() const;
  nlohmann::ordered_json to_json(const std::string& tool_version) const;

  const ReportCell& cell(const std::vector<std::pair<std::string, std::string>>& labels) const;
};

struct RunOptions {
  unsigned threads = 0;  // 0 = all available
};

/// Dispatches on spec.kind. Replicate r of any cell uses
/// SeedSpec(master_seed, r); replicates run in parallel and are reduced in
/// replicate order, so reports are identical for every thread count.
ExperimentReport run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

ExperimentReport run_power_study(const ExperimentSpec& spec, const RunOptions& options = {});
ExperimentReport run_convergence_study(const ExperimentSpec& spec,
                                       const RunOptions& options = {});
ExperimentReport run_sum_law_study(const ExperimentSpec& spec, const RunOptions& options = {});
ExperimentReport figure_data(const ExperimentSpec& spec, const RunOptions& options = {});

/// Kolmogorov-Smirnov distance between a sample and a reference CDF:
/// max_i max(|i/m - F(x_(i))|, |(i-1)/m - F(x_(i))|). Sorts a copy of the
/// sample; throws on an empty one.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace sphangle
