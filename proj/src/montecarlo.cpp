#include "sphangle/montecarlo.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sphangle/angles.hpp"
#include "sphangle/csv.hpp"
#include "sphangle/inference.hpp"
#include "sphangle/limit_laws.hpp"
#include "sphangle/parallel.hpp"
#include "sphangle/sphere.hpp"

namespace sphangle {

namespace {

using nlohmann::ordered_json;

constexpr KernelOptions kSingleThreadKernel{64, 1};

double normal_cdf(double x) { return 0.5 * std::erfc(-x / M_SQRT2); }

std::string study_kind_name(StudyKind kind) {
  switch (kind) {
    case StudyKind::kPowerStudy: return "power-study";
    case StudyKind::kFigureData: return "figure-data";
    case StudyKind::kConvergenceStudy: return "convergence-study";
    case StudyKind::kSumLawStudy: return "sum-law-study";
  }
  return "unknown";
}

std::string target_name(ConvergenceTarget t) {
  switch (t) {
    case ConvergenceTarget::kFixedP: return "fixed-p";
    case ConvergenceTarget::kEmpiricalClt: return "empirical-clt";
    case ConvergenceTarget::kSubexp: return "subexp";
    case ConvergenceTarget::kExpRegime: return "exp-regime";
    case ConvergenceTarget::kSuperexp: return "superexp";
    case ConvergenceTarget::kCosSquare: return "cos2";
  }
  return "unknown";
}

double median_of(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of an empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

/// Extremes of `replicates` independent uniform configurations on S^{p-1}.
/// Replicate r draws from SeedSpec(master_seed, stream_base + r); workers
/// fill disjoint slots, so the result is identical for every thread count.
std::vector<AngleExtremes> simulate_extremes(std::size_t n, std::size_t p,
                                             std::size_t replicates,
                                             std::uint64_t master_seed,
                                             std::uint64_t stream_base, unsigned threads) {
  std::vector<AngleExtremes> out(replicates);
  parallel_for(replicates, threads, [&](std::size_t r) {
    const PointSet pts = sample_uniform_sphere(n, p, {master_seed, stream_base + r});
    out[r] = pairwise_extremes(pts, kSingleThreadKernel);
  });
  return out;
}

ReportTable make_histogram(const std::string& name, const std::vector<double>& values,
                           std::size_t bins = 40) {
  if (values.empty()) throw std::invalid_argument("histogram of an empty sample");
  const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
  double lo = *mn_it, hi = *mx_it;
  if (hi <= lo) hi = lo + 1e-12;  // degenerate sample: one nonempty bin
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::size_t> counts(bins, 0);
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    if (b >= bins) b = bins - 1;  // v == hi lands in the last bin
    ++counts[b];
  }
  ReportTable t{name, {"bin_lo", "bin_hi", "density"}, {}};
  const double denom = static_cast<double>(values.size()) * width;
  for (std::size_t b = 0; b < bins; ++b) {
    t.rows.push_back(
        {lo + width * static_cast<double>(b), lo + width * static_cast<double>(b + 1),
         static_cast<double>(counts[b]) / denom});
  }
  return t;
}

ReportTable raw_table(const std::string& name, const std::vector<double>& values) {
  ReportTable t{name, {"value"}, {}};
  t.rows.reserve(values.size());
  for (double v : values) t.rows.push_back({v});
  return t;
}

ReportTable curve_table(const std::string& name, double lo, double hi, std::size_t points,
                        const std::function<double(double)>& f) {
  ReportTable t{name, {"x", "density"}, {}};
  for (std::size_t i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    t.rows.push_back({x, f(x)});
  }
  return t;
}

std::string cell_context(const ReportCell& cell) {
  std::string out = "cell";
  for (const auto& [k, v] : cell.labels) out += " " + k + "=" + v;
  return out;
}

[[noreturn]] void rethrow_with_cell(const ReportCell& cell) {
  try {
    throw;
  } catch (const std::exception& e) {
    throw std::runtime_error(cell_context(cell) + ": " + e.what());
  }
}

void require_pivot_health(std::size_t undefined, std::size_t replicates) {
  // Clamping pathologies, not statistics: fail loudly past 0.1%.
  if (static_cast<double>(undefined) > 0.001 * static_cast<double>(replicates)) {
    throw std::runtime_error("pivot undefined in " + std::to_string(undefined) + " of " +
                             std::to_string(replicates) + " replicates (> 0.1%)");
  }
}

}  // namespace

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("KS distance of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double c = cdf(samples[i]);
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / m - c));
    d = std::max(d, std::fabs(static_cast<double>(i) / m - c));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Studies
// ---------------------------------------------------------------------------

ExperimentReport run_power_study(const ExperimentSpec& spec, const RunOptions& options) {
  ExperimentReport report;
  report.spec = spec;
  report.tolerance_note =
      "power cells carry binomial standard errors se <= sqrt(0.25/replicates)";
  const auto start = std::chrono::steady_clock::now();

  std::uint64_t stream_base = 0;
  for (std::size_t n : spec.n_values) {
    for (std::size_t p : spec.p_values) {
      for (int dist : spec.dist_ids) {
        ReportCell cell;
        cell.labels = {{"n", std::to_string(n)},
                       {"p", std::to_string(p)},
                       {"dist", std::to_string(dist)}};
        const std::uint64_t cell_base = stream_base;
        stream_base += spec.replicates;
        std::vector<char> rejected(spec.replicates, 0);
        try {
          parallel_for(spec.replicates, options.threads, [&](std::size_t r) {
            const DataMatrix data =
                sample_dgp(dist, n, p, {spec.master_seed, cell_base + r});
            rejected[r] = packing_test(data, spec.alpha, kSingleThreadKernel).reject ? 1 : 0;
          });
        } catch (...) {
          rethrow_with_cell(cell);
        }
        const auto rejections = static_cast<std::size_t>(
            std::count(rejected.begin(), rejected.end(), char{1}));
        const double rate =
            static_cast<double>(rejections) / static_cast<double>(spec.replicates);
        cell.values = {
            {"stream_base", static_cast<double>(cell_base)},
            {"power_percent", 100.0 * rate},
            {"se_percent",
             100.0 * std::sqrt(rate * (1.0 - rate) / static_cast<double>(spec.replicates))},
            {"rejections", static_cast<double>(rejections)},
            {"replicates", static_cast<double>(spec.replicates)},
        };
        report.cells.push_back(std::move(cell));
      }
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ExperimentReport run_convergence_study(const ExperimentSpec& spec, const RunOptions& options) {
  ExperimentReport report;
  report.spec = spec;
  report.tolerance_note =
      "KS acceptance tolerances are pre-registered from pilot runs at twice the target n "
      "showing strictly smaller distances; the limit laws are asymptotic, finite-(n,p) bands are "
      "an artifact decision";
  const auto start = std::chrono::steady_clock::now();

  std::uint64_t stream_base = 0;
  for (std::size_t n : spec.n_values) {
    for (std::size_t p : spec.p_values) {
      ReportCell cell;
      cell.labels = {{"n", std::to_string(n)},
                     {"p", std::to_string(p)},
                     {"target", target_name(spec.target)}};
      const std::uint64_t cell_base = stream_base;
      stream_base += spec.replicates;
      try {
        if (spec.target == ConvergenceTarget::kEmpiricalClt) {
          std::vector<double> ks_per_rep(spec.replicates);
          parallel_for(spec.replicates, options.threads, [&](std::size_t r) {
            const PointSet pts = sample_uniform_sphere(n, p, {spec.master_seed, cell_base + r});
            const AngleSet angles = pairwise_angles(pts, kSingleThreadKernel);
            ks_per_rep[r] = ks_distance(normalized_empirical(angles).sorted_samples(), normal_cdf);
          });
          cell.values = {
              {"stream_base", static_cast<double>(cell_base)},
              {"ks_first", ks_per_rep.front()},
              {"ks_mean", std::accumulate(ks_per_rep.begin(), ks_per_rep.end(), 0.0) /
                              static_cast<double>(spec.replicates)},
              {"ks_max", *std::max_element(ks_per_rep.begin(), ks_per_rep.end())},
              {"replicates", static_cast<double>(spec.replicates)},
          };
          report.cells.push_back(std::move(cell));
          continue;
        }

        const auto extremes = simulate_extremes(n, p, spec.replicates, spec.master_seed,
                                                cell_base, options.threads);

        if (spec.target == ConvergenceTarget::kFixedP) {
          const double scale =
              std::pow(static_cast<double>(n), 2.0 / (static_cast<double>(p) - 1.0));
          std::vector<double> stat_min, stat_max;
          std::size_t undefined = 0;
          for (const auto& ex : extremes) {
            if (ex.theta_min <= 0.0 || ex.theta_max >= M_PI) {
              ++undefined;
              continue;
            }
            stat_min.push_back(scale * ex.theta_min);
            stat_max.push_back(scale * (M_PI - ex.theta_max));
          }
          require_pivot_health(undefined, spec.replicates);
          const auto cdf = [p](double x) { return fixed_p_extreme_cdf(x, p); };
          cell.values = {
              {"stream_base", static_cast<double>(cell_base)},
              {"ks", ks_distance(stat_min, cdf)},
              {"ks_max_side", ks_distance(stat_max, cdf)},
              {"median_statistic", median_of(stat_min)},
              {"undefined", static_cast<double>(undefined)},
              {"replicates", static_cast<double>(spec.replicates)},
          };
          report.cells.push_back(std::move(cell));
          continue;
        }

        // Pivot targets.
        PivotSpec pivot;
        pivot.n = n;
        pivot.p = p;
        double alpha_hat = 0.0;
        std::function<double(double)> cdf;
        switch (spec.target) {
          case ConvergenceTarget::kSubexp:
            pivot.kind = PivotKind::kSubExponential;
            cdf = subexp_pivot_cdf;
            break;
          case ConvergenceTarget::kExpRegime:
            pivot.kind = PivotKind::kExponential;
            pivot.beta = spec.beta;
            cdf = [b = spec.beta](double y) { return exp_regime_pivot_cdf(y, b); };
            break;
          case ConvergenceTarget::kSuperexp:
            pivot.kind = PivotKind::kSuperExponential;
            cdf = superexp_pivot_cdf;
            break;
          case ConvergenceTarget::kCosSquare:
            pivot.kind = PivotKind::kCosSquare;
            alpha_hat = std::log(static_cast<double>(n)) / std::sqrt(static_cast<double>(p));
            pivot.alpha = alpha_hat;
            cdf = [alpha_hat](double y) { return cos_square_pivot_cdf(y, alpha_hat); };
            break;
          default:
            throw std::logic_error("unreachable convergence target");
        }

        std::vector<double> piv_min, piv_max;
        std::size_t undefined = 0;
        for (const auto& ex : extremes) {
          const double a = pivot_transform(ex, pivot, WhichExtreme::kMin);
          const double b = pivot_transform(ex, pivot, WhichExtreme::kMax);
          if (!std::isfinite(a) || !std::isfinite(b)) {
            ++undefined;
            continue;
          }
          piv_min.push_back(a);
          piv_max.push_back(b);
        }
        require_pivot_health(undefined, spec.replicates);

        cell.values = {
            {"stream_base", static_cast<double>(cell_base)},
            {"ks", ks_distance(piv_min, cdf)},
            {"ks_max_side", ks_distance(piv_max, cdf)},
            {"undefined", static_cast<double>(undefined)},
            {"replicates", static_cast<double>(spec.replicates)},
        };
        if (spec.target == ConvergenceTarget::kExpRegime) {
          std::vector<double> tmin, tmax;
          tmin.reserve(extremes.size());
          tmax.reserve(extremes.size());
          for (const auto& ex : extremes) {
            tmin.push_back(ex.theta_min);
            tmax.push_back(ex.theta_max);
          }
          const auto limits = exp_regime_limit_angle(spec.beta);
          cell.values.emplace_back("theta_min_median", median_of(tmin));
          cell.values.emplace_back("theta_max_median", median_of(tmax));
          cell.values.emplace_back("theta_min_limit", limits.first);
          cell.values.emplace_back("theta_max_limit", limits.second);
        }
        if (spec.target == ConvergenceTarget::kCosSquare) {
          cell.values.emplace_back("alpha_hat", alpha_hat);
        }
        report.cells.push_back(std::move(cell));

      } catch (...) {
        rethrow_with_cell(cell);
      }
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ExperimentReport run_sum_law_study(const ExperimentSpec& spec, const RunOptions& options) {
  ExperimentReport report;
  report.spec = spec;
  report.tolerance_note =
      "sign band is the binomial 3-sigma interval at the configured replicate count; KS "
      "tolerance pilot-calibrated as in convergence studies";
  const auto start = std::chrono::steady_clock::now();

  std::uint64_t stream_base = 0;
  for (std::size_t n : spec.n_values) {
    for (std::size_t p : spec.p_values) {
      const std::uint64_t cell_base = stream_base;
      const auto extremes = simulate_extremes(n, p, spec.replicates, spec.master_seed,
                                              cell_base, options.threads);
      stream_base += spec.replicates;
      const double scale =
          std::pow(static_cast<double>(n), 2.0 / (static_cast<double>(p) - 1.0));
      std::vector<double> sums;
      sums.reserve(extremes.size());
      std::size_t positive = 0;
      for (const auto& ex : extremes) {
        const double s = scale * (ex.theta_min + ex.theta_max - M_PI);
        if (s > 0.0) ++positive;
        sums.push_back(s);
      }
      const auto cdf = [p](double z) { return sum_law_cdf(z, p); };
      ReportCell cell;
      cell.labels = {{"n", std::to_string(n)}, {"p", std::to_string(p)}};
      cell.values = {
          {"stream_base", static_cast<double>(cell_base)},
          {"sign_positive_fraction",
           static_cast<double>(positive) / static_cast<double>(spec.replicates)},
          {"positive_signs", static_cast<double>(positive)},
          {"ks", ks_distance(sums, cdf)},
          {"median_sum", median_of(sums)},
          {"replicates", static_cast<double>(spec.replicates)},
      };
      report.cells.push_back(std::move(cell));
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ExperimentReport figure_data(const ExperimentSpec& spec, const RunOptions& options) {
  ExperimentReport report;
  report.spec = spec;
  report.tolerance_note = "histograms use 40 equal-width bins; raw samples are authoritative";
  const auto start = std::chrono::steady_clock::now();

  if (spec.fig_id == 1) {
    ReportTable t{"fig1_curves", {"theta", "hp_p4", "hp_p5", "hp_p10", "hp_p20", "normal"}, {}};
    const std::size_t grid = 201;
    for (std::size_t i = 0; i < grid; ++i) {
      const double theta = M_PI * static_cast<double>(i) / static_cast<double>(grid - 1);
      t.rows.push_back({theta, normalized_angle_density(theta, 4),
                        normalized_angle_density(theta, 5), normalized_angle_density(theta, 10),
                        normalized_angle_density(theta, 20),
                        std::exp(-theta * theta / 2.0) / std::sqrt(2.0 * M_PI)});
    }
    report.tables.push_back(std::move(t));
    ReportCell cell;
    cell.labels = {{"fig", "1"}};
    cell.values = {{"stream_base", 0.0}, {"grid_points", static_cast<double>(grid)}};
    report.cells.push_back(std::move(cell));
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }

  const std::size_t p = spec.fig_id == 2 ? 2 : (spec.fig_id == 3 ? 3 : 30);
  const std::size_t n = spec.n_values.empty() ? 50 : spec.n_values.front();
  const std::size_t reps = spec.replicates;
  const std::string tag = "fig" + std::to_string(spec.fig_id);
  const bool normalized = p >= 3;

  // Panel samples, one slot per replicate.
  std::vector<std::vector<double>> panel_ab(reps);
  std::vector<double> stat_c(reps), sum_d(reps);
  parallel_for(reps, options.threads, [&](std::size_t r) {
    const PointSet pts = sample_uniform_sphere(n, p, {spec.master_seed, r});
    const AngleSet angles = pairwise_angles(pts, kSingleThreadKernel);
    panel_ab[r] = normalized ? normalized_empirical(angles).sorted_samples() : angles.angles;
    const AngleExtremes ex = extremes(angles);
    stat_c[r] = std::pow(static_cast<double>(n), 2.0 / (static_cast<double>(p) - 1.0)) *
                ex.theta_min;
    sum_d[r] = ex.theta_min + ex.theta_max;
  });

  std::vector<double> pooled;
  pooled.reserve(reps * panel_ab.front().size());
  for (const auto& v : panel_ab) pooled.insert(pooled.end(), v.begin(), v.end());

  report.tables.push_back(make_histogram(tag + "_a_hist", panel_ab.front()));
  report.tables.push_back(raw_table(tag + "_a_raw", panel_ab.front()));
  report.tables.push_back(make_histogram(tag + "_b_hist", pooled));
  report.tables.push_back(raw_table(tag + "_b_raw", pooled));
  {
    const auto [lo_it, hi_it] = std::minmax_element(pooled.begin(), pooled.end());
    const std::size_t pc = p;
    report.tables.push_back(curve_table(
        tag + "_ab_curve", *lo_it, *hi_it, 201, [pc, normalized](double x) {
          return normalized ? normalized_angle_density(x, pc) : angle_density(x, pc);
        }));
  }
  report.tables.push_back(make_histogram(tag + "_c_hist", stat_c));
  report.tables.push_back(raw_table(tag + "_c_raw", stat_c));
  {
    const double hi = *std::max_element(stat_c.begin(), stat_c.end()) * 1.05;
    const std::size_t pc = p;
    report.tables.push_back(curve_table(tag + "_c_curve", 0.0, hi, 201, [pc](double x) {
      return fixed_p_extreme_pdf(x, pc);
    }));
  }
  report.tables.push_back(make_histogram(tag + "_d_hist", sum_d));
  report.tables.push_back(raw_table(tag + "_d_raw", sum_d));

  ReportCell cell;
  cell.labels = {{"fig", std::to_string(spec.fig_id)},
                 {"n", std::to_string(n)},
                 {"p", std::to_string(p)}};
  cell.values = {
      {"stream_base", 0.0},
      {"replicates", static_cast<double>(reps)},
      {"sum_median", median_of(sum_d)},
      {"stat_median", median_of(stat_c)},
  };
  report.cells.push_back(std::move(cell));
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ExperimentReport run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  switch (spec.kind) {
    case StudyKind::kPowerStudy: return run_power_study(spec, options);
    case StudyKind::kConvergenceStudy: return run_convergence_study(spec, options);
    case StudyKind::kSumLawStudy: return run_sum_law_study(spec, options);
    case StudyKind::kFigureData: return figure_data(spec, options);
  }
  throw std::logic_error("unreachable study kind");
}

// ---------------------------------------------------------------------------
// Report plumbing
// ---------------------------------------------------------------------------

double ReportCell::value(const std::string& key) const {
  for (const auto& [k, v] : values) {
    if (k == key) return v;
  }
  throw std::out_of_range("no value named \"" + key + "\" in report cell");
}

std::string ReportTable::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out.push_back(',');
    out += columns[c];
  }
  out.push_back('\n');
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out.push_back(',');
      out += format_double(row[c]);
    }
    out.push_back('\n');
  }
  return out;
}

nlohmann::ordered_json ExperimentReport::spec_json() const {
  ordered_json j;
  j["kind"] = study_kind_name(spec.kind);
  j["n"] = spec.n_values;
  j["p"] = spec.p_values;
  j["replicates"] = spec.replicates;
  j["alpha"] = spec.alpha;
  j["dist_ids"] = spec.dist_ids;
  j["target"] = target_name(spec.target);
  j["beta"] = spec.beta;
  j["fig_id"] = spec.fig_id;
  j["master_seed"] = spec.master_seed;
  return j;
}

nlohmann::ordered_json ExperimentReport::results_json() const {
  ordered_json j;
  j["cells"] = ordered_json::array();
  for (const auto& cell : cells) {
    ordered_json c;
    c["labels"] = ordered_json::object();
    for (const auto& [k, v] : cell.labels) c["labels"][k] = v;
    c["values"] = ordered_json::object();
    for (const auto& [k, v] : cell.values) c["values"][k] = v;
    j["cells"].push_back(std::move(c));
  }
  j["tables"] = ordered_json::array();
  for (const auto& t : tables) {
    ordered_json entry;
    entry["name"] = t.name;
    entry["columns"] = t.columns;
    entry["rows"] = t.rows.size();
    entry["digest"] = fnv1a_hex(t.to_csv());
    j["tables"].push_back(std::move(entry));
  }
  return j;
}

nlohmann::ordered_json ExperimentReport::to_json(const std::string& tool_version) const {
  ordered_json j;
  j["schema_version"] = 1;
  j["kind"] = study_kind_name(spec.kind);
  j["spec"] = spec_json();
  j["results"] = results_json();
  ordered_json prov;
  prov["master_seed"] = spec.master_seed;
  prov["replicate_streams"] =
      "replicate r of cell c (cells numbered in report order) uses "
      "SeedSpec(master_seed, c*replicates + r); no two replicates share a stream";
  prov["tool_version"] = tool_version;
  prov["tolerance_note"] = tolerance_note;
  prov["wall_seconds"] = wall_seconds;
  j["provenance"] = std::move(prov);
  return j;
}

const ReportCell& ExperimentReport::cell(
    const std::vector<std::pair<std::string, std::string>>& labels) const {
  const ReportCell* found = nullptr;
  for (const auto& c : cells) {
    bool all = true;
    for (const auto& want : labels) {
      if (std::find(c.labels.begin(), c.labels.end(), want) == c.labels.end()) {
        all = false;
        break;
      }
    }
    if (all) {
      if (found) throw std::out_of_range("cell labels match more than one cell");
      found = &c;
    }
  }
  if (!found) throw std::out_of_range("no cell matches the requested labels");
  return *found;
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

namespace {

std::string trim(std::string s) {
  const auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  try {
    std::size_t pos = 0;
    out = std::stoull(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

}  // namespace

std::string experiment_config_reference() {
  return "experiment config: one `key = value` per line, `#` starts a comment\n"
         "  kind         power-study | convergence-study | sum-law-study | figure-data\n"
         "  n            integer or comma list, points per configuration\n"
         "  p            integer or comma list, ambient dimension\n"
         "  replicates   integer >= 1\n"
         "  alpha        significance level in (0,1)  [power-study]\n"
         "  dist_ids     comma list from 0..5         [power-study]\n"
         "  target       fixed-p | empirical-clt | subexp | exp-regime | superexp |\n"
         "               cos^2 pivot                    [convergence-study]\n"
         "  beta         positive real                [target = exp-regime]\n"
         "  fig_id       1..4                         [figure-data]\n"
         "  master_seed  64-bit unsigned, default 0\n";
}

ExperimentSpec parse_experiment_config(const std::string& text, const std::string& origin) {
  ExperimentSpec spec;
  std::vector<std::string> errors;
  bool saw_kind = false, saw_target = false, saw_beta = false, saw_fig = false;
  bool saw_n = false, saw_p = false, saw_reps = false, saw_dists = false;

  const auto fail = [&errors, &origin](std::size_t lineno, const std::string& message) {
    errors.push_back(origin + ":" + std::to_string(lineno) + ": " + message);
  };

  const auto parse_size_list = [](const std::string& value, std::vector<std::size_t>& out) {
    out.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(item, &pos);
        if (pos != item.size() || v == 0) return false;
        out.push_back(static_cast<std::size_t>(v));
      } catch (...) {
        return false;
      }
    }
    return !out.empty();
  };

  std::size_t lineno = 0;
  std::stringstream lines(text);
  std::string raw;
  while (std::getline(lines, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail(lineno, "expected `key = value`");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) {
      fail(lineno, "empty value for key \"" + key + "\"");
      continue;
    }

    if (key == "kind") {
      saw_kind = true;
      if (value == "power-study") spec.kind = StudyKind::kPowerStudy;
      else if (value == "convergence-study") spec.kind = StudyKind::kConvergenceStudy;
      else if (value == "sum-law-study") spec.kind = StudyKind::kSumLawStudy;
      else if (value == "figure-data") spec.kind = StudyKind::kFigureData;
      else fail(lineno, "unknown kind \"" + value + "\"");
    } else if (key == "n") {
      saw_n = parse_size_list(value, spec.n_values);
      if (!saw_n) fail(lineno, "n must be a comma list of positive integers");
    } else if (key == "p") {
      saw_p = parse_size_list(value, spec.p_values);
      if (!saw_p) fail(lineno, "p must be a comma list of positive integers");
    } else if (key == "replicates") {
      std::vector<std::size_t> tmp;
      if (parse_size_list(value, tmp) && tmp.size() == 1) {
        spec.replicates = tmp[0];
        saw_reps = true;
      } else {
        fail(lineno, "replicates must be a single positive integer");
      }
    } else if (key == "alpha") {
      try {
        std::size_t pos = 0;
        spec.alpha = std::stod(value, &pos);
        if (pos != value.size() || !(spec.alpha > 0.0 && spec.alpha < 1.0)) {
          fail(lineno, "alpha must lie in (0, 1)");
        }
      } catch (...) {
        fail(lineno, "alpha must be a real number");
      }
    } else if (key == "dist_ids") {
      spec.dist_ids.clear();
      std::vector<std::size_t> tmp;
      bool ok = true;
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.size() != 1 || item[0] < '0' || item[0] > '5') {
          ok = false;
          break;
        }
        spec.dist_ids.push_back(item[0] - '0');
      }
      if (!ok || spec.dist_ids.empty()) fail(lineno, "dist_ids must be a comma list from 0..5");
      else saw_dists = true;
    } else if (key == "target") {
      saw_target = true;
      if (value == "fixed-p") spec.target = ConvergenceTarget::kFixedP;
      else if (value == "empirical-clt") spec.target = ConvergenceTarget::kEmpiricalClt;
      else if (value == "subexp") spec.target = ConvergenceTarget::kSubexp;
      else if (value == "exp-regime") spec.target = ConvergenceTarget::kExpRegime;
      else if (value == "superexp") spec.target = ConvergenceTarget::kSuperexp;
      else if (value == "cos2") spec.target = ConvergenceTarget::kCosSquare;
      else fail(lineno, "unknown target \"" + value + "\"");
    } else if (key == "beta") {
      try {
        std::size_t pos = 0;
        spec.beta = std::stod(value, &pos);
        if (pos != value.size() || !(spec.beta > 0.0)) fail(lineno, "beta must be positive");
        else saw_beta = true;
      } catch (...) {
        fail(lineno, "beta must be a real number");
      }
    } else if (key == "fig_id") {
      if (value.size() == 1 && value[0] >= '1' && value[0] <= '4') {
        spec.fig_id = value[0] - '0';
        saw_fig = true;
      } else {
        fail(lineno, "fig_id must be 1..4");
      }
    } else if (key == "master_seed") {
      std::uint64_t seed = 0;
      if (parse_u64(value, seed)) spec.master_seed = seed;
      else fail(lineno, "master_seed must be a 64-bit unsigned integer");
    } else {
      fail(lineno, "unknown key \"" + key + "\"");
    }
  }

  if (!saw_kind) {
    errors.push_back(origin + ": missing required key \"kind\"");
  } else {
    const auto require = [&](bool present, const char* key) {
      if (!present) {
        errors.push_back(origin + ": missing required key \"" + std::string(key) +
                         "\" for kind " + study_kind_name(spec.kind));
      }
    };
    switch (spec.kind) {
      case StudyKind::kPowerStudy:
        require(saw_n, "n");
        require(saw_p, "p");
        require(saw_reps, "replicates");
        require(saw_dists, "dist_ids");
        break;
      case StudyKind::kConvergenceStudy:
        require(saw_n, "n");
        require(saw_p, "p");
        require(saw_reps, "replicates");
        require(saw_target, "target");
        if (saw_target && spec.target == ConvergenceTarget::kExpRegime) {
          require(saw_beta, "beta");
        }
        break;
      case StudyKind::kSumLawStudy:
        require(saw_n, "n");
        require(saw_p, "p");
        require(saw_reps, "replicates");
        break;
      case StudyKind::kFigureData:
        require(saw_fig, "fig_id");
        if (spec.fig_id != 1 && !saw_reps) spec.replicates = 200;
        break;
    }
  }

  if (!errors.empty()) {
    std::string all = "invalid experiment config (" + std::to_string(errors.size()) +
                      " problem(s)):";
    for (const auto& e : errors) all += "\n  " + e;
    throw std::runtime_error(all);
  }
  return spec;
}

}  // namespace sphangle
