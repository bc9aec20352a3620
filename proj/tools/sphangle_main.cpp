// sphangle: sampling, limit laws and tests for pairwise angles of random
// points on high-dimensional spheres, plus a reproducible Monte Carlo
// harness. Exit codes: 0 success, 1 domain/runtime error, 2 usage error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sphangle/angles.hpp"
#include "sphangle/csv.hpp"
#include "sphangle/inference.hpp"
#include "sphangle/limit_laws.hpp"
#include "sphangle/montecarlo.hpp"
#include "sphangle/sphere.hpp"
#include "sphangle/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace sphangle;

namespace {

std::string iso_utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join_command_line(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out.push_back(' ');
    const std::string arg = argv[i];
    if (arg.find(' ') != std::string::npos) out += "\"" + arg + "\"";
    else out += arg;
  }
  return out;
}

struct ManifestWriter {
  std::string command_line;
  std::string started_at = iso_utc_now();
  ordered_json resolved_config = ordered_json::object();
  std::uint64_t master_seed = 0;
  std::vector<std::pair<std::string, std::string>> outputs;  // name -> digest

  void add_output(const fs::path& path, const std::string& content) {
    outputs.emplace_back(path.filename().string(), fnv1a_hex(content));
  }

  ordered_json json() const {
    ordered_json m;
    m["tool"] = "sphangle";
    m["tool_version"] = kToolVersion;
    m["command_line"] = command_line;
    m["master_seed"] = master_seed;
    m["resolved_config"] = resolved_config;
    m["started_at"] = started_at;
    m["finished_at"] = iso_utc_now();
    m["outputs"] = ordered_json::array();
    for (const auto& [name, digest] : outputs) {
      m["outputs"].push_back({{"file", name}, {"fnv1a64", digest}});
    }
    return m;
  }
};

void write_with_digest(ManifestWriter& manifest, const fs::path& path,
                       const std::string& content) {
  write_text_file(path, content);
  manifest.add_output(path, content);
}

std::string format_sig15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

// --- sample ---------------------------------------------------------------

struct SampleArgs {
  std::size_t n = 0, p = 0;
  std::uint64_t seed = 0, stream = 0;
  int dist = -1;
  std::string out;
};

int run_sample(const SampleArgs& args, ManifestWriter manifest) {
  manifest.master_seed = args.seed;
  manifest.resolved_config["n"] = args.n;
  manifest.resolved_config["p"] = args.p;
  manifest.resolved_config["seed"] = args.seed;
  manifest.resolved_config["stream"] = args.stream;
  if (args.dist >= 0) manifest.resolved_config["dist"] = args.dist;
  std::string csv;
  if (args.dist < 0) {
    const PointSet pts = sample_uniform_sphere(args.n, args.p, {args.seed, args.stream});
    csv = matrix_to_csv(pts.n, pts.p, pts.coords.data());
  } else {
    const DataMatrix data = sample_dgp(args.dist, args.n, args.p, {args.seed, args.stream});
    csv = matrix_to_csv(data.n, data.p, data.values.data());
  }
  if (args.out.empty()) {
    std::cout << csv;
    return 0;
  }
  const fs::path out(args.out);
  write_with_digest(manifest, out, csv);
  const fs::path mpath = out.string() + ".manifest.json";
  write_text_file(mpath, manifest.json().dump(2) + "\n");
  std::cout << "wrote " << out.string() << " (" << args.n << "x" << args.p << ")\n";
  return 0;
}

// --- angles ----------------------------------------------------------------

int run_angles(const std::string& input, const std::string& out, ManifestWriter manifest) {
  manifest.resolved_config["input"] = input;
  const DataMatrix data = read_matrix_csv(input);
  const PointSet pts = normalize_rows(data);
  const AngleSet set = pairwise_angles(pts);
  const AngleExtremes ex = extremes(set);

  ordered_json j;
  j["n"] = set.n;
  j["p"] = set.p;
  j["pairs"] = set.pair_count();
  j["theta_min"] = ex.theta_min;
  j["theta_max"] = ex.theta_max;
  j["m_n"] = ex.m_n;
  j["l_np"] = ex.l_np;
  std::cout << j.dump(2) << "\n";

  if (!out.empty()) {
    std::string csv = "i,j,cosine,angle\n";
    for (std::size_t i = 0; i < set.n; ++i) {
      for (std::size_t jcol = i + 1; jcol < set.n; ++jcol) {
        const std::size_t k = AngleSet::pair_index(i, jcol, set.n);
        csv += std::to_string(i) + "," + std::to_string(jcol) + "," +
               format_double(set.cosines[k]) + "," + format_double(set.angles[k]) + "\n";
      }
    }
    const fs::path opath(out);
    write_with_digest(manifest, opath, csv);
    write_text_file(opath.string() + ".manifest.json", manifest.json().dump(2) + "\n");
  }
  return 0;
}

// --- dist -------------------------------------------------------------------

struct DistArgs {
  std::string law;
  std::size_t p = 0;
  double beta = 0.0, alpha = 0.0;
  std::optional<double> at;
  std::optional<double> pdf_at;
  std::optional<double> quantile;
  std::string grid;  // a:b:m
  std::string out;
};

int run_dist(const DistArgs& args) {
  const LimitLaw law =
      LimitLaw::make(LimitLaw::parse_kind(args.law), args.p, args.beta, args.alpha);
  if (args.at) {
    std::cout << format_sig15(law.cdf(*args.at)) << "\n";
    return 0;
  }
  if (args.pdf_at) {
    std::cout << format_sig15(law.pdf(*args.pdf_at)) << "\n";
    return 0;
  }
  if (args.quantile) {
    std::cout << format_sig15(law.quantile(*args.quantile)) << "\n";
    return 0;
  }
  double a = 0.0, b = 0.0;
  std::size_t m = 0;
  if (std::sscanf(args.grid.c_str(), "%lf:%lf:%zu", &a, &b, &m) != 3 || m < 2 || !(b > a)) {
    throw std::invalid_argument("--grid expects a:b:m with b > a and m >= 2");
  }
  std::string csv = "x,pdf,cdf\n";
  for (std::size_t i = 0; i < m; ++i) {
    const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(m - 1);
    csv += format_double(x) + "," + format_double(law.pdf(x)) + "," +
           format_double(law.cdf(x)) + "\n";
  }
  if (args.out.empty()) std::cout << csv;
  else write_text_file(args.out, csv);
  return 0;
}

// --- test-sphericity ---------------------------------------------------------

int run_test(const std::string& input, double alpha, const std::string& out) {
  const DataMatrix data = read_matrix_csv(input);
  const TestResult r = packing_test(data, alpha);
  ordered_json j;
  j["n"] = r.n;
  j["p"] = r.p;
  j["statistic"] = r.statistic;
  j["critical_value"] = r.critical_value;
  j["p_value"] = r.p_value;
  j["alpha"] = r.alpha;
  j["reject"] = r.reject;
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out.empty()) write_text_file(out, text);
  return 0;
}

// --- experiment / figure ------------------------------------------------------

int run_experiment_cmd(const ExperimentSpec& spec, const ordered_json& resolved,
                       unsigned threads, const std::string& out_dir,
                       ManifestWriter manifest) {
  manifest.master_seed = spec.master_seed;
  manifest.resolved_config = resolved;

  const ExperimentReport report = run_experiment(spec, {threads});

  const fs::path dir(out_dir);
  fs::create_directories(dir);

  write_with_digest(manifest, dir / "report.json",
                    report.to_json(kToolVersion).dump(2) + "\n");

  if (!report.cells.empty()) {
    std::string csv;
    for (const auto& [k, v] : report.cells.front().labels) csv += k + ",";
    for (std::size_t i = 0; i < report.cells.front().values.size(); ++i) {
      csv += report.cells.front().values[i].first;
      csv += i + 1 < report.cells.front().values.size() ? "," : "";
    }
    csv += "\n";
    for (const auto& cell : report.cells) {
      for (const auto& [k, v] : cell.labels) csv += v + ",";
      for (std::size_t i = 0; i < cell.values.size(); ++i) {
        csv += format_double(cell.values[i].second);
        csv += i + 1 < cell.values.size() ? "," : "";
      }
      csv += "\n";
    }
    write_with_digest(manifest, dir / "cells.csv", csv);
  }
  for (const auto& table : report.tables) {
    write_with_digest(manifest, dir / (table.name + ".csv"), table.to_csv());
  }
  write_text_file(dir / "manifest.json", manifest.json().dump(2) + "\n");

  std::cout << "experiment " << report.spec_json()["kind"].get<std::string>() << ": "
            << report.cells.size() << " cell(s), " << report.tables.size() << " table(s), "
            << format_sig15(report.wall_seconds) << " s -> " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pairwise angles of uniform random points on S^{p-1}: sampling, limit laws, "
               "sphericity test, Monte Carlo harness"};
  app.require_subcommand(1);
  ManifestWriter manifest;
  manifest.command_line = join_command_line(argc, argv);

  // sample
  SampleArgs sample;
  auto* cmd_sample = app.add_subcommand("sample", "draw uniform sphere points or DGP data");
  cmd_sample->add_option("--n", sample.n, "number of points")->required();
  cmd_sample->add_option("--p", sample.p, "ambient dimension")->required();
  cmd_sample->add_option("--seed", sample.seed, "master seed")->required();
  cmd_sample->add_option("--stream", sample.stream, "stream index (default 0)");
  cmd_sample->add_option("--dist", sample.dist, "DGP id 0..5 (omit for uniform sphere)")
      ->check(CLI::Range(0, 5));
  cmd_sample->add_option("--out", sample.out, "output CSV (default stdout)");

  // angles
  std::string angles_input, angles_out;
  auto* cmd_angles = app.add_subcommand("angles", "pairwise angles and extremes of a CSV");
  cmd_angles->add_option("--input", angles_input, "input CSV matrix")->required();
  cmd_angles->add_option("--out", angles_out, "write per-pair angles CSV here");

  // dist
  DistArgs dist;
  auto* cmd_dist = app.add_subcommand("dist", "pdf/cdf/quantile of a limit law");
  cmd_dist->add_option("--law", dist.law,
                       "angle-density | normalized-angle-density | cosine-density | "
                       "fixed-p-extreme | one-minus-mn | sum-law | subexp-pivot | "
                       "exp-regime-pivot | superexp-pivot | cos2-pivot")
      ->required();
  cmd_dist->add_option("--p", dist.p, "dimension parameter");
  cmd_dist->add_option("--beta", dist.beta, "exponential-regime beta");
  cmd_dist->add_option("--alpha", dist.alpha, "cos^2-pivot alpha");
  auto* at_opt = cmd_dist->add_option("--at", dist.at, "evaluate the CDF at x");
  auto* pdf_opt = cmd_dist->add_option("--pdf-at", dist.pdf_at, "evaluate the density at x");
  auto* q_opt = cmd_dist->add_option("--quantile", dist.quantile, "invert the CDF at u");
  auto* g_opt = cmd_dist->add_option("--grid", dist.grid, "a:b:m CSV of pdf/cdf on a grid");
  at_opt->excludes(pdf_opt)->excludes(q_opt)->excludes(g_opt);
  pdf_opt->excludes(q_opt)->excludes(g_opt);
  q_opt->excludes(g_opt);
  cmd_dist->add_option("--out", dist.out, "grid CSV output file (default stdout)");

  // test-sphericity
  std::string test_input, test_out;
  double test_alpha = 0.05;
  auto* cmd_test = app.add_subcommand("test-sphericity", "packing test on a CSV sample");
  cmd_test->add_option("--input", test_input, "input CSV matrix")->required();
  cmd_test->add_option("--alpha", test_alpha, "significance level in (0,1)")
      ->required()
      ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
  cmd_test->add_option("--out", test_out, "also write the JSON result here");

  // threshold
  std::size_t thr_n = 0, thr_p = 0;
  auto* cmd_threshold =
      app.add_subcommand("threshold", "spurious-correlation threshold sqrt(1-n^{-4/p}(log n)^{1/p})");
  cmd_threshold->add_option("--n", thr_n, "sample size (>= 3)")->required();
  cmd_threshold->add_option("--p", thr_p, "dimension (>= 1)")->required();

  // bound
  double bound_eps = 0.0;
  std::size_t bound_p = 0;
  auto* cmd_bound =
      app.add_subcommand("bound", "concentration bound P(|Theta - pi/2| >= eps)");
  cmd_bound->add_option("--epsilon", bound_eps, "eps in (0, pi/2)")->required();
  cmd_bound->add_option("--p", bound_p, "dimension (>= 2)")->required();

  // experiment
  std::string exp_config, exp_out = "experiment-out";
  unsigned exp_threads = 0;
  auto* cmd_experiment = app.add_subcommand("experiment", "run a configured Monte Carlo study");
  cmd_experiment->add_option("--config", exp_config, "key = value config file")->required();
  cmd_experiment->add_option("--threads", exp_threads, "worker threads (default: all)");
  cmd_experiment->add_option("--out", exp_out, "output directory");
  cmd_experiment->footer(experiment_config_reference());

  // figure
  int fig_id = 0;
  std::size_t fig_n = 50, fig_reps = 200;
  std::uint64_t fig_seed = 0;
  unsigned fig_threads = 0;
  std::string fig_out = "figure-out";
  auto* cmd_figure = app.add_subcommand("figure", "emit the dataset behind one figure");
  cmd_figure->add_option("--id", fig_id, "figure id 1..4")->required()->check(CLI::Range(1, 4));
  cmd_figure->add_option("--n", fig_n, "points per configuration (default 50)");
  cmd_figure->add_option("--replicates", fig_reps, "simulations (default 200)");
  cmd_figure->add_option("--seed", fig_seed, "master seed");
  cmd_figure->add_option("--threads", fig_threads, "worker threads (default: all)");
  cmd_figure->add_option("--out", fig_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_sample->parsed()) return run_sample(sample, std::move(manifest));
    if (cmd_angles->parsed()) return run_angles(angles_input, angles_out, std::move(manifest));
    if (cmd_dist->parsed()) {
      if (!dist.at && !dist.pdf_at && !dist.quantile && dist.grid.empty()) {
        std::cerr << "dist: one of --at, --pdf-at, --quantile, --grid is required\n";
        return 2;
      }
      return run_dist(dist);
    }
    if (cmd_test->parsed()) return run_test(test_input, test_alpha, test_out);
    if (cmd_threshold->parsed()) {
      const SpuriousThreshold t = spurious_correlation_threshold(thr_n, thr_p);
      if (t.degenerate) std::cerr << "degenerate regime: radicand < 0, threshold clamped to 0\n";
      std::cout << format_sig15(t.value) << "\n";
      return 0;
    }
    if (cmd_bound->parsed()) {
      std::cout << format_sig15(concentration_bound(bound_eps, bound_p)) << "\n";
      return 0;
    }
    if (cmd_experiment->parsed()) {
      std::ifstream f(exp_config, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open config " + exp_config);
      std::ostringstream buf;
      buf << f.rdbuf();
      const ExperimentSpec spec = parse_experiment_config(buf.str(), exp_config);
      ordered_json resolved;
      resolved["config_file"] = exp_config;
      resolved["config_text"] = buf.str();
      resolved["threads"] = exp_threads;
      return run_experiment_cmd(spec, resolved, exp_threads, exp_out, std::move(manifest));
    }
    if (cmd_figure->parsed()) {
      ExperimentSpec spec;
      spec.kind = StudyKind::kFigureData;
      spec.fig_id = fig_id;
      spec.n_values = {fig_n};
      spec.replicates = fig_reps;
      spec.master_seed = fig_seed;
      ordered_json resolved;
      resolved["fig_id"] = fig_id;
      resolved["n"] = fig_n;
      resolved["replicates"] = fig_reps;
      resolved["threads"] = fig_threads;
      return run_experiment_cmd(spec, resolved, fig_threads, fig_out, std::move(manifest));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
