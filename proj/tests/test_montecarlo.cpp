#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "sphangle/limit_laws.hpp"
#include "sphangle/montecarlo.hpp"
#include "sphangle/seed.hpp"

using namespace sphangle;

namespace {

double uniform01_cdf(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

TEST_CASE("ks_distance on hand-checkable samples") {
  CHECK(ks_distance({0.5}, uniform01_cdf) == doctest::Approx(0.5).epsilon(1e-15));

  // Samples placed at the (i - 0.5)/m quantiles sit 0.5/m away.
  const std::size_t m = 20;
  std::vector<double> quantiles;
  for (std::size_t i = 1; i <= m; ++i) {
    quantiles.push_back((static_cast<double>(i) - 0.5) / static_cast<double>(m));
  }
  CHECK(ks_distance(quantiles, uniform01_cdf) == doctest::Approx(0.025).epsilon(1e-12));

  Rng rng({9001, 0});
  std::vector<double> draws(10000);
  for (double& v : draws) v = rng.uniform();
  CHECK(ks_distance(std::move(draws), uniform01_cdf) < 0.025);

  CHECK_THROWS_AS(ks_distance({}, uniform01_cdf), std::invalid_argument);
}

TEST_CASE("power study produces calibrated cells with standard errors") {
  ExperimentSpec spec;
  spec.kind = StudyKind::kPowerStudy;
  spec.n_values = {20};
  spec.p_values = {2, 3};
  spec.dist_ids = {0, 2};
  spec.replicates = 100;
  spec.alpha = 0.05;
  spec.master_seed = 5;

  const ExperimentReport report = run_experiment(spec);
  CHECK(report.cells.size() == 4);
  for (const auto& cell : report.cells) {
    const double power = cell.value("power_percent");
    CHECK(power >= 0.0);
    CHECK(power <= 100.0);
    CHECK(cell.value("se_percent") <= 100.0 * std::sqrt(0.25 / 100.0) + 1e-12);
    CHECK(cell.value("replicates") == 100.0);
  }
  // Null size stays loose-banded even at 100 replicates.
  const double null_p2 = report.cell({{"p", "2"}, {"dist", "0"}}).value("power_percent");
  CHECK(null_p2 <= 20.0);
}

TEST_CASE("null size calibration at the table design") {
  ExperimentSpec spec;
  spec.kind = StudyKind::kPowerStudy;
  spec.n_values = {50};
  spec.p_values = {2, 3, 4, 5};
  spec.dist_ids = {0};
  spec.replicates = 2000;
  spec.alpha = 0.05;
  spec.master_seed = 6;
  const ExperimentReport report = run_power_study(spec);
  for (const auto& cell : report.cells) {
    const double rate = cell.value("power_percent") / 100.0;
    CHECK(rate >= 0.025);
    CHECK(rate <= 0.07);
  }
}

TEST_CASE("a failing cell aborts the run with its labels in the message") {
  ExperimentSpec spec;
  spec.kind = StudyKind::kConvergenceStudy;
  spec.target = ConvergenceTarget::kSubexp;
  spec.n_values = {2};  // log log n undefined for the sub-exponential pivot
  spec.p_values = {30};
  spec.replicates = 3;
  CHECK_THROWS_WITH_AS(run_convergence_study(spec), doctest::Contains("n=2"),
                       std::runtime_error);
}

TEST_CASE("experiment reports are independent of the worker count") {
  ExperimentSpec spec;
  spec.kind = StudyKind::kPowerStudy;
  spec.n_values = {20};
  spec.p_values = {2, 3};
  spec.dist_ids = {0, 4};
  spec.replicates = 60;
  spec.master_seed = 11;

  const std::string one = run_experiment(spec, {1}).results_json().dump();
  const std::string eight = run_experiment(spec, {8}).results_json().dump();
  CHECK(one == eight);

  ExperimentSpec fig;
  fig.kind = StudyKind::kFigureData;
  fig.fig_id = 3;
  fig.n_values = {15};
  fig.replicates = 12;
  fig.master_seed = 3;
  CHECK(figure_data(fig, {1}).results_json().dump() ==
        figure_data(fig, {8}).results_json().dump());
}

TEST_CASE("convergence study: fixed-p target") {
  ExperimentSpec spec;
  spec.kind = StudyKind::kConvergenceStudy;
  spec.target = ConvergenceTarget::kFixedP;
  spec.n_values = {300};
  spec.p_values = {3};
  spec.replicates = 300;
  spec.master_seed = 21;

  const ExperimentReport report = run_convergence_study(spec);
  const ReportCell& cell = report.cells.at(0);
  CHECK(cell.value("ks") < 0.12);
  CHECK(cell.value("ks_max_side") < 0.12);
  CHECK(cell.value("undefined") == 0.0);
  CHECK(cell.value("median_statistic") > 0.0);
}

TEST_CASE("convergence study: empirical CLT and cos^2 pivot targets") {
  ExperimentSpec clt;
  clt.kind = StudyKind::kConvergenceStudy;
  clt.target = ConvergenceTarget::kEmpiricalClt;
  clt.n_values = {100};
  clt.p_values = {80};
  clt.replicates = 2;
  clt.master_seed = 8;
  const ExperimentReport r1 = run_convergence_study(clt);
  CHECK(r1.cells.at(0).value("ks_first") < 0.08);
  CHECK(r1.cells.at(0).value("ks_max") >= r1.cells.at(0).value("ks_mean"));

  ExperimentSpec cor;
  cor.kind = StudyKind::kConvergenceStudy;
  cor.target = ConvergenceTarget::kCosSquare;
  cor.n_values = {60};
  cor.p_values = {150};
  cor.replicates = 150;
  cor.master_seed = 13;
  const ExperimentReport r2 = run_convergence_study(cor);
  CHECK(r2.cells.at(0).value("alpha_hat") ==
        doctest::Approx(std::log(60.0) / std::sqrt(150.0)).epsilon(1e-15));
  CHECK(r2.cells.at(0).value("ks") < 0.35);
}

TEST_CASE("convergence study: exponential regime reports limits") {
  ExperimentSpec spec;
  spec.kind = StudyKind::kConvergenceStudy;
  spec.target = ConvergenceTarget::kExpRegime;
  spec.beta = 0.3;
  spec.n_values = {150};  // log(150)/17 ~ 0.29
  spec.p_values = {17};
  spec.replicates = 60;
  spec.master_seed = 4;

  const ExperimentReport report = run_convergence_study(spec);
  const ReportCell& cell = report.cells.at(0);
  const auto limits = exp_regime_limit_angle(0.3);
  CHECK(cell.value("theta_min_limit") == doctest::Approx(limits.first).epsilon(1e-15));
  CHECK(cell.value("theta_max_limit") == doctest::Approx(limits.second).epsilon(1e-15));
  CHECK(cell.value("theta_min_median") > 0.0);
  CHECK(cell.value("theta_min_median") < M_PI / 2);
  CHECK(cell.value("theta_max_median") > M_PI / 2);
}

TEST_CASE("sum-law study symmetry at small scale") {
  ExperimentSpec spec;
  spec.kind = StudyKind::kSumLawStudy;
  spec.n_values = {100};
  spec.p_values = {2};
  spec.replicates = 200;
  spec.master_seed = 17;

  const ExperimentReport report = run_sum_law_study(spec);
  const ReportCell& cell = report.cells.at(0);
  const double frac = cell.value("sign_positive_fraction");
  CHECK(frac > 0.35);
  CHECK(frac < 0.65);
  CHECK(cell.value("ks") < 0.2);
  CHECK(cell.value("positive_signs") == doctest::Approx(frac * 200.0));
}

TEST_CASE("figure datasets") {
  ExperimentSpec fig1;
  fig1.kind = StudyKind::kFigureData;
  fig1.fig_id = 1;
  const ExperimentReport r1 = figure_data(fig1);
  REQUIRE(r1.tables.size() == 1);
  const ReportTable& curves = r1.tables.front();
  CHECK(curves.name == "fig1_curves");
  // Row at theta = 0 delegates to the normalized density.
  CHECK(curves.rows.front().at(0) == 0.0);
  CHECK(curves.rows.front().at(4) ==
        doctest::Approx(normalized_angle_density(0.0, 20)).epsilon(1e-15));
  CHECK(curves.rows.front().at(5) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-14));

  ExperimentSpec fig2;
  fig2.kind = StudyKind::kFigureData;
  fig2.fig_id = 2;
  fig2.n_values = {25};
  fig2.replicates = 16;
  fig2.master_seed = 23;
  const ExperimentReport r2 = figure_data(fig2);
  REQUIRE(r2.tables.size() == 10);

  // The scaled Theta_min overlay at p = 2 is (1/(2pi)) exp(-x/(2pi)).
  const ReportTable* curve = nullptr;
  for (const auto& t : r2.tables) {
    if (t.name == "fig2_c_curve") curve = &t;
  }
  REQUIRE(curve != nullptr);
  for (const auto& row : curve->rows) {
    const double x = row.at(0);
    const double want = std::exp(-x / (2.0 * M_PI)) / (2.0 * M_PI);
    CHECK(row.at(1) == doctest::Approx(want).epsilon(1e-12));
  }

  // Histograms carry positive total mass ~ 1.
  for (const auto& t : r2.tables) {
    if (t.name.find("_hist") == std::string::npos) continue;
    double mass = 0.0;
    for (const auto& row : t.rows) mass += (row.at(1) - row.at(0)) * row.at(2);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  }

  // Theta_min + Theta_max stays tight around pi.
  CHECK(r2.cells.at(0).value("sum_median") == doctest::Approx(M_PI).epsilon(0.15));
}

TEST_CASE("config parsing: happy path and exhaustive violations") {
  const std::string good =
      "# table-style power run\n"
      "kind = power-study\n"
      "n = 50\n"
      "p = 2,3,4,5\n"
      "replicates = 2000\n"
      "alpha = 0.05\n"
      "dist_ids = 0,1,2,3,4,5\n"
      "master_seed = 98\n";
  const ExperimentSpec spec = parse_experiment_config(good, "good.cfg");
  CHECK(spec.kind == StudyKind::kPowerStudy);
  CHECK(spec.p_values == std::vector<std::size_t>{2, 3, 4, 5});
  CHECK(spec.dist_ids == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(spec.replicates == 2000);
  CHECK(spec.master_seed == 98);

  const std::string bad =
      "kind = power-study\n"
      "alpha = 7\n"
      "wibble = 3\n"
      "p = 2\n";
  try {
    parse_experiment_config(bad, "bad.cfg");
    FAIL("expected a config error");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("alpha") != std::string::npos);
    CHECK(msg.find("wibble") != std::string::npos);
    CHECK(msg.find("\"n\"") != std::string::npos);
    CHECK(msg.find("dist_ids") != std::string::npos);
    CHECK(msg.find("replicates") != std::string::npos);
  }

  // exp-regime requires beta.
  const std::string nobeta =
      "kind = convergence-study\ntarget = exp-regime\nn = 10\np = 5\nreplicates = 3\n";
  CHECK_THROWS_WITH_AS(parse_experiment_config(nobeta, "c.cfg"), doctest::Contains("beta"),
                       std::runtime_error);

  // figure-data defaults replicates to 200.
  const ExperimentSpec fig = parse_experiment_config("kind = figure-data\nfig_id = 3\n", "f.cfg");
  CHECK(fig.replicates == 200);
  CHECK(fig.fig_id == 3);
}

TEST_CASE("report JSON carries schema version, spec echo and digests") {
  ExperimentSpec spec;
  spec.kind = StudyKind::kFigureData;
  spec.fig_id = 1;
  spec.master_seed = 77;
  const ExperimentReport report = figure_data(spec);
  const auto j = report.to_json("9.9.9");
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("kind") == "figure-data");
  CHECK(j.at("spec").at("master_seed") == 77);
  CHECK(j.at("provenance").at("tool_version") == "9.9.9");
  CHECK(j.at("results").at("tables").at(0).at("digest").get<std::string>().size() == 16);
  CHECK(report.cell({{"fig", "1"}}).labels.empty() == false);
}
