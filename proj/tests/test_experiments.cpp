#include <doctest.h>

#include <cmath>
#include <vector>

#include "iq/experiments.hpp"
#include "iq/rng.hpp"

using namespace iq;

TEST_CASE("gapped sigma2: paper constants and monotonicity") {
  CHECK(gapped_sigma2(0.0) == doctest::Approx(5.0 / 48).epsilon(1e-15));
  CHECK(gapped_sigma2(0.5) == doctest::Approx(77.0 / 192).epsilon(1e-15));
  CHECK(gapped_sigma2(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS((void)gapped_sigma2(-0.1), std::domain_error);
  double prev = gapped_sigma2(0.0);
  for (int i = 1; i <= 100; ++i) {
    const double cur = gapped_sigma2(i / 100.0);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("gapped sigma2 against a direct Monte Carlo variance") {
  // Var((H^{-1}(U) - (1-a))^+) via simulation as an independent cross-check
  const double a = 0.3;
  const Dist gapped{GappedUniform(a)};
  CounterRng rng = CounterRng::stream(17, 50, 0);
  const std::size_t m = 400'000;
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double w = std::max(0.0, draw(gapped, rng) - (1.0 - a));
    s1 += w;
    s2 += w * w;
  }
  s1 /= static_cast<double>(m);
  s2 /= static_cast<double>(m);
  CHECK(s2 - s1 * s1 == doctest::Approx(gapped_sigma2(a)).epsilon(0.02));
}

TEST_CASE("median gap probabilities: exact formula") {
  const auto p2 = median_gap_probability(2);
  CHECK(p2.first == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p2.second == doctest::Approx(0.75).epsilon(1e-15));
  const auto p_odd = median_gap_probability(101);
  CHECK(p_odd.first == 0.5);
  CHECK(p_odd.second == 0.5);
  // both approach 1/2 from the respective sides
  const auto p1000 = median_gap_probability(1000);
  CHECK(p1000.first < 0.5);
  CHECK(p1000.second > 0.5);
  CHECK(std::fabs(p1000.first - 0.5) < 0.026);
  CHECK_THROWS_AS((void)median_gap_probability(1002), std::domain_error);
}

TEST_CASE("median gap probabilities: Monte Carlo agreement") {
  const std::size_t n = 100, m = 20'000;
  const auto exact = median_gap_probability(n);
  const auto mc = median_gap_probability_mc(n, m, 4242);
  const double se = std::sqrt(0.25 / static_cast<double>(m));
  CHECK(std::fabs(mc.first - exact.first) < 3.0 * se);
  CHECK(std::fabs(mc.second - exact.second) < 3.0 * se);
}

TEST_CASE("vervaat paths: non-negativity, boundary zeros, mean level") {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
  const auto res = vervaat_paths(2'000, grid, 400, 99);
  REQUIRE(res.paths.size() == 400);
  double mean_mid = 0.0;
  for (const auto& path : res.paths) {
    CHECK(path.front() == 0.0);
    CHECK(path.back() == doctest::Approx(0.0).epsilon(1e-9));
    for (double v : path) CHECK(v >= -1e-12);
    mean_mid += path[10];  // p = 1/2
  }
  mean_mid /= static_cast<double>(res.paths.size());
  // E n V_n(1/2) -> p(1-p)/2 = 1/8
  CHECK(std::fabs(mean_mid - 0.125) < 0.125 * 0.25);
}

TEST_CASE("ks distance against the standard normal") {
  CHECK(ks_vs_standard_normal({0.0, 0.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS((void)ks_vs_standard_normal({}), std::domain_error);

  const Dist n01{NormalDist(0.0, 1.0)};
  CounterRng rng = CounterRng::stream(12, 51, 0);
  std::vector<double> z(4000), shifted(4000);
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = draw(n01, rng);
    shifted[i] = z[i] + 10.0;
  }
  CHECK(ks_vs_standard_normal(z) < ks_critical_1pct(z.size()));
  CHECK(ks_vs_standard_normal(shifted) > 0.999);
}

TEST_CASE("bias experiment: negative means near the asymptotic constant") {
  ExperimentConfig cfg;
  cfg.n_values = {40, 200};
  cfg.replications = 4'000;
  cfg.seed = 7;
  const auto rep = run_bias_experiment(cfg);
  REQUIRE(rep.rows.size() == 2);
  for (const auto& row : rep.rows) {
    CHECK(row.mean < 0.0);
    const double target = -3.0 / (16.0 * static_cast<double>(row.n));
    const double mc_se = row.sd / std::sqrt(static_cast<double>(cfg.replications));
    CHECK(std::fabs(row.mean - target) < 3.0 * mc_se);
  }
}

TEST_CASE("bias experiment report is deterministic and thread-invariant") {
  ExperimentConfig cfg;
  cfg.n_values = {50};
  cfg.replications = 500;
  cfg.seed = 123;
  cfg.threads = 1;
  const auto a = run_bias_experiment(cfg);
  cfg.threads = 4;
  const auto b = run_bias_experiment(cfg);
  CHECK(a.rows[0].mean == b.rows[0].mean);
  CHECK(a.rows[0].median == b.rows[0].median);
  CHECK(a.rows[0].sd == b.rows[0].sd);
}

TEST_CASE("normality experiment: uniform passes, gapped fails, a=0 branches agree") {
  ExperimentConfig cfg;
  cfg.experiment = "normality";
  cfg.p = 0.5;
  cfg.n_values = {4'000};
  cfg.replications = 800;
  cfg.seed = 31;
  cfg.dist = Dist(Uniform(0.0, 2.0));
  const auto uni = run_normality_experiment(cfg);
  CHECK(uni.rows[0].ks < ks_critical_1pct(cfg.replications));

  cfg.dist = Dist(GappedUniform(0.5));
  const auto gap = run_normality_experiment(cfg);
  CHECK(gap.rows[0].ks > 5.0 * ks_critical_1pct(cfg.replications));

  cfg.dist = Dist(GappedUniform(0.0));
  const auto zero = run_normality_experiment(cfg);
  CHECK(zero.rows[0].mean == uni.rows[0].mean);  // identical draws, bit for bit
  CHECK(zero.rows[0].ks == uni.rows[0].ks);

  cfg.n_values = {4'001};
  CHECK_THROWS_AS((void)run_normality_experiment(cfg), std::domain_error);
  cfg.n_values = {4'000};
  cfg.p = 0.6;
  CHECK_THROWS_AS((void)run_normality_experiment(cfg), std::domain_error);
  cfg.p = 0.5;
  cfg.dist = Dist(ParetoI(1.0, 3.0));
  CHECK_THROWS_AS((void)run_normality_experiment(cfg), std::domain_error);
}
