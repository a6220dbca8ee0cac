#include <doctest.h>

#include <cmath>
#include <vector>

#include "iq/error.hpp"
#include "iq/risk.hpp"
#include "iq/timeseries.hpp"

using namespace iq;

namespace {

double lag1_autocorr(const std::vector<double>& x) {
  double mu = 0.0;
  for (double v : x) mu += v;
  mu /= static_cast<double>(x.size());
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t + 1 < x.size(); ++t) num += (x[t] - mu) * (x[t + 1] - mu);
  for (double v : x) den += (v - mu) * (v - mu);
  return num / den;
}

}  // namespace

TEST_CASE("ar1 config validation and determinism") {
  CHECK_THROWS_AS(Ar1Config(1.0, Dist(NormalDist(0.0, 1.0))), std::invalid_argument);
  CHECK_THROWS_AS(Ar1Config(-1.2, Dist(NormalDist(0.0, 1.0))), std::invalid_argument);
  Ar1Config cfg(0.5, Dist(NormalDist(0.0, 1.0)), 100, 9);
  const auto a = simulate_ar1(cfg, 50, 2);
  const auto b = simulate_ar1(cfg, 50, 2);
  CHECK(a == b);
  const auto c = simulate_ar1(cfg, 50, 3);
  CHECK(a != c);
}

TEST_CASE("ar1 with phi=0 is iid; innovations are centered") {
  Ar1Config cfg(0.0, Dist(Uniform(0.0, 2.0)), 10, 4);  // mean 1, centered internally
  const auto x = simulate_ar1(cfg, 100'000, 0);
  double mu = 0.0;
  for (double v : x) mu += v;
  mu /= static_cast<double>(x.size());
  CHECK(std::fabs(mu) < 0.01);
  CHECK(std::fabs(lag1_autocorr(x)) < 0.02);
}

TEST_CASE("ar1 stationary moments match the geometric-series values") {
  const std::size_t n = 100'000;
  Ar1Config cfg(0.5, Dist(NormalDist(0.0, 1.0)), 1000, 11);
  const auto x = simulate_ar1(cfg, n, 0);
  CHECK(std::fabs(lag1_autocorr(x) - 0.5) < 3.0 / std::sqrt(static_cast<double>(n)) + 0.01);
  double s2 = 0.0;
  for (double v : x) s2 += v * v;
  s2 /= static_cast<double>(n);
  CHECK(s2 == doctest::Approx(1.0 / 0.75).epsilon(0.05));
}

TEST_CASE("long run variance: pinned behaviours") {
  std::vector<double> constant(1000, 3.0);
  CHECK(long_run_variance(constant, 9) == 0.0);
  CHECK_THROWS_AS((void)long_run_variance(constant, 1000), std::domain_error);

  // iid: LRV matches the marginal variance within MC error
  Ar1Config iid(0.0, Dist(NormalDist(0.0, 2.0)), 100, 21);
  const auto x = simulate_ar1(iid, 50'000, 0);
  CHECK(long_run_variance(x, default_bandwidth(x.size())) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("long run variance of ar1 phi=0.5 approaches 4") {
  Ar1Config cfg(0.5, Dist(NormalDist(0.0, 1.0)), 1000, 33);
  const auto x = simulate_ar1(cfg, 100'000, 0);
  const double lrv = long_run_variance(x, default_bandwidth(x.size()));
  CHECK(std::fabs(lrv - 4.0) / 4.0 < 0.2);
}

TEST_CASE("h transforms: lipschitz and boundedness") {
  const Dist ref{NormalDist(0.0, 1.0)};
  const auto up = HTransform::make(LayerSpec::upper(0.3), ref);
  const auto lo = HTransform::make(LayerSpec::lower(0.3), ref);
  const auto mid = HTransform::make(LayerSpec::middle(0.25, 0.75), ref);
  CounterRng rng(3);
  double sup_mid = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double x = -6.0 + 12.0 * rng.next_double();
    const double y = -6.0 + 12.0 * rng.next_double();
    CHECK(std::fabs(up(x) - up(y)) <= std::fabs(x - y) + 1e-12);
    CHECK(std::fabs(lo(x) - lo(y)) <= std::fabs(x - y) + 1e-12);
    CHECK(std::fabs(mid(x) - mid(y)) <= std::fabs(x - y) + 1e-12);
    sup_mid = std::max(sup_mid, std::fabs(mid(x)));
  }
  const double width = quantile(ref, 0.75) - quantile(ref, 0.25);
  CHECK(sup_mid <= width + 1e-12);
  CHECK(mid(-100.0) == doctest::Approx(width).epsilon(1e-12));  // bound attained
}

TEST_CASE("lrv of iid series matches the plug-in variance of the transform") {
  Ar1Config iid(0.0, Dist(NormalDist(0.0, 1.0)), 100, 55);
  const auto x = simulate_ar1(iid, 50'000, 0);
  const Dist marginal{NormalDist(0.0, 1.0)};
  const auto h = HTransform::make(LayerSpec::upper(0.5), marginal);
  const double lrv = long_run_variance(x, h, default_bandwidth(x.size()));
  // plug-in route from risk-measures on the same transform
  const auto est = tvar_up(Sample(x), 0.5);
  const double plugin = est.stderr_ * est.stderr_ * static_cast<double>(est.n) * 0.25;
  CHECK(lrv == doctest::Approx(plugin).epsilon(0.1));
}

TEST_CASE("mixing bounds: closed forms and monotonicity") {
  Ar1Config cfg(0.5, Dist(NormalDist(0.0, 1.0)), 100, 0);
  for (int m : {1, 2, 5, 10}) {
    // gamma_m = 1/m: delta_m = m^2 0.25^{m+1} / 0.75
    const double expect = static_cast<double>(m) * static_cast<double>(m) *
                          std::pow(0.25, m + 1) / 0.75;
    CHECK(s_mixing_bound(cfg, m, 1.0) == doctest::Approx(expect).epsilon(1e-12));
  }
  // delta ratio is ((m+1)/m)^{2a} phi^2: strictly below 1 from m = 2 on for
  // these parameters (at m = 1 it equals 1 exactly: delta_1 = delta_2)
  CHECK(s_mixing_bound(cfg, 2, 1.0) == doctest::Approx(s_mixing_bound(cfg, 1, 1.0)).epsilon(1e-12));
  for (int m : {2, 5, 9}) {
    CHECK(s_mixing_bound(cfg, m + 1, 1.0) < s_mixing_bound(cfg, m, 1.0));
  }
  for (int m : {1, 2, 5}) {
    CHECK(m_mixing_bound(cfg, m + 1, 3.0) < m_mixing_bound(cfg, m, 3.0));
    // rho_m / rho_{m+1} = 1/|phi| exactly
    CHECK(m_mixing_bound(cfg, m, 3.0) / m_mixing_bound(cfg, m + 1, 3.0) ==
          doctest::Approx(2.0).epsilon(1e-12));
  }
  Ar1Config tiny(1e-9, Dist(NormalDist(0.0, 1.0)), 100, 0);
  CHECK(s_mixing_bound(tiny, 1, 1.0) < 1e-17);

  // m-mixing requires a finite p-th innovation moment
  Ar1Config heavy(0.5, Dist(ParetoI(1.0, 3.0)), 100, 0);
  CHECK_THROWS_AS((void)m_mixing_bound(heavy, 1, 4.0), divergence_error);
  CHECK(m_mixing_bound(heavy, 1, 2.5) > 0.0);
}

TEST_CASE("m-mixing rate condition") {
  const auto ok = m_mixing_rate_condition(5.0, 0.5, 4.0);
  CHECK(ok.ok);
  CHECK(ok.a_required == doctest::Approx(std::max(1.0, 2.0 * (1.0 - 1.5 / 4.0))).epsilon(1e-12));
  CHECK_FALSE(m_mixing_rate_condition(0.5, 0.5, 4.0).ok);   // A too small
  CHECK_FALSE(m_mixing_rate_condition(10.0, 1.5, 4.0).ok);  // (1+eta)/p >= 1/2
  CHECK_THROWS_AS((void)m_mixing_rate_condition(1.0, 0.5, 2.0), std::domain_error);
}

TEST_CASE("stationary marginal: exact for normal innovations") {
  Ar1Config cfg(0.6, Dist(NormalDist(0.0, 2.0)), 100, 0);
  const auto m = stationary_marginal(cfg);
  CHECK_FALSE(m.approximate);
  CHECK(std::sqrt(variance(m.dist)) == doctest::Approx(2.0 / std::sqrt(0.64)).epsilon(1e-12));
}

TEST_CASE("clt harness with phi=0 degenerates to the iid check") {
  Ar1Config cfg(0.0, Dist(NormalDist(0.0, 1.0)), 200, 13);
  const auto rep = ts_layer_clt_report(cfg, 2'000, LayerSpec::upper(0.5), 200, 0);
  CHECK(rep.population == doctest::Approx(0.3989422804014327).epsilon(1e-10));
  CHECK(rep.coverage > 0.85);
  CHECK(std::fabs(rep.stat_mean) < 0.3);
}

TEST_CASE("pilot stationary marginal for non-normal innovations") {
  Ar1Config cfg(0.5, Dist(Uniform(-1.0, 1.0)), 500, 19);
  const auto m = stationary_marginal(cfg, 200'000);
  CHECK(m.approximate);
  CHECK(std::fabs(mean(m.dist)) < 0.01);
  // stationary variance sigma_eps^2/(1-phi^2) with sigma_eps^2 = 1/3
  CHECK(variance(m.dist) == doctest::Approx((1.0 / 3.0) / 0.75).epsilon(0.05));
}

TEST_CASE("clt harness smoke run") {
  Ar1Config cfg(0.5, Dist(NormalDist(0.0, 1.0)), 500, 77);
  const auto rep = ts_layer_clt_report(cfg, 2'000, LayerSpec::middle(0.25, 0.75), 300, 0);
  CHECK(rep.reps == 300);
  CHECK_FALSE(rep.approximate_marginal);
  CHECK(rep.population == doctest::Approx(0.0).epsilon(1e-12));  // symmetric layer
  CHECK(rep.coverage > 0.85);
  CHECK(rep.coverage <= 1.0);
  CHECK(std::fabs(rep.stat_mean) < 0.25);
  CHECK(rep.stat_var > 0.6);
  CHECK(rep.stat_var < 1.6);
  CHECK_THROWS_AS((void)ts_layer_clt_report(cfg, 100, LayerSpec::full(), 10, 1),
                  std::domain_error);
}
