#include <doctest.h>

#include <cmath>
#include <vector>

#include "iq/error.hpp"
#include "iq/layer.hpp"
#include "iq/quadrature.hpp"
#include "iq/rng.hpp"

using namespace iq;

namespace {

// Brute-force oracle for empirical layer integrals: a Riemann midpoint sum
// of the sample quantile function, independent of the order-statistic
// formulas under test.
double riemann_layer(const Sample& s, double a, double b, int cells = 2'000'000) {
  double acc = 0.0;
  const double w = (b - a) / cells;
  for (int i = 0; i < cells; ++i) acc += s.quantile(a + (i + 0.5) * w);
  return acc * w;
}

std::vector<Dist> moment_friendly() {
  return {Dist(Uniform(0.0, 2.0)),     Dist(Uniform(-1.0, 3.0)), Dist(ParetoI(1.0, 3.0)),
          Dist(GappedUniform(0.5)),    Dist(NormalDist(0.0, 1.0)),
          Dist(LogisticDist(1.0, 0.5)),
          Dist(Mixture(0.25, Dist(Uniform(0.0, 1.0)), Dist(NormalDist(0.5, 2.0))))};
}

}  // namespace

TEST_CASE("layer spec rejects trivial boundary levels") {
  CHECK_THROWS_AS(LayerSpec::upper(0.0), std::domain_error);
  CHECK_THROWS_AS(LayerSpec::upper(1.0), std::domain_error);
  CHECK_THROWS_AS(LayerSpec::lower(1.0), std::domain_error);
  CHECK_THROWS_AS(LayerSpec::middle(0.5, 0.5), std::domain_error);
  CHECK_THROWS_AS(LayerSpec::middle(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(LayerSpec::middle(0.5, 1.0), std::domain_error);
}

TEST_CASE("population layer integrals: pinned values") {
  CHECK(layer_integral(Dist(Uniform(0.0, 2.0)), LayerSpec::upper(0.75)) ==
        doctest::Approx(7.0 / 16).epsilon(1e-14));
  CHECK(layer_integral(Dist(GappedUniform(0.5)), LayerSpec::upper(0.5)) ==
        doctest::Approx(7.0 / 8).epsilon(1e-14));
  CHECK(layer_integral(Dist(Uniform(0.0, 1.0)), LayerSpec::middle(0.25, 0.75)) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS((void)layer_integral(Dist(ParetoI(1.0, 0.8)), LayerSpec::full()),
                  divergence_error);
  CHECK_THROWS_AS((void)layer_integral(Dist(ParetoI(1.0, 1.0)), LayerSpec::upper(0.5)),
                  divergence_error);
}

TEST_CASE("population layer integrals agree with quantile quadrature") {
  for (const auto& d : moment_friendly()) {
    for (const auto& spec :
         {LayerSpec::upper(0.3), LayerSpec::lower(0.7), LayerSpec::middle(0.2, 0.9),
          LayerSpec::full()}) {
      const double exact = layer_integral(d, spec);
      const double quad = layer_integral_quadrature(d, spec);
      CHECK(exact == doctest::Approx(quad).epsilon(1e-7));
    }
  }
}

TEST_CASE("tail-integral moment identities on all parametric families") {
  // int_{q_p}^inf (1-F) = int_p^1 F^{-1} - (1-p) q_p, and the lower mirror,
  // with the quantile integral evaluated by quadrature (independent route).
  for (const auto& d : moment_friendly()) {
    for (double p : {0.1, 0.5, 0.9}) {
      const double q = quantile(d, p);
      const double up = layer_integral_quadrature(d, LayerSpec::upper(p));
      CHECK(upper_tail_integral(d, q) ==
            doctest::Approx(up - (1.0 - p) * q).epsilon(1e-7));
      const double lo = layer_integral_quadrature(d, LayerSpec::lower(p));
      CHECK(lower_tail_integral(d, q) == doctest::Approx(p * q - lo).epsilon(1e-7));
    }
  }
}

TEST_CASE("lower + upper = full whenever the mean is finite") {
  for (const auto& d : moment_friendly()) {
    for (double p : {0.2, 0.5, 0.8}) {
      const double split = layer_integral(d, LayerSpec::lower(p)) +
                           layer_integral(d, LayerSpec::upper(p));
      CHECK(split == doctest::Approx(layer_integral(d, LayerSpec::full())).epsilon(1e-12));
    }
  }
}

TEST_CASE("empirical layer formulas: pinned values") {
  Sample s({1.0, 2.0, 3.0, 4.0});
  CHECK(empirical_upper(s, 0.5) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(empirical_upper(s, 3.0 / 8) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(empirical_lower(s, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(empirical_middle(s, 0.25, 0.75) == doctest::Approx(1.25).epsilon(1e-15));

  Sample c({3.5, 3.5, 3.5});
  for (double p : {0.1, 0.4, 0.9}) {
    CHECK(empirical_upper(c, p) == doctest::Approx((1.0 - p) * 3.5).epsilon(1e-15));
    CHECK(empirical_lower(c, p) == doctest::Approx(p * 3.5).epsilon(1e-15));
  }
}

TEST_CASE("empirical layer formulas match brute-force integration of the step quantile") {
  Sample s({1.0, 2.0, 3.0, 4.0});
  CHECK(empirical_middle(s, 3.0 / 8, 5.0 / 8) ==
        doctest::Approx(riemann_layer(s, 3.0 / 8, 5.0 / 8)).epsilon(2e-6));

  CounterRng rng(5);
  std::vector<double> v(23);
  for (auto& x : v) x = -3.0 + 6.0 * rng.next_double();
  Sample r(std::move(v));
  for (double p : {0.17, 0.5, 0.83}) {
    CHECK(empirical_upper(r, p) == doctest::Approx(riemann_layer(r, p, 1.0)).epsilon(2e-6));
    CHECK(empirical_lower(r, p) == doctest::Approx(riemann_layer(r, 0.0, p)).epsilon(2e-6));
  }
}

TEST_CASE("empirical split: lower + upper = sample mean") {
  CounterRng rng(9);
  std::vector<double> v(101);
  for (auto& x : v) x = -1.0 + 2.0 * rng.next_double();
  Sample s(std::move(v));
  for (double p : {0.05, 0.33, 0.5, 0.91}) {
    CHECK(empirical_lower(s, p) + empirical_upper(s, p) ==
          doctest::Approx(s.mean()).epsilon(1e-13));
  }
}

TEST_CASE("remainder: pinned values and symmetrization") {
  const Dist u01{Uniform(0.0, 1.0)};
  const Dist u02{Uniform(0.0, 2.0)};
  CHECK(remainder(0.5, u01, u01) == 0.0);
  // int_1^{1/2} (x/2 - 1/2) dx = p^2/4 at p = 1/2
  CHECK(remainder(0.5, u01, u02) == doctest::Approx(1.0 / 16).epsilon(1e-13));
  CHECK(remainder(0.25, u01, u02) == doctest::Approx(0.25 * 0.25 / 4).epsilon(1e-13));

  CounterRng rng(13);
  for (int i = 0; i < 50; ++i) {
    const Dist f{random_step_cdf(rng)};
    const Dist g{random_step_cdf(rng)};
    for (double p : {0.2, 0.5, 0.8}) {
      CHECK(remainder(p, f, g) >= 0.0);
      CHECK(remainder(p, f, g) + remainder(p, g, f) ==
            doctest::Approx(remainder_symmetrized(p, f, g)).epsilon(1e-10));
    }
  }
}

TEST_CASE("full-range identity and its truncated negative control") {
  const Dist f{Uniform(0.0, 1.0)};
  const Dist g{Uniform(0.0, 2.0)};
  const auto rep = verify_decomposition(LayerSpec::full(), f, g);
  CHECK(rep.lhs == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rep.cdf_side == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::fabs(rep.residual) < 1e-14);
  // truncating the cdf side at [F^{-1}(0), F^{-1}(1)] = [0,1] loses the mass
  // beyond the smaller support and gives 1/4 instead
  CHECK(truncated_full_cdf_side(f, g) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS((void)truncated_full_cdf_side(Dist(NormalDist(0.0, 1.0)), g),
                  std::domain_error);
}

TEST_CASE("decomposition identities on parametric pairs") {
  const Dist f{Uniform(0.0, 2.0)};
  const Dist g{GappedUniform(0.5)};
  for (double p : {0.25, 0.5, 0.75}) {
    CHECK(std::fabs(verify_decomposition(LayerSpec::upper(p), f, g).residual) < 1e-12);
    CHECK(std::fabs(verify_decomposition(LayerSpec::lower(p), f, g).residual) < 1e-12);
  }
  CHECK(std::fabs(verify_decomposition(LayerSpec::middle(0.3, 0.8), f, g).residual) < 1e-12);
}

TEST_CASE("identity fuzz: residuals at machine precision, remainders non-negative") {
  const auto sum = run_identity_fuzz(300, 2024);
  CHECK(sum.max_abs_residual < 1e-10);
  CHECK(sum.min_remainder >= 0.0);
  CHECK(sum.max_bound_violation <= 1e-12);
}

TEST_CASE("remainder bound chain on step-vs-parametric pairs") {
  const std::vector<Dist> parametric = {Dist(Uniform(-2.0, 3.0)), Dist(ParetoI(1.0, 3.0)),
                                        Dist(GappedUniform(0.5)), Dist(NormalDist(0.5, 1.5)),
                                        Dist(LogisticDist(0.0, 0.7))};
  CounterRng rng = CounterRng::stream(41, stream_id::kFuzz, 9);
  for (int i = 0; i < 40; ++i) {
    const Dist s{random_step_cdf(rng)};
    for (const auto& g : parametric) {
      const double sup = sup_distance(s, g);
      for (double p : {0.1, 0.5, 0.9}) {
        for (const auto* f : {&s, &g}) {
          const auto* h = (f == &s) ? &g : &s;
          const double rem = remainder(p, *f, *h);
          const double sym = remainder_symmetrized(p, *f, *h);
          const double cap =
              std::fabs(quantile(*h, p) - quantile(*f, p)) * sup;
          CHECK(rem >= 0.0);
          CHECK(rem <= sym + 1e-12);
          CHECK(sym <= cap + 1e-12);
        }
        CHECK(std::fabs(verify_decomposition(LayerSpec::upper(p), s, g).residual) < 1e-11);
        CHECK(std::fabs(verify_decomposition(LayerSpec::lower(p), g, s).residual) < 1e-11);
      }
      CHECK(std::fabs(verify_decomposition(LayerSpec::middle(0.2, 0.8), s, g).residual) < 1e-11);
    }
  }
}

TEST_CASE("two-point discrete gapped law (a = 1)") {
  const Dist d{GappedUniform(1.0)};
  CHECK(quantile(d, 0.3) == 0.0);
  CHECK(quantile(d, 0.5) == 0.0);
  CHECK(quantile(d, 0.51) == 2.0);
  CHECK(cdf(d, 0.0) == 0.5);
  CHECK(cdf(d, 1.999) == 0.5);
  CHECK(cdf(d, 2.0) == 1.0);
  CHECK(mean(d) == 1.0);
  CHECK(layer_integral(d, LayerSpec::upper(0.5)) == doctest::Approx(1.0).epsilon(1e-14));
  // identical two-point step cdf: distance zero even through the grid path
  const Dist step{StepCdf({0.0, 2.0}, {0.5, 0.5})};
  CHECK(sup_distance(d, step) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::fabs(verify_decomposition(LayerSpec::lower(0.25), d, step).residual) < 1e-12);
}

TEST_CASE("contamination mixture stays within delta of its base in sup distance") {
  const Dist base{Uniform(0.0, 2.0)};
  const Dist contam{ParetoI(1.0, 3.0)};
  for (double delta : {0.05, 0.2, 0.5}) {
    const Dist mix{Mixture(delta, base, contam)};
    const double d_mix = sup_distance(base, mix);
    const double d_full = sup_distance(base, contam);
    CHECK(d_mix <= delta + 1e-9);
    // |F - ((1-d)F + dC)| = d|F - C| pointwise, so the sup scales exactly
    CHECK(d_mix == doctest::Approx(delta * d_full).epsilon(1e-6));
  }
}

TEST_CASE("pareto alpha = 1: lower tail log branch against cdf quadrature") {
  const Dist d{ParetoI(2.0, 1.0)};
  for (double t : {3.0, 7.5}) {
    const double quad = adaptive_simpson([&](double x) { return cdf(d, x); }, 2.0, t, 1e-12);
    CHECK(lower_tail_integral(d, t) == doctest::Approx(quad).epsilon(1e-9));
  }
  CHECK_THROWS_AS((void)upper_tail_integral(d, 3.0), divergence_error);
  CHECK_THROWS_AS((void)mean(d), divergence_error);
}

TEST_CASE("middle refuses boundary levels (negative control encoded)") {
  CHECK_THROWS_AS(LayerSpec::middle(0.0, 1.0), std::domain_error);
}
