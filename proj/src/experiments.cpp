#include "iq/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "iq/layer.hpp"
#include "iq/normal.hpp"
#include "iq/parallel.hpp"
#include "iq/rng.hpp"
#include "iq/sample.hpp"

namespace iq {

namespace {

double median_of(std::vector<double> v) {
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v, double m) {
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::vector<double> draw_sample(const Dist& d, std::size_t n, CounterRng& rng) {
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = draw(d, rng);
  return values;
}

}  // namespace

ExperimentReport run_bias_experiment(const ExperimentConfig& cfg) {
  if (cfg.replications < 1) throw std::domain_error("run_bias_experiment: need m >= 1");
  const double population = layer_integral(cfg.dist, LayerSpec::upper(cfg.p));

  ExperimentReport rep;
  rep.experiment = "bias";
  rep.p = cfg.p;
  rep.replications = cfg.replications;
  rep.seed = cfg.seed;
  for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
    const std::size_t n = cfg.n_values[ni];
    if (n < 2) throw std::domain_error("run_bias_experiment: need n >= 2");
    std::vector<double> biases(cfg.replications);
    parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
      CounterRng rng =
          CounterRng::stream(cfg.seed, stream_id::kBias, ni * cfg.replications + r);
      Sample s(draw_sample(cfg.dist, n, rng));
      biases[r] = empirical_upper(s, cfg.p) - population;
    });
    SummaryRow row;
    row.n = n;
    row.mean = mean_of(biases);
    row.median = median_of(biases);
    row.sd = sd_of(biases, row.mean);
    rep.rows.push_back(row);
    if (cfg.keep_raw) rep.raw.push_back(std::move(biases));
  }
  return rep;
}

ExperimentReport run_normality_experiment(const ExperimentConfig& cfg) {
  if (cfg.replications < 2) throw std::domain_error("run_normality_experiment: need m >= 2");
  if (cfg.p != 0.5)
    throw std::domain_error("run_normality_experiment: the design fixes p = 1/2");
  double a;
  if (const auto* gu = std::get_if<GappedUniform>(&cfg.dist.variant())) {
    a = gu->a;
  } else if (const auto* un = std::get_if<Uniform>(&cfg.dist.variant());
             un && un->a == 0.0 && un->b == 2.0) {
    a = 0.0;
  } else {
    throw std::domain_error(
        "run_normality_experiment: distribution must be Uniform(0,2) or GappedUniform(a)");
  }
  const double sigma = std::sqrt(gapped_sigma2(a));
  const double population = 0.75 + 0.25 * a;  // int_{1/2}^1 H^{-1}

  ExperimentReport rep;
  rep.experiment = "normality";
  rep.p = cfg.p;
  rep.replications = cfg.replications;
  rep.seed = cfg.seed;
  for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
    const std::size_t n = cfg.n_values[ni];
    if (n % 2 != 0) throw std::domain_error("run_normality_experiment: n must be even");
    std::vector<double> deltas(cfg.replications);
    parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
      CounterRng rng =
          CounterRng::stream(cfg.seed, stream_id::kNormality, ni * cfg.replications + r);
      Sample s(draw_sample(cfg.dist, n, rng));
      deltas[r] = std::sqrt(static_cast<double>(n)) *
                  (empirical_upper(s, 0.5) - population) / sigma;
    });
    SummaryRow row;
    row.n = n;
    row.mean = mean_of(deltas);
    row.median = median_of(deltas);
    row.sd = sd_of(deltas, row.mean);
    row.ks = ks_vs_standard_normal(deltas);
    rep.rows.push_back(row);
    if (cfg.keep_raw) rep.raw.push_back(std::move(deltas));
  }
  return rep;
}

double gapped_sigma2(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("gapped_sigma2: a must be in [0,1]");
  return (29.0 * a * a + 14.0 * a + 5.0) / 48.0;
}

std::pair<double, double> median_gap_probability(std::size_t n) {
  if (n < 1) throw std::domain_error("median_gap_probability: need n >= 1");
  if (n > 1000)
    throw std::domain_error("median_gap_probability: n <= 1000 (log-gamma binomial range)");
  if (n % 2 == 1) return {0.5, 0.5};
  double term;
  if (n <= 50) {
    // C(n, n/2) fits a 64-bit integer exactly; dividing by 2^(n+1) is exact
    // in binary, so the small-n values (e.g. 1/4 and 3/4 at n=2) are exact.
    unsigned long long binom = 1;
    for (std::size_t i = 1; i <= n / 2; ++i) binom = binom * (n / 2 + i) / i;
    term = std::ldexp(static_cast<double>(binom), -static_cast<int>(n + 1));
  } else {
    const double nn = static_cast<double>(n);
    const double log_binom = std::lgamma(nn + 1.0) - 2.0 * std::lgamma(nn / 2.0 + 1.0);
    term = std::exp(log_binom - (nn + 1.0) * std::log(2.0));
  }
  return {0.5 - term, 0.5 + term};
}

std::pair<double, double> median_gap_probability_mc(std::size_t n, std::size_t m,
                                                    std::uint64_t seed, unsigned threads) {
  if (n < 1 || m < 1) throw std::domain_error("median_gap_probability_mc: need n, m >= 1");
  const Dist gapped{GappedUniform(0.5)};
  const std::size_t k = (n + 1) / 2;  // ceil(n/2)
  std::vector<char> above(m), below(m);
  parallel_for(m, threads, [&](std::size_t r) {
    CounterRng rng = CounterRng::stream(seed, stream_id::kMedianGap, r);
    std::vector<double> values = draw_sample(gapped, n, rng);
    std::nth_element(values.begin(), values.begin() + static_cast<long>(k - 1), values.end());
    const double med = values[k - 1];
    above[r] = med > 1.5 ? 1 : 0;
    below[r] = med < 0.5 ? 1 : 0;
  });
  double pa = 0.0, pb = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    pa += above[r];
    pb += below[r];
  }
  return {pa / static_cast<double>(m), pb / static_cast<double>(m)};
}

VervaatResult vervaat_paths(std::size_t n, std::span<const double> grid, std::size_t num_paths,
                            std::uint64_t seed, unsigned threads) {
  if (n < 1) throw std::domain_error("vervaat_paths: need n >= 1");
  for (double p : grid)
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("vervaat_paths: grid must lie in [0,1]");

  VervaatResult res;
  res.grid.assign(grid.begin(), grid.end());
  res.paths.assign(num_paths, std::vector<double>(grid.size(), 0.0));
  const Dist unif{Uniform(0.0, 1.0)};

  parallel_for(num_paths, threads, [&](std::size_t path) {
    CounterRng rng = CounterRng::stream(seed, stream_id::kVervaat, path);
    std::vector<double> u = draw_sample(unif, n, rng);
    std::sort(u.begin(), u.end());
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + u[i];
    const double nn = static_cast<double>(n);
    for (std::size_t gi = 0; gi < res.grid.size(); ++gi) {
      const double p = res.grid[gi];
      if (p <= 0.0) { res.paths[path][gi] = 0.0; continue; }
      const auto k = static_cast<std::size_t>(std::max(1LL, ceil_snapped(nn * p)));
      // Number of observations <= p and their sum, for sum (p - U_i)^+.
      const auto cnt = static_cast<std::size_t>(
          std::upper_bound(u.begin(), u.end(), p) - u.begin());
      const double plus_part = static_cast<double>(cnt) * p - prefix[cnt];
      const double v = prefix[k] / nn -
                       (static_cast<double>(k) / nn - p) * u[k - 1] +
                       plus_part / nn - p * p;
      res.paths[path][gi] = nn * v;
    }
  });
  return res;
}

double ks_vs_standard_normal(std::vector<double> values) {
  if (values.empty()) throw std::domain_error("ks_vs_standard_normal: empty input");
  std::sort(values.begin(), values.end());
  const double m = static_cast<double>(values.size());
  double best = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double z = normal_cdf(values[i]);
    best = std::max(best, std::fabs(static_cast<double>(i + 1) / m - z));
    best = std::max(best, std::fabs(z - static_cast<double>(i) / m));
  }
  return best;
}

double ks_critical_1pct(std::size_t m) {
  return 1.63 / std::sqrt(static_cast<double>(m));
}

}  // namespace iq
