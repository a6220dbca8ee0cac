#ifndef IQ_EXPERIMENTS_HPP
#define IQ_EXPERIMENTS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "iq/distribution.hpp"

namespace iq {

// Seeded Monte Carlo run description. Identical configs produce bit-identical
// reports: replicate r of experiment e draws from the stream
// (master seed, e, r), and reductions run in replicate order.
struct ExperimentConfig {
  std::string experiment = "bias";           // "bias" | "normality"
  Dist dist = Dist(Uniform(0.0, 2.0));
  double p = 0.75;
  std::vector<std::size_t> n_values = {40, 100, 200, 500, 1000};
  std::size_t replications = 10'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool keep_raw = false;
};

struct SummaryRow {
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0;
  double ks = 0.0;  // filled by the normality experiment
};

struct ExperimentReport {
  std::string experiment;
  double p = 0.0;
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> raw;  // per n, when requested
};

// Per-n mean/median/sd of the individual biases
// empirical_upper(sample, p) - population upper-layer integral.
ExperimentReport run_bias_experiment(const ExperimentConfig& cfg);

// Per-n summaries of the standardized statistics
//   Delta_n = sqrt(n) (empirical_upper(sample, 1/2) - population) / sigma_1(1/2)
// with the analytic sigma_1; the ks column carries the Kolmogorov distance
// of the m standardized values from the standard normal. The distribution
// must be Uniform(0,2) or GappedUniform(a), p must be 1/2, and every n must
// be even (the half-sample order statistic is then exact).
ExperimentReport run_normality_experiment(const ExperimentConfig& cfg);

// sigma_1^2(1/2) for the gapped uniform: (29a^2 + 14a + 5)/48 on a in [0,1].
double gapped_sigma2(double a);

// Exact probabilities P(Z_{ceil(n/2):n} > 3/2) and P(Z_{ceil(n/2):n} < 1/2)
// for the gapped variable with a = 1/2:
//   even n: 1/2 -/+ C(n, n/2) / 2^(n+1)   (binomial via log-gamma, n <= 1000)
//   odd n : exactly (1/2, 1/2)
std::pair<double, double> median_gap_probability(std::size_t n);

// Monte Carlo counterpart of the two probabilities above.
std::pair<double, double> median_gap_probability_mc(std::size_t n, std::size_t m,
                                                    std::uint64_t seed, unsigned threads = 0);

// Sample paths of the normalized uniform Vervaat process n*V_n(p) on the
// grid, one row per path:
//   V_n(p) = (1/n) sum_{i<=ceil(np)} U_{i:n} - (ceil(np)/n - p) U_{ceil(np):n}
//            + (1/n) sum_i (p - U_i)^+ - p^2.
// Values are non-negative with V_n(0) = V_n(1) = 0.
struct VervaatResult {
  std::vector<double> grid;
  std::vector<std::vector<double>> paths;  // n * V_n(p)
};
VervaatResult vervaat_paths(std::size_t n, std::span<const double> grid, std::size_t num_paths,
                            std::uint64_t seed, unsigned threads = 0);

// Kolmogorov sup-distance between the empirical cdf of the values and the
// standard normal cdf.
double ks_vs_standard_normal(std::vector<double> values);

// Asymptotic 1% critical value 1.63/sqrt(m) for the KS statistic.
double ks_critical_1pct(std::size_t m);

}  // namespace iq

#endif  // IQ_EXPERIMENTS_HPP
