#ifndef IQ_RISK_HPP
#define IQ_RISK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "iq/distribution.hpp"
#include "iq/sample.hpp"

namespace iq {

enum class Measure { tvar_up, tvar_down, lorenz, gini };

enum class VarianceMethod { plugin, bootstrap };

std::string measure_name(Measure m);

// Point estimate with a plug-in (or bootstrap) asymptotic variance and a
// pointwise normal-theory confidence interval. stderr_ approximates the
// standard deviation of the estimate, i.e. sqrt(asymptotic variance / n).
struct MeasureEstimate {
  Measure measure;
  double p = 0.0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::size_t n = 0;
  VarianceMethod method = VarianceMethod::plugin;
  double confidence = 0.95;
};

struct EstimateOptions {
  double confidence = 0.95;
  VarianceMethod method = VarianceMethod::plugin;
  int bootstrap_replicates = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Population values. Lorenz and Gini require a non-zero mean; they are
// evaluated for any sign pattern with |mu| > 0, but their usual
// interpretation assumes X >= 0. For the Gini CLT to be meaningful the
// quantile function must be continuous at p and 1-p; probe with
// quantile_continuity_check when the population law is known.
double tvar_up(const Dist& d, double p);
double tvar_down(const Dist& d, double p);
double lorenz(const Dist& d, double p);
double gini_curve(const Dist& d, double p);

// Empirical estimates with asymptotic variances:
//   tvar_up   : Var((X - q_p)^+) / (1-p)^2
//   tvar_down : Var((q_p - X)^+) / p^2
//   lorenz    : second moment of the influence values below
//   gini      : second moment of Y_LC(1-p) + Y_LC(p)
MeasureEstimate tvar_up(const Sample& s, double p, const EstimateOptions& opt = {});
MeasureEstimate tvar_down(const Sample& s, double p, const EstimateOptions& opt = {});
MeasureEstimate lorenz(const Sample& s, double p, const EstimateOptions& opt = {});
MeasureEstimate gini_curve(const Sample& s, double p, const EstimateOptions& opt = {});

MeasureEstimate estimate(const Sample& s, Measure m, double p, const EstimateOptions& opt = {});
double population_value(const Dist& d, Measure m, double p);

// Per-observation influence contributions for the Lorenz curve at level p:
//   Y_i = (1/mu)[(q_p - X_i)^+ - avg_j (q_p - X_j)^+] + (LC(p)/mu)(X_i - mu)
// with all population quantities replaced by plug-ins. Mean-zero by
// construction up to O(1/n); their second moment is the plug-in asymptotic
// variance of sqrt(n) LC_n(p).
std::vector<double> lorenz_influence(const Sample& s, double p);
std::vector<double> gini_influence(const Sample& s, double p);

// Nonparametric bootstrap estimate of the asymptotic variance: n times the
// variance of B resampled estimator replicates. Deterministic given the
// seed; replicate b draws from the stream (seed, bootstrap, b).
double bootstrap_variance(const Sample& s, Measure m, double p, int B, std::uint64_t seed,
                          unsigned threads = 1);

}  // namespace iq

#endif  // IQ_RISK_HPP
