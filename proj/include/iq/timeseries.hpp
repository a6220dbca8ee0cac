#ifndef IQ_TIMESERIES_HPP
#define IQ_TIMESERIES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "iq/distribution.hpp"
#include "iq/layer.hpp"
#include "iq/sample.hpp"

namespace iq {

// Causal AR(1): X_t = phi X_{t-1} + eps_t with |phi| < 1 and iid mean-zero
// innovations. The supplied innovation distribution is centered at its mean
// before use, so any family with a finite mean is acceptable.
struct Ar1Config {
  double phi;
  Dist innovation;
  std::size_t burn_in = 1000;
  std::uint64_t seed = 0;

  Ar1Config(double phi_, Dist innovation_, std::size_t burn_in_ = 1000, std::uint64_t seed_ = 0);
};

// Length-n stationary draw (post burn-in); deterministic given (seed, path).
std::vector<double> simulate_ar1(const Ar1Config& cfg, std::size_t n, std::uint64_t path = 0);

// The Lipschitz(1) layer transforms:
//   upper : (x - q_p)^+      lower : (q_p - x)^+
//   middle: (q_{p2} - x)^+ - (q_{p1} - x)^+   (bounded by q_{p2} - q_{p1})
// with reference quantiles taken from the supplied population distribution.
struct HTransform {
  LayerKind kind;
  double q1 = 0.0;
  double q2 = 0.0;

  static HTransform make(const LayerSpec& spec, const Dist& reference);
  double operator()(double x) const;
};

// Bartlett-kernel (Newey-West) long-run variance
//   gamma_0 + 2 sum_{h=1}^{L} (1 - h/(L+1)) gamma_h
// of the series; non-negative by the kernel choice. Throws when L >= n.
double long_run_variance(std::span<const double> series, std::size_t bandwidth);
double long_run_variance(std::span<const double> series, const HTransform& h,
                         std::size_t bandwidth);

// Default HAC bandwidth floor(n^(1/3)).
std::size_t default_bandwidth(std::size_t n);

// Closed-form coupling bound sequences for the causal AR(1):
//   S-mixing:  delta_m = phi^{2(m+1)} sigma_eps^2 / (gamma_m^2 (1 - phi^2)),
//              gamma_m = m^{-a} for a caller-chosen exponent a > 0;
//   M-mixing:  rho_m = |phi|^{m+1} (E|eps|^p)^{1/p} / (1 - |phi|).
// Both decrease strictly in m when phi != 0.
double s_mixing_bound(const Ar1Config& cfg, int m, double gamma_exponent);
double m_mixing_bound(const Ar1Config& cfg, int m, double p);

// Checks the rate constraints on (A, eta, p) under which the M-mixing CLT
// applies: A > max{1, (p-2)/(2 eta) (1 - (1+eta)/p)} and (1+eta)/p < 1/2.
struct MixingRateCheck {
  bool ok;
  double a_required;
  bool eta_ok;
};
MixingRateCheck m_mixing_rate_condition(double A, double eta, double p);

// Monte Carlo CLT harness: per replicate, the empirical layer integral of an
// AR(1) draw is centered at its population value and studentized by the
// Bartlett long-run variance of the h-transformed path. Reports the CI
// coverage rate, the KS distance of the standardized statistics from the
// standard normal, and their moments.
struct TsCltReport {
  std::size_t n = 0;
  std::size_t reps = 0;
  double coverage = 0.0;   // share of replicates whose 95% CI covers the truth
  double ks_stat = 0.0;
  double stat_mean = 0.0;
  double stat_var = 0.0;
  double population = 0.0;
  bool approximate_marginal = false;  // pilot-based marginal (non-normal innovations)
  std::vector<double> stats;          // standardized statistics, replicate order
};

TsCltReport ts_layer_clt_report(const Ar1Config& cfg, std::size_t n, const LayerSpec& spec,
                                std::size_t m_reps, unsigned threads = 0);

// Stationary marginal of the AR(1): exact Normal(0, sigma_eps^2/(1-phi^2))
// for normal innovations; otherwise tabulated from a long pilot simulation
// and flagged approximate.
struct StationaryMarginal {
  Dist dist;
  bool approximate;
};
StationaryMarginal stationary_marginal(const Ar1Config& cfg, std::size_t pilot_n = 10'000'000);

}  // namespace iq

#endif  // IQ_TIMESERIES_HPP
