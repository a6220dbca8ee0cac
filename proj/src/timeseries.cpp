#include "iq/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "iq/error.hpp"
#include "iq/experiments.hpp"
#include "iq/normal.hpp"
#include "iq/parallel.hpp"
#include "iq/rng.hpp"

namespace iq {

Ar1Config::Ar1Config(double phi_, Dist innovation_, std::size_t burn_in_, std::uint64_t seed_)
    : phi(phi_), innovation(std::move(innovation_)), burn_in(burn_in_), seed(seed_) {
  if (!(std::fabs(phi) < 1.0)) throw std::invalid_argument("Ar1Config: need |phi| < 1 (causality)");
  mean(innovation);  // innovations must have a finite mean to be centered
}

std::vector<double> simulate_ar1(const Ar1Config& cfg, std::size_t n, std::uint64_t path) {
  CounterRng rng = CounterRng::stream(cfg.seed, stream_id::kAr1, path);
  const double mu = mean(cfg.innovation);
  std::vector<double> out;
  out.reserve(n);
  double x = 0.0;
  for (std::size_t t = 0; t < cfg.burn_in; ++t) x = cfg.phi * x + (draw(cfg.innovation, rng) - mu);
  for (std::size_t t = 0; t < n; ++t) {
    x = cfg.phi * x + (draw(cfg.innovation, rng) - mu);
    out.push_back(x);
  }
  return out;
}

HTransform HTransform::make(const LayerSpec& spec, const Dist& reference) {
  HTransform h;
  h.kind = spec.kind;
  switch (spec.kind) {
    case LayerKind::upper:
      h.q1 = quantile(reference, spec.p1);
      break;
    case LayerKind::lower:
      h.q1 = quantile(reference, spec.p2);
      break;
    case LayerKind::middle:
      h.q1 = quantile(reference, spec.p1);
      h.q2 = quantile(reference, spec.p2);
      break;
    case LayerKind::full:
      throw std::domain_error("HTransform: the full layer has no transform");
  }
  return h;
}

double HTransform::operator()(double x) const {
  switch (kind) {
    case LayerKind::upper: return std::max(0.0, x - q1);
    case LayerKind::lower: return std::max(0.0, q1 - x);
    case LayerKind::middle: return std::max(0.0, q2 - x) - std::max(0.0, q1 - x);
    case LayerKind::full: break;
  }
  throw std::logic_error("HTransform: bad kind");
}

std::size_t default_bandwidth(std::size_t n) {
  return static_cast<std::size_t>(std::floor(std::cbrt(static_cast<double>(n))));
}

double long_run_variance(std::span<const double> series, std::size_t bandwidth) {
  const std::size_t n = series.size();
  if (n < 2) throw std::domain_error("long_run_variance: need at least two observations");
  if (bandwidth >= n) throw std::domain_error("long_run_variance: bandwidth must be < n");
  double mu = 0.0;
  for (double v : series) mu += v;
  mu /= static_cast<double>(n);
  double acc = 0.0;
  for (std::size_t h = 0; h <= bandwidth; ++h) {
    double g = 0.0;
    for (std::size_t t = 0; t + h < n; ++t) g += (series[t] - mu) * (series[t + h] - mu);
    g /= static_cast<double>(n);
    const double wgt = 1.0 - static_cast<double>(h) / static_cast<double>(bandwidth + 1);
    acc += (h == 0) ? g : 2.0 * wgt * g;
  }
  return acc;
}

double long_run_variance(std::span<const double> series, const HTransform& h,
                         std::size_t bandwidth) {
  std::vector<double> y(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) y[i] = h(series[i]);
  return long_run_variance(y, bandwidth);
}

double s_mixing_bound(const Ar1Config& cfg, int m, double gamma_exponent) {
  if (m < 1) throw std::domain_error("s_mixing_bound: need m >= 1");
  if (!(gamma_exponent > 0.0)) throw std::domain_error("s_mixing_bound: need a > 0");
  const double sigma2 = variance(cfg.innovation);
  const double gamma_m = std::pow(static_cast<double>(m), -gamma_exponent);
  return std::pow(cfg.phi, 2.0 * (m + 1)) * sigma2 /
         (gamma_m * gamma_m * (1.0 - cfg.phi * cfg.phi));
}

double m_mixing_bound(const Ar1Config& cfg, int m, double p) {
  if (m < 1) throw std::domain_error("m_mixing_bound: need m >= 1");
  if (!(p >= 1.0)) throw std::domain_error("m_mixing_bound: need p >= 1");
  const double norm_p = std::pow(abs_central_moment(cfg.innovation, p), 1.0 / p);
  return std::pow(std::fabs(cfg.phi), static_cast<double>(m + 1)) * norm_p /
         (1.0 - std::fabs(cfg.phi));
}

MixingRateCheck m_mixing_rate_condition(double A, double eta, double p) {
  if (!(p > 2.0) || !(eta > 0.0))
    throw std::domain_error("m_mixing_rate_condition: need p > 2 and eta > 0");
  MixingRateCheck r;
  r.a_required = std::max(1.0, (p - 2.0) / (2.0 * eta) * (1.0 - (1.0 + eta) / p));
  r.eta_ok = (1.0 + eta) / p < 0.5;
  r.ok = r.eta_ok && A > r.a_required;
  return r;
}

StationaryMarginal stationary_marginal(const Ar1Config& cfg, std::size_t pilot_n) {
  if (const auto* nd = std::get_if<NormalDist>(&cfg.innovation.variant())) {
    const double s = nd->sigma / std::sqrt(1.0 - cfg.phi * cfg.phi);
    return {Dist(NormalDist(0.0, s)), false};
  }
  // Pilot quantile table: one long stationary path, reduced to a step cdf on
  // a fine grid of order statistics.
  Ar1Config pilot_cfg = cfg;
  pilot_cfg.seed = CounterRng::derive(cfg.seed, stream_id::kPilot);
  std::vector<double> path = simulate_ar1(pilot_cfg, pilot_n, 0);
  std::sort(path.begin(), path.end());
  const std::size_t table = std::min<std::size_t>(100'000, pilot_n);
  std::vector<double> atoms(table), masses(table, 1.0 / static_cast<double>(table));
  for (std::size_t i = 0; i < table; ++i) {
    const std::size_t j = ((i + 1) * pilot_n) / table - 1;
    atoms[i] = path[j];
  }
  // Ties are merged by the StepCdf constructor; strictly increasing atoms
  // are not guaranteed from a pilot path, so perturb duplicates minimally.
  return {Dist(StepCdf(std::move(atoms), std::move(masses))), true};
}

TsCltReport ts_layer_clt_report(const Ar1Config& cfg, std::size_t n, const LayerSpec& spec,
                                std::size_t m_reps, unsigned threads) {
  if (spec.kind == LayerKind::full)
    throw std::domain_error("ts_layer_clt_report: use a proper layer (upper/lower/middle)");
  if (m_reps < 2) throw std::domain_error("ts_layer_clt_report: need m_reps >= 2");

  const StationaryMarginal marginal = stationary_marginal(cfg);
  const double population = layer_integral(marginal.dist, spec);
  const HTransform h = HTransform::make(spec, marginal.dist);
  const std::size_t bandwidth = default_bandwidth(n);
  const double z95 = normal_quantile(0.975);

  std::vector<double> stats(m_reps);
  std::vector<char> covered(m_reps);
  parallel_for(m_reps, threads, [&](std::size_t r) {
    Ar1Config rep_cfg = cfg;
    std::vector<double> path = simulate_ar1(rep_cfg, n, r);
    const double lrv = long_run_variance(path, h, bandwidth);
    const double est = empirical_layer(Sample(std::move(path)), spec);
    const double se = std::sqrt(std::max(lrv, 1e-300) / static_cast<double>(n));
    stats[r] = (est - population) / se;
    covered[r] = std::fabs(est - population) <= z95 * se ? 1 : 0;
  });

  TsCltReport rep;
  rep.n = n;
  rep.reps = m_reps;
  rep.population = population;
  rep.approximate_marginal = marginal.approximate;
  double cov = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t r = 0; r < m_reps; ++r) {
    cov += covered[r];
    m1 += stats[r];
  }
  m1 /= static_cast<double>(m_reps);
  for (double s : stats) m2 += (s - m1) * (s - m1);
  rep.coverage = cov / static_cast<double>(m_reps);
  rep.stat_mean = m1;
  rep.stat_var = m2 / static_cast<double>(m_reps - 1);
  rep.ks_stat = ks_vs_standard_normal(stats);
  rep.stats = std::move(stats);
  return rep;
}

}  // namespace iq
