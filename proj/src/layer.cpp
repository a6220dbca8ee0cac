#include "iq/layer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "iq/error.hpp"
#include "iq/quadrature.hpp"

namespace iq {

namespace {
void require_prob_open(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error(std::string(what) + ": p must be in (0,1)");
}
}  // namespace

LayerSpec LayerSpec::upper(double p) {
  require_prob_open(p, "LayerSpec::upper");
  return {LayerKind::upper, p, 1.0};
}

LayerSpec LayerSpec::lower(double p) {
  require_prob_open(p, "LayerSpec::lower");
  return {LayerKind::lower, 0.0, p};
}

LayerSpec LayerSpec::middle(double p1, double p2) {
  require_prob_open(p1, "LayerSpec::middle");
  require_prob_open(p2, "LayerSpec::middle");
  if (!(p1 < p2)) throw std::domain_error("LayerSpec::middle: need p1 < p2");
  return {LayerKind::middle, p1, p2};
}

LayerSpec LayerSpec::full() { return {LayerKind::full, 0.0, 1.0}; }

double layer_integral(const Dist& d, const LayerSpec& spec) {
  switch (spec.kind) {
    case LayerKind::upper: return quantile_integral(d, spec.p1, 1.0);
    case LayerKind::lower: return quantile_integral(d, 0.0, spec.p2);
    case LayerKind::middle: return quantile_integral(d, spec.p1, spec.p2);
    case LayerKind::full: return mean(d);
  }
  throw std::logic_error("layer_integral: bad kind");
}

double layer_integral_quadrature(const Dist& d, const LayerSpec& spec) {
  const double a = (spec.kind == LayerKind::upper || spec.kind == LayerKind::middle) ? spec.p1 : 0.0;
  const double b = (spec.kind == LayerKind::lower || spec.kind == LayerKind::middle) ? spec.p2 : 1.0;
  if (b == 1.0 && !upper_quantile_integrable(d))
    throw divergence_error("layer_integral_quadrature: upper quantile tail not integrable");
  if (a == 0.0 && !lower_quantile_integrable(d))
    throw divergence_error("layer_integral_quadrature: lower quantile tail not integrable");
  // Split at interior quantile jumps so the adaptive scheme only ever sees
  // one-sided singularities.
  std::vector<double> cuts{a};
  for (double j : quantile_jump_levels(d))
    if (j > a && j < b) cuts.push_back(j);
  cuts.push_back(b);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    acc += integrate_unit_subinterval([&](double u) { return quantile(d, u); }, cuts[i],
                                      cuts[i + 1], 1e-10);
  }
  return acc;
}

double empirical_upper(const Sample& s, double p) {
  require_prob_open(p, "empirical_upper");
  const std::size_t n = s.size();
  const auto k = static_cast<std::size_t>(
      std::max(1LL, ceil_snapped(static_cast<double>(n) * p)));
  double sum = 0.0;
  for (std::size_t i = k + 1; i <= n; ++i) sum += s.order_stat(i);
  sum /= static_cast<double>(n);
  return sum + (static_cast<double>(k) / static_cast<double>(n) - p) * s.order_stat(k);
}

double empirical_lower(const Sample& s, double p) {
  require_prob_open(p, "empirical_lower");
  const std::size_t n = s.size();
  const auto k = static_cast<std::size_t>(
      std::max(1LL, ceil_snapped(static_cast<double>(n) * p)));
  double sum = 0.0;
  for (std::size_t i = 1; i <= k; ++i) sum += s.order_stat(i);
  sum /= static_cast<double>(n);
  return sum - (static_cast<double>(k) / static_cast<double>(n) - p) * s.order_stat(k);
}

double empirical_middle(const Sample& s, double p1, double p2) {
  require_prob_open(p1, "empirical_middle");
  require_prob_open(p2, "empirical_middle");
  if (!(p1 < p2)) throw std::domain_error("empirical_middle: need p1 < p2");
  return empirical_lower(s, p2) - empirical_lower(s, p1);
}

double empirical_layer(const Sample& s, const LayerSpec& spec) {
  switch (spec.kind) {
    case LayerKind::upper: return empirical_upper(s, spec.p1);
    case LayerKind::lower: return empirical_lower(s, spec.p2);
    case LayerKind::middle: return empirical_middle(s, spec.p1, spec.p2);
    case LayerKind::full: return s.mean();
  }
  throw std::logic_error("empirical_layer: bad kind");
}

double remainder(double p, const Dist& f, const Dist& g) {
  require_prob_open(p, "remainder");
  const double qf = quantile(f, p);
  const double qg = quantile(g, p);
  if (qf >= qg) return cdf_integral(g, qg, qf) - p * (qf - qg);
  return p * (qg - qf) - cdf_integral(g, qf, qg);
}

double remainder_symmetrized(double p, const Dist& f, const Dist& g) {
  require_prob_open(p, "remainder_symmetrized");
  const double qf = quantile(f, p);
  const double qg = quantile(g, p);
  const double lo = std::min(qf, qg), hi = std::max(qf, qg);
  const double v = cdf_integral(g, lo, hi) - cdf_integral(f, lo, hi);
  return qf >= qg ? v : -v;
}

DecompositionReport verify_decomposition(const LayerSpec& spec, const Dist& f, const Dist& g) {
  DecompositionReport rep;
  switch (spec.kind) {
    case LayerKind::upper: {
      const double p = spec.p1;
      rep.lhs = quantile_integral(g, p, 1.0) - quantile_integral(f, p, 1.0);
      const double qf = quantile(f, p);
      rep.cdf_side = upper_tail_integral(g, qf) - upper_tail_integral(f, qf);
      rep.rem_p1 = remainder(p, f, g);
      rep.residual = rep.lhs - (rep.cdf_side - rep.rem_p1);
      break;
    }
    case LayerKind::lower: {
      const double p = spec.p2;
      rep.lhs = quantile_integral(g, 0.0, p) - quantile_integral(f, 0.0, p);
      const double qf = quantile(f, p);
      rep.cdf_side = lower_tail_integral(f, qf) - lower_tail_integral(g, qf);
      rep.rem_p1 = remainder(p, f, g);
      rep.residual = rep.lhs - (rep.cdf_side + rep.rem_p1);
      break;
    }
    case LayerKind::middle: {
      rep.lhs = quantile_integral(g, spec.p1, spec.p2) - quantile_integral(f, spec.p1, spec.p2);
      const double q1 = quantile(f, spec.p1);
      const double q2 = quantile(f, spec.p2);
      rep.cdf_side = cdf_integral(f, q1, q2) - cdf_integral(g, q1, q2);
      rep.rem_p1 = remainder(spec.p1, f, g);
      rep.rem_p2 = remainder(spec.p2, f, g);
      rep.residual = rep.lhs - (rep.cdf_side + rep.rem_p2 - rep.rem_p1);
      break;
    }
    case LayerKind::full: {
      rep.lhs = quantile_integral(g, 0.0, 1.0) - quantile_integral(f, 0.0, 1.0);
      // int_R (F-G) assembled from the tail integrals split at a finite
      // point, so the cdf side is evaluated independently of the means.
      const double t = 0.5 * (quantile(f, 0.5) + quantile(g, 0.5));
      rep.cdf_side = (lower_tail_integral(f, t) - lower_tail_integral(g, t)) +
                     (upper_tail_integral(g, t) - upper_tail_integral(f, t));
      rep.residual = rep.lhs - rep.cdf_side;
      break;
    }
  }
  return rep;
}

double truncated_full_cdf_side(const Dist& f, const Dist& g) {
  const double lo = support_lo(f);
  const double hi = support_hi(f);
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw std::domain_error("truncated_full_cdf_side: F must have finite support endpoints");
  return cdf_integral(f, lo, hi) - cdf_integral(g, lo, hi);
}

StepCdf random_step_cdf(CounterRng& rng, int max_atoms) {
  const int k = 1 + static_cast<int>(rng.next_index(static_cast<std::uint64_t>(max_atoms)));
  std::vector<double> atoms(static_cast<std::size_t>(k));
  std::vector<double> masses(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    atoms[static_cast<std::size_t>(i)] = -5.0 + 10.0 * rng.next_double();
    masses[static_cast<std::size_t>(i)] = -std::log(rng.next_open());
  }
  double total = 0.0;
  for (double m : masses) total += m;
  for (double& m : masses) m /= total;
  return StepCdf(std::move(atoms), std::move(masses));
}

IdentityFuzzSummary run_identity_fuzz(std::size_t pairs, std::uint64_t seed) {
  static const double kPGrid[] = {0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95};
  IdentityFuzzSummary sum;
  sum.pairs = pairs;
  CounterRng rng = CounterRng::stream(seed, stream_id::kFuzz, 0);
  auto track = [&sum](double residual) {
    sum.max_abs_residual = std::max(sum.max_abs_residual, std::fabs(residual));
    ++sum.checks;
  };
  for (std::size_t i = 0; i < pairs; ++i) {
    const Dist f{random_step_cdf(rng)};
    const Dist g{random_step_cdf(rng)};
    for (double p : kPGrid) {
      track(verify_decomposition(LayerSpec::upper(p), f, g).residual);
      track(verify_decomposition(LayerSpec::lower(p), f, g).residual);

      const double rem = remainder(p, f, g);
      sum.min_remainder = std::min(sum.min_remainder, rem);
      const double sym = remainder_symmetrized(p, f, g);
      const double cap = std::fabs(quantile(g, p) - quantile(f, p)) * sup_distance(f, g);
      sum.max_bound_violation = std::max(sum.max_bound_violation, rem - sym);
      sum.max_bound_violation = std::max(sum.max_bound_violation, sym - cap);
    }
    track(verify_decomposition(LayerSpec::middle(0.25, 0.75), f, g).residual);
    track(verify_decomposition(LayerSpec::middle(0.1, 0.6), f, g).residual);
    track(verify_decomposition(LayerSpec::full(), f, g).residual);
  }
  return sum;
}

}  // namespace iq
