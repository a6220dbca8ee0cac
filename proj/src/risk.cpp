#include "iq/risk.hpp"

#include <cmath>
#include <stdexcept>

#include "iq/error.hpp"
#include "iq/layer.hpp"
#include "iq/normal.hpp"
#include "iq/parallel.hpp"
#include "iq/rng.hpp"

namespace iq {

namespace {

void require_prob_open(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error(std::string(what) + ": p must be in (0,1)");
}

double checked_mean(const Sample& s) {
  const double mu = s.mean();
  double scale = 0.0;
  for (double v : s.sorted()) scale += std::fabs(v);
  scale = std::max(1.0, scale / static_cast<double>(s.size()));
  if (std::fabs(mu) < 1e-12 * scale)
    throw degenerate_mean_error("sample mean is numerically zero; Lorenz/Gini undefined");
  return mu;
}

MeasureEstimate finish(Measure m, double p, double est, double avar, const Sample& s,
                       const EstimateOptions& opt) {
  MeasureEstimate r;
  r.measure = m;
  r.p = p;
  r.estimate = est;
  r.n = s.size();
  r.method = opt.method;
  r.confidence = opt.confidence;
  if (opt.method == VarianceMethod::bootstrap) {
    avar = bootstrap_variance(s, m, p, opt.bootstrap_replicates, opt.seed, opt.threads);
  }
  r.stderr_ = std::sqrt(std::max(0.0, avar) / static_cast<double>(s.size()));
  const double z = normal_quantile(0.5 + 0.5 * opt.confidence);
  r.ci_lo = est - z * r.stderr_;
  r.ci_hi = est + z * r.stderr_;
  return r;
}

// Variance with 1/n normalization (plug-in convention).
double plugin_variance(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size());
}

double second_moment_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::tvar_up: return "tvar-up";
    case Measure::tvar_down: return "tvar-down";
    case Measure::lorenz: return "lorenz";
    case Measure::gini: return "gini";
  }
  return "?";
}

// --- population values ---------------------------------------------------------

double tvar_up(const Dist& d, double p) {
  require_prob_open(p, "tvar_up");
  return layer_integral(d, LayerSpec::upper(p)) / (1.0 - p);
}

double tvar_down(const Dist& d, double p) {
  require_prob_open(p, "tvar_down");
  return layer_integral(d, LayerSpec::lower(p)) / p;
}

double lorenz(const Dist& d, double p) {
  require_prob_open(p, "lorenz");
  const double mu = mean(d);
  if (mu == 0.0) throw degenerate_mean_error("lorenz: population mean is zero");
  return layer_integral(d, LayerSpec::lower(p)) / mu;
}

double gini_curve(const Dist& d, double p) {
  require_prob_open(p, "gini_curve");
  const double mu = mean(d);
  if (mu == 0.0) throw degenerate_mean_error("gini_curve: population mean is zero");
  return (layer_integral(d, LayerSpec::upper(1.0 - p)) - layer_integral(d, LayerSpec::lower(p))) / mu;
}

double population_value(const Dist& d, Measure m, double p) {
  switch (m) {
    case Measure::tvar_up: return tvar_up(d, p);
    case Measure::tvar_down: return tvar_down(d, p);
    case Measure::lorenz: return lorenz(d, p);
    case Measure::gini: return gini_curve(d, p);
  }
  throw std::logic_error("population_value: bad measure");
}

// --- empirical estimates ---------------------------------------------------------

namespace {

double point_estimate(const Sample& s, Measure m, double p) {
  switch (m) {
    case Measure::tvar_up: return empirical_upper(s, p) / (1.0 - p);
    case Measure::tvar_down: return empirical_lower(s, p) / p;
    case Measure::lorenz: return empirical_lower(s, p) / checked_mean(s);
    case Measure::gini: {
      const double mu = checked_mean(s);
      return 1.0 - (empirical_lower(s, 1.0 - p) + empirical_lower(s, p)) / mu;
    }
  }
  throw std::logic_error("point_estimate: bad measure");
}

}  // namespace

MeasureEstimate tvar_up(const Sample& s, double p, const EstimateOptions& opt) {
  require_prob_open(p, "tvar_up");
  const double q = s.quantile(p);
  std::vector<double> y(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) y[i] = std::max(0.0, s.sorted()[i] - q);
  const double avar = plugin_variance(y) / ((1.0 - p) * (1.0 - p));
  return finish(Measure::tvar_up, p, empirical_upper(s, p) / (1.0 - p), avar, s, opt);
}

MeasureEstimate tvar_down(const Sample& s, double p, const EstimateOptions& opt) {
  require_prob_open(p, "tvar_down");
  const double q = s.quantile(p);
  std::vector<double> y(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) y[i] = std::max(0.0, q - s.sorted()[i]);
  const double avar = plugin_variance(y) / (p * p);
  return finish(Measure::tvar_down, p, empirical_lower(s, p) / p, avar, s, opt);
}

std::vector<double> lorenz_influence(const Sample& s, double p) {
  require_prob_open(p, "lorenz_influence");
  const double mu = checked_mean(s);
  const double q = s.quantile(p);
  const double lc = empirical_lower(s, p) / mu;
  double avg_pos = 0.0;
  for (double x : s.sorted()) avg_pos += std::max(0.0, q - x);
  avg_pos /= static_cast<double>(s.size());
  std::vector<double> y(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s.sorted()[i];
    y[i] = (std::max(0.0, q - x) - avg_pos) / mu + lc / mu * (x - mu);
  }
  return y;
}

std::vector<double> gini_influence(const Sample& s, double p) {
  require_prob_open(p, "gini_influence");
  auto y1 = lorenz_influence(s, 1.0 - p);
  auto y2 = lorenz_influence(s, p);
  for (std::size_t i = 0; i < y1.size(); ++i) y1[i] += y2[i];
  return y1;
}

MeasureEstimate lorenz(const Sample& s, double p, const EstimateOptions& opt) {
  require_prob_open(p, "lorenz");
  const double avar = second_moment_of(lorenz_influence(s, p));
  return finish(Measure::lorenz, p, point_estimate(s, Measure::lorenz, p), avar, s, opt);
}

MeasureEstimate gini_curve(const Sample& s, double p, const EstimateOptions& opt) {
  require_prob_open(p, "gini_curve");
  const double avar = second_moment_of(gini_influence(s, p));
  return finish(Measure::gini, p, point_estimate(s, Measure::gini, p), avar, s, opt);
}

MeasureEstimate estimate(const Sample& s, Measure m, double p, const EstimateOptions& opt) {
  switch (m) {
    case Measure::tvar_up: return tvar_up(s, p, opt);
    case Measure::tvar_down: return tvar_down(s, p, opt);
    case Measure::lorenz: return lorenz(s, p, opt);
    case Measure::gini: return gini_curve(s, p, opt);
  }
  throw std::logic_error("estimate: bad measure");
}

double bootstrap_variance(const Sample& s, Measure m, double p, int B, std::uint64_t seed,
                          unsigned threads) {
  if (B < 100) throw std::domain_error("bootstrap_variance: need B >= 100");
  const std::size_t n = s.size();
  std::vector<double> est(static_cast<std::size_t>(B));
  parallel_for(static_cast<std::size_t>(B), threads, [&](std::size_t b) {
    CounterRng rng = CounterRng::stream(seed, stream_id::kBootstrap, b);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = s.sorted()[rng.next_index(n)];
    est[b] = point_estimate(Sample(std::move(values)), m, p);
  });
  double mean_est = 0.0;
  for (double e : est) mean_est += e;
  mean_est /= static_cast<double>(B);
  double var = 0.0;
  for (double e : est) var += (e - mean_est) * (e - mean_est);
  var /= static_cast<double>(B - 1);
  return var * static_cast<double>(n);
}

}  // namespace iq
