#include "iq/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "iq/error.hpp"
#include "iq/normal.hpp"
#include "iq/quadrature.hpp"

namespace iq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double softplus(double z) {
  // log(1 + e^z) without overflow.
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite parameter");
}
}  // namespace

Uniform::Uniform(double a_, double b_) : a(a_), b(b_) {
  require_finite(a, "Uniform");
  require_finite(b, "Uniform");
  if (!(a < b)) throw std::invalid_argument("Uniform: need a < b");
}

ParetoI::ParetoI(double x0_, double alpha_) : x0(x0_), alpha(alpha_) {
  require_finite(x0, "ParetoI");
  require_finite(alpha, "ParetoI");
  if (!(x0 > 0.0) || !(alpha > 0.0)) throw std::invalid_argument("ParetoI: need x0 > 0, alpha > 0");
}

GappedUniform::GappedUniform(double a_) : a(a_) {
  require_finite(a, "GappedUniform");
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("GappedUniform: need a in [0,1]");
}

NormalDist::NormalDist(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
  require_finite(mu, "NormalDist");
  require_finite(sigma, "NormalDist");
  if (!(sigma > 0.0)) throw std::invalid_argument("NormalDist: need sigma > 0");
}

LogisticDist::LogisticDist(double mu_, double s_) : mu(mu_), s(s_) {
  require_finite(mu, "LogisticDist");
  require_finite(s, "LogisticDist");
  if (!(s > 0.0)) throw std::invalid_argument("LogisticDist: need s > 0");
}

Mixture::Mixture(double delta_, Dist base_, Dist contam_)
    : delta(delta_),
      base(std::make_shared<const Dist>(std::move(base_))),
      contam(std::make_shared<const Dist>(std::move(contam_))) {
  require_finite(delta, "Mixture");
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("Mixture: need delta in [0,1]");
}

// --- cdf ---------------------------------------------------------------------

double cdf(const Dist& d, double x) {
  return std::visit(
      [x](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          if (x <= v.a) return 0.0;
          if (x >= v.b) return 1.0;
          return (x - v.a) / (v.b - v.a);
        } else if constexpr (std::is_same_v<T, ParetoI>) {
          if (x <= v.x0) return 0.0;
          return 1.0 - std::pow(v.x0 / x, v.alpha);
        } else if constexpr (std::is_same_v<T, GappedUniform>) {
          if (x < 0.0) return 0.0;
          if (x >= 2.0) return 1.0;
          if (v.a == 1.0) return 0.5;  // two-point law on {0,2}
          const double c = 1.0 - v.a;
          if (x <= 1.0 - v.a) return x / (2.0 * c);
          if (x <= 1.0 + v.a) return 0.5;
          return (x - 2.0 * v.a) / (2.0 * c);
        } else if constexpr (std::is_same_v<T, NormalDist>) {
          return normal_cdf((x - v.mu) / v.sigma);
        } else if constexpr (std::is_same_v<T, LogisticDist>) {
          const double z = (x - v.mu) / v.s;
          return 1.0 / (1.0 + std::exp(-z));
        } else if constexpr (std::is_same_v<T, Mixture>) {
          return (1.0 - v.delta) * cdf(*v.base, x) + v.delta * cdf(*v.contam, x);
        } else {
          return v.cdf(x);
        }
      },
      d.variant());
}

// --- support -----------------------------------------------------------------

double support_lo(const Dist& d) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) return v.a;
        else if constexpr (std::is_same_v<T, ParetoI>) return v.x0;
        else if constexpr (std::is_same_v<T, GappedUniform>) return 0.0;
        else if constexpr (std::is_same_v<T, NormalDist>) return -kInf;
        else if constexpr (std::is_same_v<T, LogisticDist>) return -kInf;
        else if constexpr (std::is_same_v<T, Mixture>)
          return std::min(support_lo(*v.base), support_lo(*v.contam));
        else return v.min();
      },
      d.variant());
}

double support_hi(const Dist& d) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) return v.b;
        else if constexpr (std::is_same_v<T, ParetoI>) return kInf;
        else if constexpr (std::is_same_v<T, GappedUniform>) return 2.0;
        else if constexpr (std::is_same_v<T, NormalDist>) return kInf;
        else if constexpr (std::is_same_v<T, LogisticDist>) return kInf;
        else if constexpr (std::is_same_v<T, Mixture>)
          return std::max(support_hi(*v.base), support_hi(*v.contam));
        else return v.max();
      },
      d.variant());
}

// --- quantile ----------------------------------------------------------------

namespace {

double mixture_quantile(const Mixture& m, double u) {
  // inf{x : F(x) >= u} by bisection; brackets come from the component
  // quantiles: below both the mixture cdf stays under u, at the larger one
  // it reaches at least u.
  const double qb = quantile(*m.base, u);
  const double qc = quantile(*m.contam, u);
  double lo = std::min(qb, qc);
  double hi = std::max(qb, qc);
  if (hi - lo <= 0.0) return lo;
  Dist md{m};
  if (cdf(md, lo) >= u) return lo;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::fabs(lo) + std::fabs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(md, mid) >= u) hi = mid; else lo = mid;
  }
  return hi;
}

}  // namespace

double quantile(const Dist& d, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("quantile: u outside [0,1]");
  if (u == 0.0) {
    const double lo = support_lo(d);
    if (!std::isfinite(lo))
      throw unbounded_quantile_error("quantile: F^{-1}(0) is -inf for this distribution");
    return lo;
  }
  if (u == 1.0) {
    const double hi = support_hi(d);
    if (!std::isfinite(hi))
      throw unbounded_quantile_error("quantile: F^{-1}(1) is +inf for this distribution");
    return hi;
  }
  return std::visit(
      [u](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          return v.a + (v.b - v.a) * u;
        } else if constexpr (std::is_same_v<T, ParetoI>) {
          return v.x0 * std::pow(1.0 - u, -1.0 / v.alpha);
        } else if constexpr (std::is_same_v<T, GappedUniform>) {
          const double c = 1.0 - v.a;
          return u <= 0.5 ? 2.0 * c * u : 2.0 * c * u + 2.0 * v.a;
        } else if constexpr (std::is_same_v<T, NormalDist>) {
          return v.mu + v.sigma * normal_quantile(u);
        } else if constexpr (std::is_same_v<T, LogisticDist>) {
          return v.mu + v.s * std::log(u / (1.0 - u));
        } else if constexpr (std::is_same_v<T, Mixture>) {
          return mixture_quantile(v, u);
        } else {
          return v.quantile(u);
        }
      },
      d.variant());
}

// --- moments -----------------------------------------------------------------

double mean(const Dist& d) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) return 0.5 * (v.a + v.b);
        else if constexpr (std::is_same_v<T, ParetoI>) {
          if (v.alpha <= 1.0) throw divergence_error("ParetoI: mean diverges for alpha <= 1");
          return v.alpha * v.x0 / (v.alpha - 1.0);
        } else if constexpr (std::is_same_v<T, GappedUniform>) return 1.0;
        else if constexpr (std::is_same_v<T, NormalDist>) return v.mu;
        else if constexpr (std::is_same_v<T, LogisticDist>) return v.mu;
        else if constexpr (std::is_same_v<T, Mixture>)
          return (1.0 - v.delta) * mean(*v.base) + v.delta * mean(*v.contam);
        else return v.mean();
      },
      d.variant());
}

double second_moment(const Dist& d) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          return (v.a * v.a + v.a * v.b + v.b * v.b) / 3.0;
        } else if constexpr (std::is_same_v<T, ParetoI>) {
          if (v.alpha <= 2.0) throw divergence_error("ParetoI: second moment diverges for alpha <= 2");
          return v.alpha * v.x0 * v.x0 / (v.alpha - 2.0);
        } else if constexpr (std::is_same_v<T, GappedUniform>) {
          const double c = 1.0 - v.a;
          return (4.0 / 3.0) * c * c + 3.0 * v.a * c + 2.0 * v.a * v.a;
        } else if constexpr (std::is_same_v<T, NormalDist>) {
          return v.mu * v.mu + v.sigma * v.sigma;
        } else if constexpr (std::is_same_v<T, LogisticDist>) {
          static const double kPi2Over3 = 3.2898681336964528729448303;
          return v.mu * v.mu + v.s * v.s * kPi2Over3;
        } else if constexpr (std::is_same_v<T, Mixture>) {
          return (1.0 - v.delta) * second_moment(*v.base) + v.delta * second_moment(*v.contam);
        } else {
          return v.second_moment();
        }
      },
      d.variant());
}

double variance(const Dist& d) {
  const double m = mean(d);
  return second_moment(d) - m * m;
}

// --- tail integrals ----------------------------------------------------------

namespace {

// Integral of a piecewise-linear cdf over (-inf, t], given knots x[i] with
// cdf values f[i]; the cdf is 0 below x[0], 1 above x.back(), and linear in
// between.
double piecewise_linear_lower_tail(std::span<const double> x, std::span<const double> f, double t) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double lo = x[i], hi = std::min(t, x[i + 1]);
    if (hi <= lo) break;
    const double w = hi - lo;
    const double f_hi = f[i] + (f[i + 1] - f[i]) * (hi - lo) / (x[i + 1] - x[i]);
    s += 0.5 * (f[i] + f_hi) * w;
  }
  if (t > x.back()) s += t - x.back();
  return s;
}

}  // namespace

double lower_tail_integral(const Dist& d, double t) {
  return std::visit(
      [t, &d](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          if (t <= v.a) return 0.0;
          if (t >= v.b) return 0.5 * (v.b - v.a) + (t - v.b);
          const double w = t - v.a;
          return 0.5 * w * w / (v.b - v.a);
        } else if constexpr (std::is_same_v<T, ParetoI>) {
          if (t <= v.x0) return 0.0;
          if (v.alpha == 1.0) return (t - v.x0) - v.x0 * std::log(t / v.x0);
          return (t - v.x0) + std::pow(v.x0, v.alpha) *
                                  (std::pow(t, 1.0 - v.alpha) - std::pow(v.x0, 1.0 - v.alpha)) /
                                  (v.alpha - 1.0);
        } else if constexpr (std::is_same_v<T, GappedUniform>) {
          if (v.a == 1.0) {
            if (t <= 0.0) return 0.0;
            if (t <= 2.0) return 0.5 * t;
            return 1.0 + (t - 2.0);
          }
          const double xs[] = {0.0, 1.0 - v.a, 1.0 + v.a, 2.0};
          const double fs[] = {0.0, 0.5, 0.5, 1.0};
          return piecewise_linear_lower_tail(xs, fs, t);
        } else if constexpr (std::is_same_v<T, NormalDist>) {
          const double z = (t - v.mu) / v.sigma;
          return v.sigma * (normal_pdf(z) + z * normal_cdf(z));
        } else if constexpr (std::is_same_v<T, LogisticDist>) {
          return v.s * softplus((t - v.mu) / v.s);
        } else if constexpr (std::is_same_v<T, Mixture>) {
          return (1.0 - v.delta) * lower_tail_integral(*v.base, t) +
                 v.delta * lower_tail_integral(*v.contam, t);
        } else {
          (void)d;
          return v.lower_tail_integral(t);
        }
      },
      d.variant());
}

double upper_tail_integral(const Dist& d, double t) {
  return std::visit(
      [t, &d](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          if (t >= v.b) return 0.0;
          if (t <= v.a) return 0.5 * (v.b - v.a) + (v.a - t);
          const double w = v.b - t;
          return 0.5 * w * w / (v.b - v.a);
        } else if constexpr (std::is_same_v<T, ParetoI>) {
          if (v.alpha <= 1.0)
            throw divergence_error("ParetoI: upper tail integral diverges for alpha <= 1");
          if (t <= v.x0) return (v.x0 - t) + v.x0 / (v.alpha - 1.0);
          return std::pow(v.x0, v.alpha) * std::pow(t, 1.0 - v.alpha) / (v.alpha - 1.0);
        } else if constexpr (std::is_same_v<T, GappedUniform>) {
          // 1 - F mirrors F around the centre of [0,2].
          Dist self{v};
          if (t >= 2.0) return 0.0;
          if (t <= 0.0) return 1.0 - t;  // mean 1, so E(X-t)^+ = 1 - t below the support
          return mean(self) - t + lower_tail_integral(self, t);
        } else if constexpr (std::is_same_v<T, NormalDist>) {
          const double z = (t - v.mu) / v.sigma;
          return v.sigma * (normal_pdf(z) - z * (1.0 - normal_cdf(z)));
        } else if constexpr (std::is_same_v<T, LogisticDist>) {
          return v.s * softplus(-(t - v.mu) / v.s);
        } else if constexpr (std::is_same_v<T, Mixture>) {
          return (1.0 - v.delta) * upper_tail_integral(*v.base, t) +
                 v.delta * upper_tail_integral(*v.contam, t);
        } else {
          (void)d;
          return v.upper_tail_integral(t);
        }
      },
      d.variant());
}

double cdf_integral(const Dist& d, double a, double b) {
  if (!(a <= b)) throw std::invalid_argument("cdf_integral: a > b");
  if (const auto* s = std::get_if<StepCdf>(&d.variant())) return s->cdf_integral(a, b);
  return lower_tail_integral(d, b) - lower_tail_integral(d, a);
}

double quantile_integral(const Dist& d, double u1, double u2) {
  if (!(u1 >= 0.0 && u2 <= 1.0 && u1 <= u2))
    throw std::domain_error("quantile_integral: need 0 <= u1 <= u2 <= 1");
  if (const auto* s = std::get_if<StepCdf>(&d.variant())) return s->quantile_integral(u1, u2);
  if (u1 == u2) return 0.0;
  if (u1 == 0.0 && u2 == 1.0) return mean(d);
  if (u1 == 0.0) {
    const double q = quantile(d, u2);
    return u2 * q - lower_tail_integral(d, q);
  }
  if (u2 == 1.0) {
    const double q = quantile(d, u1);
    return (1.0 - u1) * q + upper_tail_integral(d, q);
  }
  const double q1 = quantile(d, u1);
  const double q2 = quantile(d, u2);
  return u2 * q2 - u1 * q1 - cdf_integral(d, q1, q2);
}

// --- absolute central moment ---------------------------------------------------

namespace {

void require_abs_moment(const Dist& d, double p) {
  std::visit(
      [p](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ParetoI>) {
          if (v.alpha <= p)
            throw divergence_error("abs_central_moment: Pareto moment of order p needs alpha > p");
        } else if constexpr (std::is_same_v<T, Mixture>) {
          require_abs_moment(*v.base, p);
          require_abs_moment(*v.contam, p);
        }
      },
      d.variant());
}

}  // namespace

double abs_central_moment(const Dist& d, double p) {
  if (!(p >= 1.0)) throw std::domain_error("abs_central_moment: need p >= 1");
  require_abs_moment(d, p);
  const double mu = mean(d);
  if (const auto* n = std::get_if<NormalDist>(&d.variant())) {
    static const double kSqrtPi = 1.7724538509055160272981675;
    return std::pow(n->sigma, p) * std::pow(2.0, 0.5 * p) * std::tgamma(0.5 * (p + 1.0)) / kSqrtPi;
  }
  if (const auto* u = std::get_if<Uniform>(&d.variant())) {
    const double h = 0.5 * (u->b - u->a);
    return std::pow(h, p) / (p + 1.0);
  }
  if (const auto* s = std::get_if<StepCdf>(&d.variant())) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s->size(); ++i)
      acc += s->mass(i) * std::pow(std::fabs(s->atoms()[i] - mu), p);
    return acc;
  }
  return integrate_unit_interval(
      [&](double u) { return std::pow(std::fabs(quantile(d, u) - mu), p); }, 1e-9);
}

bool upper_quantile_integrable(const Dist& d) {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ParetoI>) return v.alpha > 1.0;
        else if constexpr (std::is_same_v<T, Mixture>)
          return upper_quantile_integrable(*v.base) && upper_quantile_integrable(*v.contam);
        else return true;
      },
      d.variant());
}

bool lower_quantile_integrable(const Dist& d) {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Mixture>)
          return lower_quantile_integrable(*v.base) && lower_quantile_integrable(*v.contam);
        else {
          (void)v;
          return true;  // every supported family is bounded or light-tailed below
        }
      },
      d.variant());
}

std::vector<double> quantile_jump_levels(const Dist& d) {
  return std::visit(
      [](const auto& v) -> std::vector<double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GappedUniform>) {
          if (v.a > 0.0) return {0.5};
          return {};
        } else if constexpr (std::is_same_v<T, StepCdf>) {
          std::vector<double> out(v.cumulative().begin(), v.cumulative().end());
          out.pop_back();  // u = 1 is not interior
          return out;
        } else if constexpr (std::is_same_v<T, Mixture>) {
          auto out = quantile_jump_levels(*v.base);
          auto extra = quantile_jump_levels(*v.contam);
          out.insert(out.end(), extra.begin(), extra.end());
          std::sort(out.begin(), out.end());
          out.erase(std::unique(out.begin(), out.end()), out.end());
          return out;
        } else {
          return {};
        }
      },
      d.variant());
}

// --- sup distance --------------------------------------------------------------

bool is_continuous_cdf(const Dist& d) {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GappedUniform>) return v.a < 1.0;
        else if constexpr (std::is_same_v<T, StepCdf>) return false;
        else if constexpr (std::is_same_v<T, Mixture>)
          return is_continuous_cdf(*v.base) && is_continuous_cdf(*v.contam);
        else return true;
      },
      d.variant());
}

namespace {

double sup_distance_step_vs_any(const StepCdf& s, const Dist& g) {
  // On each interval where the step cdf is constant the other cdf is
  // monotone, so the supremum is attained at an atom or its left limit.
  Dist fs{s};
  double best = 0.0;
  for (double x : s.atoms()) {
    best = std::max(best, std::fabs(cdf(fs, x) - cdf(g, x)));
    best = std::max(best, std::fabs(s.cdf_left(x) - cdf(g, x)));
  }
  return best;
}

void grid_candidates(const Dist& d, std::vector<double>& xs) {
  const int n = 2000;
  for (int i = 1; i < n; ++i) xs.push_back(quantile(d, static_cast<double>(i) / n));
  if (std::isfinite(support_lo(d))) xs.push_back(support_lo(d));
  if (std::isfinite(support_hi(d))) xs.push_back(support_hi(d));
}

}  // namespace

double sup_distance(const Dist& f, const Dist& g) {
  const auto* sf = std::get_if<StepCdf>(&f.variant());
  const auto* sg = std::get_if<StepCdf>(&g.variant());
  if (sf && sg) {
    double best = 0.0;
    Dist df{*sf}, dg{*sg};
    for (const auto* s : {sf, sg}) {
      for (double x : s->atoms()) {
        best = std::max(best, std::fabs(cdf(df, x) - cdf(dg, x)));
        best = std::max(best, std::fabs(sf->cdf_left(x) - sg->cdf_left(x)));
      }
    }
    return best;
  }
  if (sf && is_continuous_cdf(g)) return sup_distance_step_vs_any(*sf, g);
  if (sg && is_continuous_cdf(f)) return sup_distance_step_vs_any(*sg, f);

  // Grid-search approximation (documented): quantile grids of both cdfs plus
  // finite support endpoints, probing both sides of every candidate.
  std::vector<double> xs;
  grid_candidates(f, xs);
  grid_candidates(g, xs);
  std::sort(xs.begin(), xs.end());
  double best = 0.0;
  for (double x : xs) {
    best = std::max(best, std::fabs(cdf(f, x) - cdf(g, x)));
    const double xl = std::nextafter(x, -kInf);
    best = std::max(best, std::fabs(cdf(f, xl) - cdf(g, xl)));
  }
  return best;
}

// --- continuity diagnostic ------------------------------------------------------

bool quantile_continuity_check(const Dist& d, double p, std::span<const double> eps_grid) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("quantile_continuity_check: p must be in (0,1)");
  const double q = quantile(d, p);
  for (double eps : eps_grid) {
    if (!(eps > 0.0)) throw std::invalid_argument("quantile_continuity_check: eps must be > 0");
    if (!(cdf(d, q - eps) < p && p < cdf(d, q + eps))) return false;
  }
  return true;
}

bool quantile_continuity_check(const Dist& d, double p) {
  static const double kDefaultGrid[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  return quantile_continuity_check(d, p, kDefaultGrid);
}

double draw(const Dist& d, CounterRng& rng) { return quantile(d, rng.next_open()); }

std::string describe(const Dist& d) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) os << "uniform(" << v.a << "," << v.b << ")";
        else if constexpr (std::is_same_v<T, ParetoI>) os << "pareto1(" << v.x0 << "," << v.alpha << ")";
        else if constexpr (std::is_same_v<T, GappedUniform>) os << "gapped(" << v.a << ")";
        else if constexpr (std::is_same_v<T, NormalDist>) os << "normal(" << v.mu << "," << v.sigma << ")";
        else if constexpr (std::is_same_v<T, LogisticDist>) os << "logistic(" << v.mu << "," << v.s << ")";
        else if constexpr (std::is_same_v<T, Mixture>)
          os << "mixture(" << v.delta << "," << describe(*v.base) << "," << describe(*v.contam) << ")";
        else os << "step[" << v.size() << "]";
      },
      d.variant());
  return os.str();
}

}  // namespace iq
