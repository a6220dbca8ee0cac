#include "iq/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "iq/error.hpp"
#include "iq/quadrature.hpp"

namespace iq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

namespace {

void require_integrable(const Dist& d, const char* what) {
  if (!upper_quantile_integrable(d) || !lower_quantile_integrable(d))
    throw divergence_error(std::string(what) + ": quantile function is not integrable");
}

}  // namespace

double l_integral_direct(const Dist& d, const WeightFunction& w) {
  require_integrable(d, "l_integral_direct");
  double acc = 0.0;
  const auto& part = w.partition();
  for (std::size_t k = 0; k + 1 < part.size(); ++k) {
    acc += integrate_unit_subinterval([&](double u) { return quantile(d, u) * w(u); }, part[k],
                                      part[k + 1], 1e-9);
  }
  return acc;
}

namespace {

// Outer x-integral of g over [x_lo, x_hi] where the bound toward `open_end`
// may be infinite; infinite ends are reached through x-breakpoints obtained
// by pushing a dyadic u-sequence through the weight piece.
double outer_integral(const std::function<double(double)>& g, double x_lo, double x_hi,
                      const MonotonePiece& w, bool toward_hi, double a, double b,
                      double tol_abs) {
  if (std::isfinite(x_lo) && std::isfinite(x_hi)) {
    if (!(x_lo < x_hi)) return 0.0;
    return adaptive_simpson(g, x_lo, x_hi, tol_abs);
  }
  // One infinite endpoint: walk dyadically in u toward the singular end of
  // the piece, mapping to geometrically growing |x| breakpoints.
  double acc = 0.0;
  double prev_x = toward_hi ? x_lo : x_hi;  // finite end
  double prev_contrib = kInf;
  int stale = 0;
  for (int j = 1; j <= 60; ++j) {
    const double frac = std::ldexp(1.0, -j);
    const double u = toward_hi ? b - (b - a) * frac : a + (b - a) * frac;
    double x = w.value(u);
    if (toward_hi) {
      x = std::max(x, prev_x);
      if (x > prev_x) {
        const double seg = adaptive_simpson(g, prev_x, x, tol_abs);
        acc += seg;
        if (std::fabs(seg) < 0.25 * tol_abs && std::fabs(prev_contrib) < 0.25 * tol_abs) return acc;
        if (j > 40 && std::fabs(seg) >= std::fabs(prev_contrib)) {
          if (++stale >= 4) throw divergence_error("l_integral_layered: outer integral diverges");
        } else {
          stale = 0;
        }
        prev_contrib = seg;
        prev_x = x;
      }
    } else {
      x = std::min(x, prev_x);
      if (x < prev_x) {
        const double seg = adaptive_simpson(g, x, prev_x, tol_abs);
        acc += seg;
        if (std::fabs(seg) < 0.25 * tol_abs && std::fabs(prev_contrib) < 0.25 * tol_abs) return acc;
        if (j > 40 && std::fabs(seg) >= std::fabs(prev_contrib)) {
          if (++stale >= 4) throw divergence_error("l_integral_layered: outer integral diverges");
        } else {
          stale = 0;
        }
        prev_contrib = seg;
        prev_x = x;
      }
    }
  }
  return acc;
}

}  // namespace

double l_piece_layered(const Dist& d, const MonotonePiece& w, double a, double b,
                       double rel_tol) {
  double acc = 0.0;

  // Scale for absolute tolerances: a cheap probe of the integrand size.
  const double probe = std::fabs(quantile_integral(d, a, b));
  const double tol_abs = std::max(1e-15, rel_tol * (1.0 + probe) * 0.25);

  // Negative range: x in (w(a), 0), weight below zero kills quantiles above
  // w^{-1}(x).
  if (w.range_lo < 0.0) {
    auto g = [&](double x) { return quantile_integral(d, a, std::min(b, w.inv(x))); };
    acc -= outer_integral(g, w.range_lo, 0.0, w, false, a, b, tol_abs);
  }
  // Positive range: x in (0, w(b-)].
  if (w.range_hi > 0.0) {
    auto g = [&](double x) { return quantile_integral(d, std::max(a, w.inv(x)), b); };
    acc += outer_integral(g, 0.0, w.range_hi, w, true, a, b, tol_abs);
  }
  return acc;
}

double l_integral_layered(const Dist& d, const WeightFunction& w) {
  double acc = 0.0;
  const auto& part = w.partition();
  for (std::size_t k = 0; k + 1 < part.size(); ++k) {
    const auto& piece = w.pieces()[k];
    acc += l_piece_layered(d, piece.first, part[k], part[k + 1]);
    acc -= l_piece_layered(d, piece.second, part[k], part[k + 1]);
  }
  return acc;
}

namespace {

// Exact evaluation for a pair of step cdfs: both sides are piecewise sums.
double kw_identity_step(const StepCdf& f, const StepCdf& g, const WeightFunction& w) {
  // Quantile side: on each cell of the union of cumulative masses both
  // quantile functions are constant.
  std::vector<double> cuts;
  cuts.reserve(f.size() + g.size() + w.partition().size());
  for (double c : f.cumulative()) cuts.push_back(c);
  for (double c : g.cumulative()) cuts.push_back(c);
  for (double c : w.partition()) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double u_side = 0.0;
  double prev = 0.0;
  for (double c : cuts) {
    if (c <= 0.0) continue;
    if (c > 1.0) break;
    const double diff = g.quantile(c) - f.quantile(c);
    u_side += diff * (w.primitive(c) - w.primitive(prev));
    prev = c;
  }

  // Cdf side: piecewise constant between union atoms; zero outside the
  // joint support hull.
  std::vector<double> xs;
  xs.reserve(f.size() + g.size());
  for (double x : f.atoms()) xs.push_back(x);
  for (double x : g.atoms()) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  double x_side = 0.0;
  Dist df{f}, dg{g};
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double width = xs[i + 1] - xs[i];
    x_side += (w.primitive(cdf(df, xs[i])) - w.primitive(cdf(dg, xs[i]))) * width;
  }
  return u_side - x_side;
}

}  // namespace

double kw_identity_check(const Dist& f, const Dist& g, const WeightFunction& w) {
  const auto* sf = std::get_if<StepCdf>(&f.variant());
  const auto* sg = std::get_if<StepCdf>(&g.variant());
  if (sf && sg) return kw_identity_step(*sf, *sg, w);
  require_integrable(f, "kw_identity_check");
  require_integrable(g, "kw_identity_check");

  double u_side = 0.0;
  const auto& part = w.partition();
  for (std::size_t k = 0; k + 1 < part.size(); ++k) {
    u_side += integrate_unit_subinterval(
        [&](double u) { return (quantile(g, u) - quantile(f, u)) * w(u); }, part[k], part[k + 1],
        1e-9);
  }

  const double eps = 1e-12;
  double lo = std::min(quantile(f, eps), quantile(g, eps));
  double hi = std::max(quantile(f, 1.0 - eps), quantile(g, 1.0 - eps));
  if (std::isfinite(support_lo(f)) && std::isfinite(support_lo(g)))
    lo = std::min(support_lo(f), support_lo(g));
  if (std::isfinite(support_hi(f)) && std::isfinite(support_hi(g)))
    hi = std::max(support_hi(f), support_hi(g));
  const double x_side = adaptive_simpson(
      [&](double x) { return w.primitive(cdf(f, x)) - w.primitive(cdf(g, x)); }, lo, hi, 1e-10);
  return u_side - x_side;
}

}  // namespace iq
