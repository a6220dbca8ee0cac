#include "iq/quadrature.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "iq/error.hpp"

namespace iq {

namespace {

double simpson_rec(const Integrand& f, double a, double m, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const Integrand& f, double a, double b, double abs_tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double integrate_unit_subinterval(const Integrand& f, double a, double b,
                                  double rel_tol) {
  if (!(a <= b)) throw std::invalid_argument("integrate_unit_subinterval: a > b");
  if (a == b) return 0.0;
  // tanh-sinh handles the integrable endpoint singularities of quantile
  // functions; the wrapper shields the integrand from abscissas that round
  // onto the endpoints. The sliver lost to the shield is of width one ulp,
  // so its mass is negligible for any singularity exponent below ~0.9;
  // integrability itself must be established by the caller (it cannot be
  // decided reliably from double-precision samples near the endpoint).
  const double a_in = std::nextafter(a, b);
  const double b_in = std::nextafter(b, a);
  auto guarded = [&](double u) {
    if (u <= a_in || u >= b_in) return 0.0;
    return f(u);
  };
  boost::math::quadrature::tanh_sinh<double> integrator(15);
  double error = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  double result;
  try {
    result = integrator.integrate(guarded, a, b, rel_tol, &error, &l1, &levels);
  } catch (const std::exception&) {
    throw divergence_error("quadrature: integrand not integrable on the interval");
  }
  if (!std::isfinite(result))
    throw divergence_error("quadrature: endpoint refinement does not converge");
  return result;
}

double integrate_unit_interval(const Integrand& f, double rel_tol) {
  return integrate_unit_subinterval(f, 0.0, 1.0, rel_tol);
}

}  // namespace iq
