#ifndef IQ_QUADRATURE_HPP
#define IQ_QUADRATURE_HPP

#include <functional>

namespace iq {

using Integrand = std::function<double(double)>;

// Adaptive Simpson integration of f over the finite interval [a,b].
// The tolerance is absolute.
double adaptive_simpson(const Integrand& f, double a, double b, double abs_tol,
                        int max_depth = 52);

// Integrates f over (0,1) where f may have integrable singularities at the
// endpoints. The interval is split at the dyadic points 2^-j and 1-2^-j and
// refined toward both ends until segment contributions fall below the
// relative tolerance. Throws divergence_error when the refinement fails to
// converge (non-integrable endpoint behaviour).
double integrate_unit_interval(const Integrand& f, double rel_tol);

// Same endpoint-aware scheme restricted to (a,b) within (0,1); refinement is
// applied only at endpoints equal to 0 or 1.
double integrate_unit_subinterval(const Integrand& f, double a, double b, double rel_tol);

}  // namespace iq

#endif  // IQ_QUADRATURE_HPP
