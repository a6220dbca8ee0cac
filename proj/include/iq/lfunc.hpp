#ifndef IQ_LFUNC_HPP
#define IQ_LFUNC_HPP

#include "iq/distribution.hpp"
#include "iq/weights.hpp"

namespace iq {

// L-integral int_0^1 F^{-1}(u) w(u) du by endpoint-aware adaptive
// quadrature in u (relative tolerance 1e-9, dyadic refinement toward 0 and
// 1, split at the weight's partition breakpoints). Throws divergence_error
// when the refinement fails to converge.
double l_integral_direct(const Dist& d, const WeightFunction& w);

// The same L-integral through the layer-integral representation: for each
// monotone piece, the outer integral over the weight's range is discretized
// adaptively while the inner integral of the quantile function is evaluated
// in closed form. The outer integral is truncated exactly where the
// indicators vanish. Must agree with the direct path.
double l_integral_layered(const Dist& d, const WeightFunction& w);

// Single monotone piece on [a,b): building block of the layered path.
double l_piece_layered(const Dist& d, const MonotonePiece& w, double a, double b,
                       double rel_tol = 1e-9);

// Residual of int_0^1 (G^{-1}-F^{-1}) w du = int_R (K_w(F) - K_w(G)) dx.
// Exact piecewise sums when both arguments are StepCdf; quadrature
// otherwise (the x-side integral is truncated at the 1e-12 extreme
// quantiles for unbounded supports).
double kw_identity_check(const Dist& f, const Dist& g, const WeightFunction& w);

}  // namespace iq

#endif  // IQ_LFUNC_HPP
