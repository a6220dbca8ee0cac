#ifndef IQ_WEIGHTS_HPP
#define IQ_WEIGHTS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace iq {

// A non-decreasing, right-continuous function on the interval [lo, hi) of
// the unit interval, with a left-continuous inverse. When no closed-form
// inverse is supplied, a monotone bisection to ~1e-16 computes the infimum
// of the preimage, which is exactly the left-continuous inverse.
struct MonotonePiece {
  double lo = 0.0;
  double hi = 1.0;
  std::function<double(double)> value;
  std::function<double(double)> inverse;  // optional: R -> [lo,hi]
  double range_lo = 0.0;                  // value at lo (right-continuous), may be -inf
  double range_hi = 0.0;                  // limit at hi^-, may be +inf

  double operator()(double u) const { return value(u); }
  // inf{u in [lo,hi] : value(u) >= x}; returns hi when the piece never
  // reaches x.
  double inv(double x) const;
  // Limit of the value from the left at u.
  double left_limit(double u) const;
};

MonotonePiece make_constant_piece(double lo, double hi, double c);
// c0 + c1*u with slope c1 >= 0.
MonotonePiece make_linear_piece(double lo, double hi, double c0, double c1);
// Generic non-decreasing evaluator; range endpoints may be given explicitly
// for pieces unbounded at an endpoint (e.g. a quantile-shaped weight).
MonotonePiece make_fn_piece(double lo, double hi, std::function<double(double)> fn,
                            std::function<double(double)> inv = {});
MonotonePiece make_fn_piece(double lo, double hi, std::function<double(double)> fn,
                            std::function<double(double)> inv, double range_lo, double range_hi);

// Weight function satisfying the piecewise monotone-difference condition:
// a partition 0 = a_0 < ... < a_K = 1 and, on each cell [a_{k-1}, a_k),
// a pair of non-decreasing right-continuous pieces whose difference is w.
// The pair pieces near 0 and 1 must be dominated by c|w| on neighbourhoods
// of the endpoints; builtin weights carry a verified constant.
class WeightFunction {
 public:
  using Piece = std::pair<MonotonePiece, MonotonePiece>;

  WeightFunction(std::vector<double> partition, std::vector<Piece> pieces,
                 double domination_c = 1.0, std::function<double(double)> primitive = {},
                 std::string name = "weight");

  double operator()(double u) const;

  // K_w(t) = int_0^t w(u) du; closed form for builtins, endpoint-aware
  // quadrature otherwise.
  double primitive(double t) const;

  std::size_t segments() const { return pieces_.size(); }  // K
  const std::vector<double>& partition() const { return partition_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  double domination_constant() const { return domination_c_; }
  const std::string& name() const { return name_; }

 private:
  std::vector<double> partition_;
  std::vector<Piece> pieces_;
  double domination_c_;
  std::function<double(double)> primitive_;
  std::string name_;
};

// Builtin weights. tail_gini and gini_shortfall vanish identically below
// their level p; gini_shortfall with lambda=0 is the TVaR-up weight
// 1{p<=u<1}/(1-p).
WeightFunction constant_weight(double c = 1.0);
WeightFunction gmd_weight();                 // 4u - 2
WeightFunction logistic_location_weight();   // 6u(1-u), split at 1/2
WeightFunction normal_scale_weight();        // standard normal quantile
WeightFunction tail_gini_weight(double p);
WeightFunction gini_shortfall_weight(double p, double lambda);

// Grid check of the domination bounds near 0 and 1 for the given constant.
bool check_domination_bounds(const WeightFunction& w, double c, int grid = 256);

// Reduction of a K>=3 representation to K=2: interior pieces are glued into
// the first cell after shifting each by a constant chosen minimally so that
// monotonicity survives across every interior breakpoint; the last cell is
// kept as the second piece. K<=2 inputs are returned unchanged. The reduced
// weight is pointwise equal to the input.
WeightFunction reduce_partition(const WeightFunction& w);

}  // namespace iq

#endif  // IQ_WEIGHTS_HPP
