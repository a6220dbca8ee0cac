#ifndef IQ_STEP_CDF_HPP
#define IQ_STEP_CDF_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace iq {

// Finite-support cdf: atoms x_1 < ... < x_k carrying positive masses that
// sum to one. This is the exact-arithmetic substrate for the identity
// tests: cdf values, quantiles and all integrals below are piecewise sums
// with no quadrature involved.
//
// Immutable after construction; all member functions are const and
// re-entrant.
class StepCdf {
 public:
  // Ties among atoms are merged by summing their masses; masses must be
  // positive and sum to 1 within 1e-12 (they are renormalized exactly to 1).
  StepCdf(std::vector<double> atoms, std::vector<double> masses);

  std::size_t size() const { return atoms_.size(); }
  std::span<const double> atoms() const { return atoms_; }
  std::span<const double> cumulative() const { return cum_; }
  double mass(std::size_t i) const;

  double min() const { return atoms_.front(); }
  double max() const { return atoms_.back(); }

  // Right-continuous cdf value at x.
  double cdf(double x) const;
  // Left limit of the cdf at x.
  double cdf_left(double x) const;

  // Left-continuous generalized inverse for u in (0,1]; the right-hand limit
  // (the smallest atom) at u = 0. Throws std::domain_error outside [0,1].
  double quantile(double u) const;

  double mean() const;
  double second_moment() const;

  // Exact integral of the cdf over [a,b], a <= b finite.
  double cdf_integral(double a, double b) const;
  // Exact value of the integral of F over (-inf, t].
  double lower_tail_integral(double t) const;
  // Exact value of the integral of 1-F over [t, inf).
  double upper_tail_integral(double t) const;

  // Exact integral of the quantile function over [u1,u2] in [0,1].
  double quantile_integral(double u1, double u2) const;

 private:
  std::vector<double> atoms_;
  std::vector<double> cum_;  // strictly increasing, ends at exactly 1
};

}  // namespace iq

#endif  // IQ_STEP_CDF_HPP
