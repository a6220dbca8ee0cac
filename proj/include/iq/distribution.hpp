#ifndef IQ_DISTRIBUTION_HPP
#define IQ_DISTRIBUTION_HPP

#include <memory>
#include <span>
#include <string>
#include <variant>

#include "iq/rng.hpp"
#include "iq/step_cdf.hpp"

namespace iq {

// Parametric families. Parameters are validated at construction; evaluation
// never re-checks them. All types here are immutable value types and safe to
// share across threads.

struct Uniform {
  double a, b;
  Uniform(double a_, double b_);
};

// Pareto Type I with scale x0 > 0 and shape alpha > 0; support [x0, inf).
struct ParetoI {
  double x0, alpha;
  ParetoI(double x0_, double alpha_);
};

// The "gapped" uniform on [0,2]: a uniform-on-[0,2] variable pushed away
// from the centre so that no mass lies in (1-a, 1+a]. At a=0 it is the plain
// uniform on [0,2]; at a=1 it degenerates to the two-point law on {0,2}.
// Its quantile function jumps at p=1/2 whenever a>0.
struct GappedUniform {
  double a;
  explicit GappedUniform(double a_);
};

struct NormalDist {
  double mu, sigma;
  NormalDist(double mu_, double sigma_);
};

struct LogisticDist {
  double mu, s;
  LogisticDist(double mu_, double s_);
};

class Dist;

// Two-component contamination mixture (1-delta) base + delta contam.
struct Mixture {
  double delta;
  std::shared_ptr<const Dist> base;
  std::shared_ptr<const Dist> contam;
  Mixture(double delta_, Dist base_, Dist contam_);
};

// Value-semantic handle over any supported distribution. Cheap to copy.
class Dist {
 public:
  using Variant =
      std::variant<Uniform, ParetoI, GappedUniform, NormalDist, LogisticDist, Mixture, StepCdf>;

  template <typename T>
    requires std::is_constructible_v<Variant, T&&>
  Dist(T&& alt) : v_(std::make_shared<const Variant>(std::forward<T>(alt))) {}

  const Variant& variant() const { return *v_; }

 private:
  std::shared_ptr<const Variant> v_;
};

// --- cdf / quantile ---------------------------------------------------------

// Right-continuous cdf value in [0,1].
double cdf(const Dist& d, double x);

// Left-continuous generalized inverse for u in (0,1]; at u=0 the right-hand
// limit, i.e. the lower support endpoint. Throws std::domain_error outside
// [0,1] and unbounded_quantile_error when the requested endpoint quantile is
// infinite.
double quantile(const Dist& d, double u);

double support_lo(const Dist& d);  // may be -inf
double support_hi(const Dist& d);  // may be +inf

// --- exact moment and integral algebra --------------------------------------

double mean(const Dist& d);           // divergence_error if E|X| = inf
double second_moment(const Dist& d);  // divergence_error if E X^2 = inf
double variance(const Dist& d);

// Integral of F over [a, b], exact per family.
double cdf_integral(const Dist& d, double a, double b);
// Integral of F over (-inf, t]; finite whenever E(X^-) < inf.
double lower_tail_integral(const Dist& d, double t);
// Integral of 1-F over [t, inf); finite whenever E(X^+) < inf.
double upper_tail_integral(const Dist& d, double t);

// Exact integral of the quantile function over [u1,u2] within [0,1].
// For parametric families this runs through the tail-integral identities;
// for StepCdf it is a direct piecewise sum.
double quantile_integral(const Dist& d, double u1, double u2);

// E |X - E X|^p for real p >= 1. Closed form for normal and uniform,
// endpoint-aware quadrature otherwise; divergence_error when the moment does
// not exist (Pareto with alpha <= p).
double abs_central_moment(const Dist& d, double p);

// Whether E(X^+) (resp. E(X^-)) is finite, i.e. the quantile function is
// integrable near u = 1 (resp. u = 0). Decided analytically per family.
bool upper_quantile_integrable(const Dist& d);
bool lower_quantile_integrable(const Dist& d);

// Interior probability levels where the quantile function jumps (flat cdf
// regions): the gap level 1/2 for the gapped uniform, the cumulative masses
// of a StepCdf, the union for mixtures. Used to split quadrature in u.
std::vector<double> quantile_jump_levels(const Dist& d);

// --- diagnostics -------------------------------------------------------------

// Kolmogorov sup-distance between two cdfs. Exact when at least one argument
// is a StepCdf and the other has a continuous cdf (or both are StepCdf);
// otherwise a documented grid-search approximation.
double sup_distance(const Dist& f, const Dist& g);

// Continuity of the quantile function at p, probed through the cdf bounds
// F(F^{-1}(p)-eps) < p < F(F^{-1}(p)+eps) on a finite grid of eps values.
// A diagnostic, not a proof.
bool quantile_continuity_check(const Dist& d, double p, std::span<const double> eps_grid);
bool quantile_continuity_check(const Dist& d, double p);

bool is_continuous_cdf(const Dist& d);

// Inverse-cdf sampling; consumes exactly one variate from the stream.
double draw(const Dist& d, CounterRng& rng);

std::string describe(const Dist& d);

}  // namespace iq

#endif  // IQ_DISTRIBUTION_HPP
