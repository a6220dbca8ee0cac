#ifndef IQ_SAMPLE_HPP
#define IQ_SAMPLE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "iq/step_cdf.hpp"

namespace iq {

// Ordered observation sequence with a cached sorted view. Immutable after
// construction.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::size_t size() const { return sorted_.size(); }
  std::span<const double> sorted() const { return sorted_; }

  // 1-based order statistic X_{i:n}.
  double order_stat(std::size_t i) const;

  double min() const { return sorted_.front(); }
  double max() const { return sorted_.back(); }
  double mean() const { return mean_; }

  // Empirical cdf (fraction of observations <= x).
  double ecdf(double x) const;

  // Empirical quantile X_{ceil(n u):n} for u in (0,1]; the sample minimum at
  // u = 0.
  double quantile(double u) const;

  // The empirical cdf as a StepCdf (ties merged, masses multiples of 1/n).
  StepCdf to_step_cdf() const;

 private:
  std::vector<double> sorted_;
  double mean_;
};

// ceil(x) with a snap window around integers so that values carrying
// floating-point noise of order n*eps resolve to the exact integer.
long long ceil_snapped(double x);

}  // namespace iq

#endif  // IQ_SAMPLE_HPP
