#include "iq/sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iq {

Sample::Sample(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw std::domain_error("Sample: empty");
  for (double v : sorted_)
    if (!std::isfinite(v)) throw std::invalid_argument("Sample: non-finite value");
  std::sort(sorted_.begin(), sorted_.end());
  double s = 0.0;
  for (double v : sorted_) s += v;
  mean_ = s / static_cast<double>(sorted_.size());
}

double Sample::order_stat(std::size_t i) const {
  if (i < 1 || i > sorted_.size()) throw std::out_of_range("Sample::order_stat");
  return sorted_[i - 1];
}

double Sample::ecdf(double x) const {
  auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

long long ceil_snapped(double x) {
  const double r = std::nearbyint(x);
  if (std::fabs(x - r) < 1e-9) return static_cast<long long>(r);
  return static_cast<long long>(std::ceil(x));
}

double Sample::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("Sample::quantile: u outside [0,1]");
  if (u == 0.0) return sorted_.front();
  const long long k = ceil_snapped(static_cast<double>(sorted_.size()) * u);
  return sorted_[static_cast<std::size_t>(std::max(1LL, k)) - 1];
}

StepCdf Sample::to_step_cdf() const {
  const double w = 1.0 / static_cast<double>(sorted_.size());
  std::vector<double> masses(sorted_.size(), w);
  return StepCdf(sorted_, masses);  // construction merges ties
}

}  // namespace iq
