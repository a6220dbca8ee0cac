#include "iq/step_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace iq {

StepCdf::StepCdf(std::vector<double> atoms, std::vector<double> masses) {
  if (atoms.empty() || atoms.size() != masses.size())
    throw std::invalid_argument("StepCdf: atoms/masses must be non-empty and equal-length");
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });

  // Compensated summation: the tolerance check must not be polluted by
  // accumulation error when many small masses are supplied (e.g. 1/n for
  // large empirical cdfs).
  double total = 0.0, comp = 0.0;
  for (std::size_t k : order) {
    const double x = atoms[k];
    const double m = masses[k];
    if (!std::isfinite(x)) throw std::invalid_argument("StepCdf: non-finite atom");
    if (!(m > 0.0)) throw std::invalid_argument("StepCdf: masses must be positive");
    const double t = total + m;
    comp += std::fabs(total) >= std::fabs(m) ? (total - t) + m : (m - t) + total;
    total = t;
    if (!atoms_.empty() && atoms_.back() == x) {
      cum_.back() += m;  // merge ties
    } else {
      atoms_.push_back(x);
      cum_.push_back(m);
    }
  }
  total += comp;
  if (std::fabs(total - 1.0) > 1e-12)
    throw std::invalid_argument("StepCdf: masses must sum to 1 within 1e-12");
  // Renormalize and accumulate; pin the last cumulative value at exactly 1.
  double run = 0.0;
  for (std::size_t i = 0; i < cum_.size(); ++i) {
    run += cum_[i] / total;
    cum_[i] = run;
  }
  cum_.back() = 1.0;
}

double StepCdf::mass(std::size_t i) const {
  return i == 0 ? cum_[0] : cum_[i] - cum_[i - 1];
}

double StepCdf::cdf(double x) const {
  auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
  if (it == atoms_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double StepCdf::cdf_left(double x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x);
  if (it == atoms_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double StepCdf::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("StepCdf::quantile: u outside [0,1]");
  if (u == 0.0) return atoms_.front();
  auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
  return atoms_[static_cast<std::size_t>(it - cum_.begin())];
}

double StepCdf::mean() const {
  double s = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) s += mass(i) * atoms_[i];
  return s;
}

double StepCdf::second_moment() const {
  double s = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) s += mass(i) * atoms_[i] * atoms_[i];
  return s;
}

double StepCdf::cdf_integral(double a, double b) const {
  if (!(a <= b)) throw std::invalid_argument("StepCdf::cdf_integral: a > b");
  // F is cum_[i] on [x_i, x_{i+1}) and 1 on [x_k, inf); 0 below x_1.
  double s = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const double lo = std::max(a, atoms_[i]);
    const double hi = (i + 1 < atoms_.size()) ? std::min(b, atoms_[i + 1]) : b;
    if (hi > lo) s += cum_[i] * (hi - lo);
  }
  return s;
}

double StepCdf::lower_tail_integral(double t) const {
  return t <= atoms_.front() ? 0.0 : cdf_integral(atoms_.front(), t);
}

double StepCdf::upper_tail_integral(double t) const {
  if (t >= atoms_.back()) return 0.0;
  const double lo = std::max(t, atoms_.front());
  double s = (atoms_.back() - lo) - cdf_integral(lo, atoms_.back());
  if (t < atoms_.front()) s += atoms_.front() - t;  // 1-F = 1 below the support
  return s;
}

double StepCdf::quantile_integral(double u1, double u2) const {
  if (!(u1 >= 0.0 && u2 <= 1.0 && u1 <= u2))
    throw std::domain_error("StepCdf::quantile_integral: need 0 <= u1 <= u2 <= 1");
  // The quantile equals atom_i on the u-interval (cum_{i-1}, cum_i].
  double s = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const double lo = std::max(u1, prev);
    const double hi = std::min(u2, cum_[i]);
    if (hi > lo) s += atoms_[i] * (hi - lo);
    prev = cum_[i];
  }
  return s;
}

}  // namespace iq
