#ifndef IQ_ERROR_HPP
#define IQ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace iq {

// Thrown when an integral required by an operation does not exist
// (e.g. the mean of a Pareto distribution with alpha <= 1).
class divergence_error : public std::domain_error {
 public:
  explicit divergence_error(const std::string& what) : std::domain_error(what) {}
};

// Thrown when a quantile at u in {0,1} is requested from a distribution
// whose corresponding support endpoint is infinite.
class unbounded_quantile_error : public std::domain_error {
 public:
  explicit unbounded_quantile_error(const std::string& what) : std::domain_error(what) {}
};

// Thrown by ratio measures (Lorenz, Gini) when the sample mean is
// numerically indistinguishable from zero.
class degenerate_mean_error : public std::domain_error {
 public:
  explicit degenerate_mean_error(const std::string& what) : std::domain_error(what) {}
};

}  // namespace iq

#endif  // IQ_ERROR_HPP
