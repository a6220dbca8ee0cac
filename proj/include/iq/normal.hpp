#ifndef IQ_NORMAL_HPP
#define IQ_NORMAL_HPP

namespace iq {

// Standard normal pdf.
double normal_pdf(double x);

// Standard normal cdf, computed through erfc; accurate to machine precision
// over the whole real line.
double normal_cdf(double x);

// Standard normal quantile: Wichura's algorithm AS 241 (PPND16), a rational
// approximation with documented coefficients, accurate to about 1e-16
// relative. Throws std::domain_error outside [0,1] and
// unbounded_quantile_error at 0 and 1.
double normal_quantile(double u);

}  // namespace iq

#endif  // IQ_NORMAL_HPP
