#include "iq/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "iq/normal.hpp"
#include "iq/quadrature.hpp"

namespace iq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double MonotonePiece::inv(double x) const {
  if (inverse) return std::min(hi, std::max(lo, inverse(x)));
  if (!(range_lo < x)) return lo;  // value(lo) >= x already
  const double hi_in = std::nextafter(hi, lo);
  if (value(hi_in) < x) return hi;
  double l = lo, r = hi_in;
  for (int i = 0; i < 200 && r - l > 0.0; ++i) {
    const double m = 0.5 * (l + r);
    if (m <= l || m >= r) break;
    if (value(m) >= x) r = m; else l = m;
  }
  return r;
}

double MonotonePiece::left_limit(double u) const {
  if (u <= lo) return range_lo;
  return value(std::nextafter(u, lo));
}

MonotonePiece make_constant_piece(double lo, double hi, double c) {
  MonotonePiece p;
  p.lo = lo;
  p.hi = hi;
  p.value = [c](double) { return c; };
  p.inverse = [lo, hi, c](double x) { return x <= c ? lo : hi; };
  p.range_lo = c;
  p.range_hi = c;
  return p;
}

MonotonePiece make_linear_piece(double lo, double hi, double c0, double c1) {
  if (c1 < 0.0) throw std::invalid_argument("make_linear_piece: slope must be >= 0");
  if (c1 == 0.0) return make_constant_piece(lo, hi, c0);
  MonotonePiece p;
  p.lo = lo;
  p.hi = hi;
  p.value = [c0, c1](double u) { return c0 + c1 * u; };
  p.inverse = [c0, c1](double x) { return (x - c0) / c1; };
  p.range_lo = c0 + c1 * lo;
  p.range_hi = c0 + c1 * hi;
  return p;
}

MonotonePiece make_fn_piece(double lo, double hi, std::function<double(double)> fn,
                            std::function<double(double)> inv) {
  const double rlo = fn(lo);
  const double rhi = fn(std::nextafter(hi, lo));
  return make_fn_piece(lo, hi, std::move(fn), std::move(inv), rlo, rhi);
}

MonotonePiece make_fn_piece(double lo, double hi, std::function<double(double)> fn,
                            std::function<double(double)> inv, double range_lo,
                            double range_hi) {
  MonotonePiece p;
  p.lo = lo;
  p.hi = hi;
  p.value = std::move(fn);
  p.inverse = std::move(inv);
  p.range_lo = range_lo;
  p.range_hi = range_hi;
  return p;
}

WeightFunction::WeightFunction(std::vector<double> partition, std::vector<Piece> pieces,
                               double domination_c, std::function<double(double)> primitive,
                               std::string name)
    : partition_(std::move(partition)),
      pieces_(std::move(pieces)),
      domination_c_(domination_c),
      primitive_(std::move(primitive)),
      name_(std::move(name)) {
  if (partition_.size() < 2 || partition_.front() != 0.0 || partition_.back() != 1.0)
    throw std::invalid_argument("WeightFunction: partition must run from 0 to 1");
  for (std::size_t i = 0; i + 1 < partition_.size(); ++i)
    if (!(partition_[i] < partition_[i + 1]))
      throw std::invalid_argument("WeightFunction: partition must be strictly increasing");
  if (pieces_.size() + 1 != partition_.size())
    throw std::invalid_argument("WeightFunction: need one piece pair per partition cell");
}

double WeightFunction::operator()(double u) const {
  if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("WeightFunction: u outside [0,1)");
  auto it = std::upper_bound(partition_.begin(), partition_.end(), u);
  std::size_t k = static_cast<std::size_t>(it - partition_.begin());
  if (k == 0) k = 1;
  const auto& pc = pieces_[k - 1];
  return pc.first(u) - pc.second(u);
}

double WeightFunction::primitive(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("WeightFunction::primitive: t outside [0,1]");
  if (primitive_) return primitive_(t);
  if (t == 0.0) return 0.0;
  // Integrate cell by cell: the weight may jump at partition points.
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < partition_.size() && partition_[k] < t; ++k) {
    const double hi = std::min(t, partition_[k + 1]);
    acc += integrate_unit_subinterval([this](double u) { return (*this)(u); }, partition_[k], hi,
                                      1e-11);
  }
  return acc;
}

// --- builtins -----------------------------------------------------------------

WeightFunction constant_weight(double c) {
  std::vector<WeightFunction::Piece> pieces;
  pieces.emplace_back(make_constant_piece(0.0, 1.0, c), make_constant_piece(0.0, 1.0, 0.0));
  return WeightFunction({0.0, 1.0}, std::move(pieces), 1.0,
                        [c](double t) { return c * t; }, "constant");
}

WeightFunction gmd_weight() {
  std::vector<WeightFunction::Piece> pieces;
  pieces.emplace_back(make_linear_piece(0.0, 1.0, -2.0, 4.0), make_constant_piece(0.0, 1.0, 0.0));
  return WeightFunction({0.0, 1.0}, std::move(pieces), 1.0,
                        [](double t) { return 2.0 * t * t - 2.0 * t; }, "gmd");
}

WeightFunction logistic_location_weight() {
  // 6u(1-u): increasing on [0,1/2), decreasing afterwards; represented as
  // w - 0 on the first cell and 0 - (-w) on the second.
  auto w = [](double u) { return 6.0 * u * (1.0 - u); };
  std::vector<WeightFunction::Piece> pieces;
  pieces.emplace_back(make_fn_piece(0.0, 0.5, w), make_constant_piece(0.0, 0.5, 0.0));
  pieces.emplace_back(make_constant_piece(0.5, 1.0, 0.0),
                      make_fn_piece(0.5, 1.0, [w](double u) { return -w(u); }));
  return WeightFunction({0.0, 0.5, 1.0}, std::move(pieces), 1.0,
                        [](double t) { return 3.0 * t * t - 2.0 * t * t * t; }, "logistic");
}

WeightFunction normal_scale_weight() {
  std::vector<WeightFunction::Piece> pieces;
  pieces.emplace_back(
      make_fn_piece(0.0, 1.0, [](double u) { return u == 0.0 ? -kInf : normal_quantile(u); },
                    [](double x) { return normal_cdf(x); }, -kInf, kInf),
      make_constant_piece(0.0, 1.0, 0.0));
  return WeightFunction({0.0, 1.0}, std::move(pieces), 1.0,
                        [](double t) {
                          if (t == 0.0 || t == 1.0) return 0.0;
                          return -normal_pdf(normal_quantile(t));
                        },
                        "normal-scale");
}

WeightFunction tail_gini_weight(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("tail_gini_weight: p in [0,1)");
  const double d = (1.0 - p) * (1.0 - p);
  if (p == 0.0) {
    std::vector<WeightFunction::Piece> pieces;
    pieces.emplace_back(make_linear_piece(0.0, 1.0, -2.0 / d, 4.0 / d),
                        make_constant_piece(0.0, 1.0, 0.0));
    return WeightFunction({0.0, 1.0}, std::move(pieces), 1.0,
                          [d](double t) { return (2.0 * t * t - 2.0 * t) / d; }, "tail-gini");
  }
  std::vector<WeightFunction::Piece> pieces;
  pieces.emplace_back(make_constant_piece(0.0, p, 0.0), make_constant_piece(0.0, p, 0.0));
  pieces.emplace_back(make_linear_piece(p, 1.0, -2.0 * (1.0 + p) / d, 4.0 / d),
                      make_constant_piece(p, 1.0, 0.0));
  auto primitive = [p, d](double t) {
    if (t <= p) return 0.0;
    return (2.0 * t * t - 2.0 * (1.0 + p) * t + 2.0 * p) / d;
  };
  return WeightFunction({0.0, p, 1.0}, std::move(pieces), 1.0, primitive, "tail-gini");
}

WeightFunction gini_shortfall_weight(double p, double lambda) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("gini_shortfall_weight: p in [0,1)");
  if (!(lambda >= 0.0)) throw std::invalid_argument("gini_shortfall_weight: lambda >= 0");
  const double d = (1.0 - p) * (1.0 - p);
  // ((1-p) + 4 lambda (u - (1+p)/2)) / (1-p)^2 on [p,1)
  const double c1 = 4.0 * lambda / d;
  const double c0 = ((1.0 - p) - 2.0 * lambda * (1.0 + p)) / d;
  auto primitive = [p, d, lambda](double t) {
    if (t <= p) return 0.0;
    return ((1.0 - p) * (t - p) + 2.0 * lambda * (t * t - (1.0 + p) * t + p)) / d;
  };
  if (p == 0.0) {
    std::vector<WeightFunction::Piece> pieces;
    pieces.emplace_back(make_linear_piece(0.0, 1.0, c0, c1), make_constant_piece(0.0, 1.0, 0.0));
    return WeightFunction({0.0, 1.0}, std::move(pieces), 1.0, primitive, "gini-shortfall");
  }
  std::vector<WeightFunction::Piece> pieces;
  pieces.emplace_back(make_constant_piece(0.0, p, 0.0), make_constant_piece(0.0, p, 0.0));
  pieces.emplace_back(make_linear_piece(p, 1.0, c0, c1), make_constant_piece(p, 1.0, 0.0));
  return WeightFunction({0.0, p, 1.0}, std::move(pieces), 1.0, primitive, "gini-shortfall");
}

// --- condition checks -----------------------------------------------------------

bool check_domination_bounds(const WeightFunction& w, double c, int grid) {
  const double edge = 1e-3;
  const auto& first = w.pieces().front();
  const auto& last = w.pieces().back();
  for (int i = 1; i <= grid; ++i) {
    const double u0 = edge * static_cast<double>(i) / grid;
    if (u0 < w.partition()[1]) {
      const double bound = c * std::fabs(w(u0)) + 1e-12;
      if (std::fabs(first.first(u0)) > bound || std::fabs(first.second(u0)) > bound) return false;
    }
    const double u1 = 1.0 - edge * static_cast<double>(i) / grid;
    if (u1 >= w.partition()[w.partition().size() - 2]) {
      const double bound = c * std::fabs(w(u1)) + 1e-12;
      if (std::fabs(last.first(u1)) > bound || std::fabs(last.second(u1)) > bound) return false;
    }
  }
  return true;
}

// --- partition reduction ----------------------------------------------------------

namespace {

// Piecewise composite of shifted monotone pieces over consecutive cells.
MonotonePiece glue_pieces(std::vector<MonotonePiece> parts, std::vector<double> breaks,
                          std::vector<double> shifts) {
  MonotonePiece out;
  out.lo = breaks.front();
  out.hi = breaks.back();
  out.range_lo = parts.front().range_lo + shifts.front();
  out.range_hi = parts.back().range_hi + shifts.back();
  out.value = [parts = std::move(parts), breaks = std::move(breaks),
               shifts = std::move(shifts)](double u) {
    std::size_t k = 0;
    while (k + 1 < parts.size() && u >= breaks[k + 1]) ++k;
    return parts[k].value(u) + shifts[k];
  };
  return out;  // generic bisection inverse
}

}  // namespace

WeightFunction reduce_partition(const WeightFunction& w) {
  const std::size_t K = w.segments();
  if (K <= 2) return w;
  const auto& part = w.partition();
  const auto& pieces = w.pieces();

  // Shift each interior cell k (2..K-1, 1-based) by c_k chosen as the
  // smallest value keeping both glued sequences non-decreasing across the
  // breakpoint a_{k-1}; at least one of the two constraints binds.
  std::vector<double> shifts(K - 1, 0.0);  // cumulative shift per glued cell
  double cum = 0.0;
  for (std::size_t k = 1; k + 1 < K; ++k) {
    const double brk = part[k];
    const double prev1 = pieces[k - 1].first.left_limit(brk) + cum;
    const double prev2 = pieces[k - 1].second.left_limit(brk) + cum;
    const double c_k = std::max(prev1 - pieces[k].first(brk), prev2 - pieces[k].second(brk));
    cum = c_k;  // c_k already absorbs the previous cumulative shift
    shifts[k] = cum;
  }

  std::vector<double> breaks(part.begin(), part.begin() + static_cast<long>(K));
  std::vector<MonotonePiece> incr, decr;
  for (std::size_t k = 0; k + 1 < K; ++k) {
    incr.push_back(pieces[k].first);
    decr.push_back(pieces[k].second);
  }
  std::vector<WeightFunction::Piece> out;
  MonotonePiece glued_incr = glue_pieces(std::move(incr), breaks, shifts);
  MonotonePiece glued_decr = glue_pieces(std::move(decr), std::move(breaks), std::move(shifts));
  out.emplace_back(std::move(glued_incr), std::move(glued_decr));
  out.emplace_back(pieces.back());
  std::vector<double> new_part = {0.0, part[K - 1], 1.0};
  return WeightFunction(std::move(new_part), std::move(out), w.domination_constant(), {},
                        w.name() + "-reduced");
}

}  // namespace iq
