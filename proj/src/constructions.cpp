#include "hpfire/constructions.hpp"

#include <cmath>
#include <string>

#include "hpfire/optimizer.hpp"

namespace hpfire {

double improved_head_start(double beta, double delta, double v) {
  if (!(v > 0.0)) throw std::invalid_argument("improved_head_start: speed must be positive");
  return ((4.0 * beta + 2.0 * delta + 1.0) - v * (2.0 * beta + delta + 1.0)) / v;
}

BarrierSystem<double> build_improved(const InterlacingParams& params) {
  const double beta = params.beta;
  const double delta = params.delta;
  if (!std::isfinite(beta) || !std::isfinite(delta)) throw std::invalid_argument("build_improved: non-finite parameter");
  if (!(beta > 2.0)) throw std::invalid_argument("build_improved: beta must exceed 2");
  if (delta < 0.0) throw std::invalid_argument("build_improved: delta must be non-negative");
  if (params.cycles < 1) throw std::invalid_argument("build_improved: need at least one cycle");

  const double s = params.head_start ? *params.head_start
                                     : improved_head_start(beta, delta, interlaced_maxima(beta, delta).first);
  if (!(s > 0.0)) {
    throw std::invalid_argument("build_improved: parameters give non-positive head-start " + std::to_string(s));
  }

  const auto n = static_cast<std::size_t>(params.cycles);
  std::vector<double> b{1.0}, d{2.0};
  for (std::size_t i = 1; i < n; ++i) {
    b.push_back(beta * d[i - 1]);
    d.push_back(beta * b[i]);
  }
  std::vector<double> a{s, delta + 1.0}, c{s, 2.0 * beta + 3.0 * delta - 1.0};
  // zero-based: a[i+2] uses d[i], b[i+1]; c[i+1] uses b[i], d[i]
  for (std::size_t i = 0; i + 2 < n; ++i) a.push_back((delta - 1.0) * d[i] + (beta + delta) * b[i + 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) c.push_back((delta - 1.0) * b[i] + (beta + delta) * d[i]);

  BarrierSystem<double> out;
  out.head_start = s;
  for (std::size_t i = 0; i < n; ++i) {
    out.right.push_back({a[i], b[i]});
    out.left.push_back({c[i], d[i]});
  }
  const ValidationReport report = validate(out);
  if (!report.is_positive) {
    throw std::invalid_argument("build_improved: parameters give a non-positive length at " + *report.first_nonpositive);
  }
  return out;
}

}  // namespace hpfire
