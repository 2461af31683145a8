#pragma once

// Piecewise-linear functions: knot lists for arrival profiles and the
// consumption curve B(t) with its integer slopes.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hpfire/scalar.hpp"

namespace hpfire {

template <typename Scalar>
struct Knot {
  Scalar u;
  Scalar value;

  friend bool operator==(const Knot&, const Knot&) = default;
};

template <typename Scalar>
using KnotList = std::vector<Knot<Scalar>>;

/// Linear interpolation on a knot list with strictly increasing `u`.
template <typename Scalar>
Scalar interpolate(const KnotList<Scalar>& knots, const Scalar& u) {
  if (knots.empty()) throw std::invalid_argument("interpolate: empty knot list");
  if (u < knots.front().u || knots.back().u < u) throw std::out_of_range("interpolate: outside domain");
  auto it = std::lower_bound(knots.begin(), knots.end(), u,
                             [](const Knot<Scalar>& k, const Scalar& x) { return k.u < x; });
  if (it == knots.begin()) return it->value;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (hi.u == u) return hi.value;
  return lo.value + (hi.value - lo.value) * (u - lo.u) / (hi.u - lo.u);
}

/// Drop interior knots lying on the line through their neighbours.
template <typename Scalar>
KnotList<Scalar> simplify(const KnotList<Scalar>& knots) {
  if (knots.size() <= 2) return knots;
  KnotList<Scalar> out{knots.front()};
  for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
    const auto& a = out.back();
    const auto& b = knots[i];
    const auto& c = knots[i + 1];
    // slopes (b - a) and (c - b) compared by cross-multiplication
    const Scalar lhs = (b.value - a.value) * (c.u - b.u);
    const Scalar rhs = (c.value - b.value) * (b.u - a.u);
    if (!approx_equal(lhs, rhs)) out.push_back(b);
  }
  out.push_back(knots.back());
  return out;
}

/// Pointwise minimum of two piecewise-linear functions on the same domain,
/// with crossing points inserted as knots.
template <typename Scalar>
KnotList<Scalar> lower_envelope(const KnotList<Scalar>& f, const KnotList<Scalar>& g) {
  if (f.empty() || g.empty()) throw std::invalid_argument("lower_envelope: empty function");
  if (f.front().u != g.front().u || f.back().u != g.back().u) {
    throw std::invalid_argument("lower_envelope: domains differ");
  }
  std::vector<Scalar> us;
  us.reserve(f.size() + g.size());
  for (const auto& k : f) us.push_back(k.u);
  for (const auto& k : g) us.push_back(k.u);
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());

  KnotList<Scalar> out;
  Scalar prev_u{};
  Scalar prev_diff{};
  for (std::size_t i = 0; i < us.size(); ++i) {
    const Scalar fu = interpolate(f, us[i]);
    const Scalar gu = interpolate(g, us[i]);
    const Scalar diff = fu - gu;
    if (i > 0) {
      const bool crosses = (prev_diff < Scalar(0) && diff > Scalar(0)) || (prev_diff > Scalar(0) && diff < Scalar(0));
      if (crosses) {
        const Scalar w = prev_diff / (prev_diff - diff);
        const Scalar uc = prev_u + w * (us[i] - prev_u);
        out.push_back({uc, interpolate(f, uc)});
      }
    }
    out.push_back({us[i], min_value(fu, gu)});
    prev_u = us[i];
    prev_diff = diff;
  }
  return simplify(out);
}

template <typename Scalar>
struct CurvePoint {
  Scalar t;
  Scalar value;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Continuous nondecreasing piecewise-linear curve with integer slopes,
/// defined on [points.front().t, points.back().t]. slopes[j] is the slope on
/// [points[j].t, points[j+1].t].
template <typename Scalar>
class PiecewiseLinearCurve {
 public:
  PiecewiseLinearCurve() = default;
  PiecewiseLinearCurve(std::vector<CurvePoint<Scalar>> points, std::vector<int> slopes)
      : points_(std::move(points)), slopes_(std::move(slopes)) {
    if (points_.empty()) throw std::invalid_argument("curve needs at least one breakpoint");
    if (slopes_.size() + 1 != points_.size()) throw std::invalid_argument("curve: slopes/breakpoints mismatch");
  }

  const std::vector<CurvePoint<Scalar>>& points() const { return points_; }
  const std::vector<int>& slopes() const { return slopes_; }
  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }
  const Scalar& start_time() const { return points_.front().t; }
  const Scalar& end_time() const { return points_.back().t; }

  Scalar operator()(const Scalar& t) const {
    if (points_.empty()) throw std::logic_error("evaluating an empty curve");
    if (t < start_time() || end_time() < t) throw std::out_of_range("curve evaluated outside its time range");
    const std::size_t j = segment_index(t);
    return points_[j].value + Scalar(slopes_.empty() ? 0 : slopes_[std::min(j, slopes_.size() - 1)]) *
                                  (t - points_[j].t);
  }

  /// Slope just after t (the last slope at the end of the range).
  int slope_after(const Scalar& t) const {
    if (slopes_.empty()) return 0;
    return slopes_[std::min(segment_index(t), slopes_.size() - 1)];
  }

  /// Strictly increasing times, continuous values, slopes consistent with Δvalue/Δt.
  bool is_well_formed() const {
    for (std::size_t j = 0; j + 1 < points_.size(); ++j) {
      const auto& a = points_[j];
      const auto& b = points_[j + 1];
      if (!(a.t < b.t)) return false;
      if (slopes_[j] < 0) return false;
      if (!approx_equal(Scalar(b.value - a.value), Scalar(Scalar(slopes_[j]) * (b.t - a.t)))) return false;
    }
    return true;
  }

 private:
  // Index j with points[j].t <= t < points[j+1].t (clamped to the last point).
  std::size_t segment_index(const Scalar& t) const {
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](const Scalar& x, const CurvePoint<Scalar>& p) { return x < p.t; });
    if (it == points_.begin()) return 0;
    return static_cast<std::size_t>(it - points_.begin()) - 1;
  }

  std::vector<CurvePoint<Scalar>> points_;
  std::vector<int> slopes_;
};

template <typename Scalar>
PiecewiseLinearCurve<double> to_float(const PiecewiseLinearCurve<Scalar>& curve) {
  std::vector<CurvePoint<double>> pts;
  pts.reserve(curve.size());
  for (const auto& p : curve.points()) pts.push_back({to_double(p.t), to_double(p.value)});
  return {std::move(pts), curve.slopes()};
}

}  // namespace hpfire
