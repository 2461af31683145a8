#pragma once

// Event-driven consumption curves B(t), k-intervals, consumption-ratio maxima
// and speed feasibility.
//
// Every barrier point is consumed at the earlier of its face arrival times.
// Split into pieces of slope ±1, a piece of length L with earliest arrival
// t0 adds a ramp to B that rises at rate 1 on [t0, t0 + L]. B is the sum of
// ramps, so its slope at t is the number of active pieces: the current
// consumption k. The head-start (|x| < s on the ground) never counts.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hpfire/barrier_system.hpp"
#include "hpfire/geodesic.hpp"
#include "hpfire/piecewise_linear.hpp"

namespace hpfire {

enum class Scope { Right, Left, Combined };

inline std::string_view to_string(Scope scope) {
  switch (scope) {
    case Scope::Right: return "right";
    case Scope::Left: return "left";
    case Scope::Combined: return "combined";
  }
  return "?";
}

inline Scope scope_of(Side side) { return side == Side::Right ? Scope::Right : Scope::Left; }

template <typename Scalar>
struct KInterval {
  Scope scope = Scope::Combined;
  Scalar t_start;
  Scalar t_end;
  int k = 0;

  Scalar length() const { return t_end - t_start; }
};

template <typename Scalar>
struct ConsumptionCurves {
  PiecewiseLinearCurve<Scalar> total;
  PiecewiseLinearCurve<Scalar> right;
  PiecewiseLinearCurve<Scalar> left;
  std::vector<KInterval<Scalar>> intervals;  // right, then left, then combined
  Scalar horizon;
  std::optional<Scalar> valid_horizon;
  bool truncated = false;  // horizon lies beyond the valid horizon

  const PiecewiseLinearCurve<Scalar>& side(Side s) const { return s == Side::Right ? right : left; }

  std::vector<KInterval<Scalar>> intervals_of(Scope scope) const {
    std::vector<KInterval<Scalar>> out;
    for (const auto& iv : intervals) {
      if (iv.scope == scope) out.push_back(iv);
    }
    return out;
  }
};

class HorizonError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CurveOptions {
  // Treat the system as complete and simulate past its valid horizon.
  bool allow_truncated = false;
};

/// Time until which the finite system agrees with every continuation of it:
/// the smallest, over sides with verticals, of A_n + max_j b_j. No point past
/// the last vertical of a side is reached earlier. Empty when there are no
/// verticals at all.
template <typename Scalar>
std::optional<Scalar> valid_horizon(const BarrierSystem<Scalar>& system) {
  std::optional<Scalar> best;
  for (Side side : kBothSides) {
    const auto& seq = system.side(side);
    if (seq.empty()) continue;
    Scalar foot{0};
    Scalar tallest{0};
    for (const auto& barrier : seq) {
      foot += barrier.gap;
      tallest = max_value(tallest, barrier.height);
    }
    const Scalar t = foot + tallest;
    if (!best || t < *best) best = t;
  }
  return best;
}

namespace detail {

template <typename Scalar>
struct Ramp {
  Scalar start;
  Scalar length;
};

template <typename Scalar>
void append_ramps(const KnotList<Scalar>& knots, std::vector<Ramp<Scalar>>& ramps) {
  for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
    const Scalar length = knots[j + 1].u - knots[j].u;
    if (!(length > Scalar(0))) continue;
    ramps.push_back({min_value(knots[j].value, knots[j + 1].value), length});
  }
}

// Restrict a ground profile to |x| >= head_start.
template <typename Scalar>
std::optional<KnotList<Scalar>> clip_head_start(const KnotList<Scalar>& knots, const Scalar& head_start) {
  if (!(head_start < knots.back().u)) return std::nullopt;
  if (!(knots.front().u < head_start)) return knots;
  KnotList<Scalar> out{{head_start, interpolate(knots, head_start)}};
  for (const auto& k : knots) {
    if (head_start < k.u) out.push_back(k);
  }
  return out;
}

template <typename Scalar>
std::vector<Ramp<Scalar>> side_ramps(const BarrierSystem<Scalar>& system, Side side, const Scalar& horizon) {
  const auto profiles = face_arrival_profiles(system, side, horizon);
  std::vector<Ramp<Scalar>> ramps;
  std::map<std::size_t, const FaceArrivalProfile<Scalar>*> far_faces;
  for (const auto& p : profiles) {
    if (p.face.kind == FaceKind::Far) far_faces[p.face.index] = &p;
  }
  for (const auto& p : profiles) {
    switch (p.face.kind) {
      case FaceKind::Ground:
        if (auto clipped = clip_head_start(p.knots, system.head_start)) append_ramps(*clipped, ramps);
        break;
      case FaceKind::Near: {
        auto far = far_faces.find(p.face.index);
        append_ramps(far == far_faces.end() ? p.knots : lower_envelope(p.knots, far->second->knots), ramps);
        break;
      }
      case FaceKind::Far:
        break;  // folded into the near face's envelope
    }
  }
  return ramps;
}

template <typename Scalar>
bool same_instant(const Scalar& a, const Scalar& b) {
  if constexpr (is_exact_v<Scalar>) {
    return a == b;
  } else {
    return abs_value(Scalar(b - a)) <= 1e-12 * max_value(abs_value(a), abs_value(b));
  }
}

template <typename Scalar>
PiecewiseLinearCurve<Scalar> curve_from_ramps(const std::vector<Ramp<Scalar>>& ramps, const Scalar& horizon) {
  std::vector<std::pair<Scalar, int>> events;
  events.reserve(2 * ramps.size());
  for (const auto& r : ramps) {
    events.emplace_back(r.start, +1);
    events.emplace_back(r.start + r.length, -1);
  }
  std::sort(events.begin(), events.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<CurvePoint<Scalar>> points{{Scalar(0), Scalar(0)}};
  std::vector<int> slopes;
  int k = 0;
  Scalar value{0};
  std::size_t i = 0;
  // Events at t <= 0 only set the initial slope.
  while (i < events.size() && !(Scalar(0) < events[i].first)) k += events[i++].second;

  // events within rounding of the horizon fold into the final point
  while (i < events.size() && events[i].first < horizon && !same_instant(events[i].first, horizon)) {
    const Scalar t = events[i].first;
    int delta = 0;
    while (i < events.size() && same_instant(t, events[i].first)) delta += events[i++].second;
    if (delta == 0) continue;
    value += Scalar(k) * (t - points.back().t);
    slopes.push_back(k);
    points.push_back({t, value});
    k += delta;
  }
  if (points.back().t < horizon) {
    value += Scalar(k) * (horizon - points.back().t);
    slopes.push_back(k);
    points.push_back({horizon, value});
  }
  return {std::move(points), std::move(slopes)};
}

// x < 0 exactly, or by more than 1e-9 * scale in float mode.
template <typename Scalar>
bool below_zero(const Scalar& x, const Scalar& scale) {
  if constexpr (is_exact_v<Scalar>) {
    return x < Scalar(0);
  } else {
    return x < -ScalarTraits<double>::tolerance * std::max(1.0, std::abs(scale));
  }
}

template <typename Scalar>
void append_intervals(const PiecewiseLinearCurve<Scalar>& curve, Scope scope, std::vector<KInterval<Scalar>>& out) {
  const auto& pts = curve.points();
  const auto& slopes = curve.slopes();
  for (std::size_t j = 0; j < slopes.size(); ++j) {
    if (!out.empty() && out.back().scope == scope && out.back().k == slopes[j]) {
      out.back().t_end = pts[j + 1].t;
    } else {
      out.push_back({scope, pts[j].t, pts[j + 1].t, slopes[j]});
    }
  }
}

}  // namespace detail

/// B_total, B_right, B_left on [0, horizon] plus their k-intervals.
/// Throws HorizonError when the horizon passes the valid horizon, unless
/// `options.allow_truncated` is set.
template <typename Scalar>
ConsumptionCurves<Scalar> consumption_curve(const BarrierSystem<Scalar>& system, const Scalar& horizon,
                                            CurveOptions options = {}) {
  ensure_valid(system);
  if (!(horizon > Scalar(0))) throw HorizonError("horizon must be positive");
  const auto valid = valid_horizon(system);
  const bool truncated = valid && *valid < horizon;
  if (truncated && !options.allow_truncated) {
    throw HorizonError("horizon " + format_scalar(horizon) + " exceeds the valid horizon " + format_scalar(*valid));
  }

  auto right = detail::side_ramps(system, Side::Right, horizon);
  auto left = detail::side_ramps(system, Side::Left, horizon);
  std::vector<detail::Ramp<Scalar>> all = right;
  all.insert(all.end(), left.begin(), left.end());

  ConsumptionCurves<Scalar> out{detail::curve_from_ramps(all, horizon),
                                detail::curve_from_ramps(right, horizon),
                                detail::curve_from_ramps(left, horizon),
                                {},
                                horizon,
                                valid,
                                truncated};
  detail::append_intervals(out.right, Scope::Right, out.intervals);
  detail::append_intervals(out.left, Scope::Left, out.intervals);
  detail::append_intervals(out.total, Scope::Combined, out.intervals);
  return out;
}

template <typename Scalar>
struct RatioSample {
  Scalar t;
  Scalar q;
};

template <typename Scalar>
struct SpeedVerdict {
  Scalar speed;
  bool feasible = true;
  std::optional<Scalar> earliest_violation;
  Scalar checked_until;
};

template <typename Scalar>
struct RatioReport {
  std::vector<RatioSample<Scalar>> local_maxima;
  RatioSample<Scalar> supremum;
  Scalar valid_horizon;
  std::optional<SpeedVerdict<Scalar>> feasible_for;
};

/// Local maxima and supremum of Q(t) = B(t)/t on (0, valid_horizon].
/// A breakpoint is a local maximum iff incoming slope > Q(t) >= outgoing slope.
/// Between breakpoints Q is monotone, so the supremum is attained at a
/// breakpoint or at the horizon itself.
template <typename Scalar>
RatioReport<Scalar> ratio_maxima(const PiecewiseLinearCurve<Scalar>& curve, const Scalar& valid_horizon) {
  if (curve.size() < 2) throw std::invalid_argument("ratio_maxima: empty curve");
  const Scalar horizon = min_value(valid_horizon, curve.end_time());
  RatioReport<Scalar> report{{}, {Scalar(0), Scalar(0)}, horizon, std::nullopt};

  const auto& pts = curve.points();
  const auto& slopes = curve.slopes();
  auto consider = [&](const Scalar& t, const Scalar& value) {
    const Scalar q = value / t;
    if (report.supremum.q < q) report.supremum = {t, q};
  };
  for (std::size_t j = 1; j < pts.size(); ++j) {
    const auto& p = pts[j];
    if (horizon < p.t) break;
    if (!(Scalar(0) < p.t)) continue;
    consider(p.t, p.value);
    if (j + 1 < pts.size()) {
      const Scalar q = p.value / p.t;
      if (q < Scalar(slopes[j - 1]) && !(q < Scalar(slopes[j]))) report.local_maxima.push_back({p.t, q});
    }
  }
  if (Scalar(0) < horizon) consider(horizon, curve(horizon));
  return report;
}

/// Feasible iff B(t) <= v t on the whole curve; otherwise the earliest t with
/// B(t) = v t after which B exceeds v t.
template <typename Scalar>
SpeedVerdict<Scalar> check_speed(const PiecewiseLinearCurve<Scalar>& curve, const Scalar& v) {
  if (!(v > Scalar(0))) throw std::invalid_argument("check_speed: speed must be positive");
  SpeedVerdict<Scalar> verdict{v, true, std::nullopt, curve.end_time()};
  const auto& pts = curve.points();
  const auto& slopes = curve.slopes();
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
    const Scalar slack_begin = v * pts[j].t - pts[j].value;  // >= 0 while feasible
    const Scalar slack_end = v * pts[j + 1].t - pts[j + 1].value;
    if (!detail::below_zero(slack_end, Scalar(v * pts[j + 1].t))) continue;
    const Scalar rate = Scalar(slopes[j]) - v;  // > 0 here
    Scalar crossing = pts[j].t;
    if (Scalar(0) < slack_begin) crossing += slack_begin / rate;
    verdict.feasible = false;
    verdict.earliest_violation = crossing;
    return verdict;
  }
  return verdict;
}

template <typename Scalar>
SpeedVerdict<Scalar> check_speed(const BarrierSystem<Scalar>& system, const Scalar& v, const Scalar& horizon,
                                 CurveOptions options = {}) {
  return check_speed(consumption_curve(system, horizon, options).total, v);
}

template <typename Scalar>
struct PredictedInterval {
  Scalar length;
  int k;
};

/// Analytic k-interval cycle of one side, starting when the fire tops
/// vertical `cycle` (1-based, as b_i): [(b_i,0), (a_{i+1}-b_i,1), (b_i,3),
/// (b_{i+1}-2b_i,1)], zero-length entries dropped. Requires a_{i+1} >= b_i and
/// b_{i+1} >= 2 b_i on the whole side.
template <typename Scalar>
std::vector<PredictedInterval<Scalar>> predict_intervals(const BarrierSystem<Scalar>& system, Side side,
                                                         std::size_t cycle) {
  ensure_valid(system);
  const auto& seq = system.side(side);
  if (cycle < 1 || cycle + 1 > seq.size()) throw std::out_of_range("predict_intervals: cycle index out of range");
  if (!validate(system).side(side).conditions7) {
    throw std::invalid_argument("predict_intervals: side violates a_{i+1} >= b_i, b_{i+1} >= 2 b_i");
  }
  const Scalar& b = seq[cycle - 1].height;
  const Scalar& next_gap = seq[cycle].gap;
  const Scalar& next_height = seq[cycle].height;
  const std::vector<PredictedInterval<Scalar>> raw{
      {b, 0}, {next_gap - b, 1}, {b, 3}, {next_height - Scalar(2) * b, 1}};
  std::vector<PredictedInterval<Scalar>> out;
  for (const auto& entry : raw) {
    if (approx_equal(entry.length, Scalar(0))) continue;
    if (!out.empty() && out.back().k == entry.k) {
      out.back().length += entry.length;
    } else {
      out.push_back(entry);
    }
  }
  return out;
}

/// The simulator's k-intervals of `side` from the top of vertical `cycle`
/// (1-based) to the top of the next one, in the form predict_intervals uses.
/// Throws std::out_of_range when that window is not covered by the curves or
/// does not start on an interval boundary.
template <typename Scalar>
std::vector<PredictedInterval<Scalar>> observed_cycle(const ConsumptionCurves<Scalar>& curves,
                                                      const BarrierSystem<Scalar>& system, Side side,
                                                      std::size_t cycle) {
  const auto& seq = system.side(side);
  if (cycle < 1 || cycle + 1 > seq.size()) throw std::out_of_range("observed_cycle: cycle index out of range");
  const Scalar begin = top_arrival_time(system, side, cycle - 1);
  const Scalar end = top_arrival_time(system, side, cycle);
  if (curves.horizon < end) throw std::out_of_range("observed_cycle: window beyond the horizon");

  std::vector<PredictedInterval<Scalar>> out;
  bool started = false;
  for (const auto& iv : curves.intervals_of(scope_of(side))) {
    if (!started) {
      if (definitely_less(iv.t_start, begin)) continue;
      if (!approx_equal(iv.t_start, begin)) throw std::out_of_range("observed_cycle: no interval starts at the top");
      started = true;
    }
    if (!definitely_less(iv.t_start, end)) break;
    out.push_back({min_value(iv.t_end, end) - iv.t_start, iv.k});
  }
  return out;
}

}  // namespace hpfire
