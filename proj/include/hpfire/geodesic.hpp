#pragma once

// L1 geodesic distances from the origin in the upper half-plane, with the
// x-axis as a barrier and grounded vertical segments as obstacles.
//
// A shortest path to a point on one side never needs to reverse horizontally,
// so its length is |x| + y + 2 D, where D is the least total descent of a path
// that clears every vertical strictly between the origin and the point and
// ends at height y.

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "hpfire/barrier_system.hpp"
#include "hpfire/piecewise_linear.hpp"

namespace hpfire {

template <typename Scalar>
struct Point {
  Scalar x;
  Scalar y;
};

/// D = sum_i max(0, h_i - max(M_{i+1}, terminal)), with M_{i+1} the largest
/// height after position i (0 if none).
template <typename Scalar>
Scalar forced_descent(std::span<const Scalar> heights, const Scalar& terminal_height) {
  Scalar total{0};
  Scalar suffix_max{0};
  for (std::size_t k = heights.size(); k-- > 0;) {
    const Scalar floor = max_value(suffix_max, terminal_height);
    if (floor < heights[k]) total += heights[k] - floor;
    suffix_max = max_value(suffix_max, heights[k]);
  }
  return total;
}

template <typename Scalar>
Scalar forced_descent(const std::vector<Scalar>& heights, const Scalar& terminal_height) {
  return forced_descent(std::span<const Scalar>(heights), terminal_height);
}

namespace detail {

template <typename Scalar>
std::vector<Scalar> heights_of(const std::vector<Barrier<Scalar>>& seq, std::size_t count) {
  std::vector<Scalar> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(seq[i].height);
  return out;
}

}  // namespace detail

/// Length of the shortest barrier-avoiding L1 path from the origin to `p`.
/// Points on a vertical barrier get the smaller of their two face values.
template <typename Scalar>
Scalar geodesic_distance(const BarrierSystem<Scalar>& system, const Point<Scalar>& p) {
  if (p.y < Scalar(0)) throw std::domain_error("geodesic_distance: point below the x-axis");
  const Side side = p.x < Scalar(0) ? Side::Left : Side::Right;
  const Scalar dx = abs_value(p.x);
  const auto& seq = system.side(side);
  std::vector<Scalar> heights;
  Scalar foot{0};
  for (const auto& barrier : seq) {
    foot += barrier.gap;
    if (!(foot < dx)) break;
    heights.push_back(barrier.height);
  }
  return dx + p.y + Scalar(2) * forced_descent(heights, p.y);
}

/// Arrival time at the top of vertical `index` (zero-based) on `side`.
template <typename Scalar>
Scalar top_arrival_time(const BarrierSystem<Scalar>& system, Side side, std::size_t index) {
  const auto& seq = system.side(side);
  if (index >= seq.size()) throw std::out_of_range("top_arrival_time: no such vertical");
  const std::vector<Scalar> feet = foot_positions(seq);
  const auto before = detail::heights_of(seq, index);
  return feet[index] + seq[index].height + Scalar(2) * forced_descent(before, seq[index].height);
}

enum class FaceKind {
  Near,    // vertical face turned towards the origin
  Far,     // vertical face turned away from the origin
  Ground,  // horizontal segment between consecutive verticals
};

struct FaceId {
  Side side = Side::Right;
  FaceKind kind = FaceKind::Ground;
  // Vertical index for Near/Far. For Ground, segment j lies between vertical
  // j-1 and vertical j; j == count is the trailing ray.
  std::size_t index = 0;

  friend bool operator==(const FaceId&, const FaceId&) = default;
};

/// Arrival time along one face as a function of arclength u: height y for
/// vertical faces, distance |x| from the origin for ground segments. Slopes are ±1.
template <typename Scalar>
struct FaceArrivalProfile {
  FaceId face;
  KnotList<Scalar> knots;

  const Scalar& domain_begin() const { return knots.front().u; }
  const Scalar& domain_end() const { return knots.back().u; }
  Scalar arrival(const Scalar& u) const { return interpolate(knots, u); }
  Scalar earliest() const {
    Scalar best = knots.front().value;
    for (const auto& k : knots) best = min_value(best, k.value);
    return best;
  }
};

namespace detail {

// Knots of u -> offset + u + 2 D(heights, u) on [0, top]. D is piecewise
// linear with breaks only at the listed heights.
template <typename Scalar>
KnotList<Scalar> climb_profile(const std::vector<Scalar>& heights, const Scalar& offset, const Scalar& top) {
  std::vector<Scalar> us{Scalar(0), top};
  for (const auto& h : heights) {
    if (Scalar(0) < h && h < top) us.push_back(h);
  }
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  KnotList<Scalar> knots;
  knots.reserve(us.size());
  for (const auto& u : us) knots.push_back({u, offset + u + Scalar(2) * forced_descent(heights, u)});
  return simplify(knots);
}

}  // namespace detail

/// Arrival profiles of every face on one side whose earliest arrival is within
/// `horizon`. The trailing ray is cut where its arrival reaches the horizon.
template <typename Scalar>
std::vector<FaceArrivalProfile<Scalar>> face_arrival_profiles(const BarrierSystem<Scalar>& system, Side side,
                                                              const Scalar& horizon) {
  if (!(horizon > Scalar(0))) throw std::invalid_argument("face_arrival_profiles: horizon must be positive");
  const auto& seq = system.side(side);
  const std::vector<Scalar> feet = foot_positions(seq);
  std::vector<FaceArrivalProfile<Scalar>> out;

  auto push = [&](FaceId id, KnotList<Scalar> knots) {
    FaceArrivalProfile<Scalar> profile{id, std::move(knots)};
    if (!(horizon < profile.earliest())) out.push_back(std::move(profile));
  };

  std::vector<Scalar> before;
  Scalar segment_begin{0};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Scalar ground_offset = Scalar(2) * forced_descent(before, Scalar(0));
    push({side, FaceKind::Ground, i},
         KnotList<Scalar>{{segment_begin, segment_begin + ground_offset}, {feet[i], feet[i] + ground_offset}});

    const Scalar& height = seq[i].height;
    KnotList<Scalar> near = detail::climb_profile(before, feet[i], height);
    const Scalar top = near.back().value;
    push({side, FaceKind::Near, i}, std::move(near));
    push({side, FaceKind::Far, i}, KnotList<Scalar>{{Scalar(0), top + height}, {height, top}});

    before.push_back(height);
    segment_begin = feet[i];
  }

  const Scalar ray_offset = Scalar(2) * forced_descent(before, Scalar(0));
  const Scalar ray_start = segment_begin + ray_offset;
  const Scalar ray_end = horizon - ray_offset;
  if (segment_begin < ray_end) {
    push({side, FaceKind::Ground, seq.size()},
         KnotList<Scalar>{{segment_begin, ray_start}, {ray_end, ray_end + ray_offset}});
  }
  return out;
}

}  // namespace hpfire
