#pragma once

// Generators for explicit barrier systems: the flat baseline, the exact 17/9
// interlacing, the general-beta interlacing it belongs to, and the shifted
// interlacing of the improved construction.

#include <optional>
#include <stdexcept>

#include "hpfire/barrier_system.hpp"

namespace hpfire {

inline constexpr int kDefaultCycles = 8;

template <typename Scalar>
BarrierSystem<Scalar> build_flat(const Scalar& head_start) {
  if (!(head_start > Scalar(0))) throw std::invalid_argument("build_flat: head-start must be positive");
  BarrierSystem<Scalar> out;
  out.head_start = head_start;
  return out;
}

/// The 17/9 system with `cycles` verticals per side:
///   a_1 = s, b_1 = 17s, a_2 = 34s, a_{i+1} = 7.5 b_i, b_{i+1} = 4 d_i,
///   c_1 = s, d_1 = 34s, c_2 = 238s, c_{i+1} = 7.5 d_i, d_{i+1} = 4 b_{i+1}.
template <typename Scalar = Rational>
BarrierSystem<Scalar> build_seventeen_ninths(const Scalar& s, int cycles = kDefaultCycles) {
  if (!(s > Scalar(0))) throw std::invalid_argument("build_seventeen_ninths: head-start must be positive");
  if (cycles < 1) throw std::invalid_argument("build_seventeen_ninths: need at least one cycle");
  const Scalar seven_and_half = Scalar(15) / Scalar(2);
  const auto n = static_cast<std::size_t>(cycles);

  std::vector<Scalar> a{s, Scalar(34) * s}, b{Scalar(17) * s}, c{s, Scalar(238) * s}, d{Scalar(34) * s};
  for (std::size_t i = 1; i < n; ++i) {
    b.push_back(Scalar(4) * d[i - 1]);
    d.push_back(Scalar(4) * b[i]);
    a.push_back(seven_and_half * b[i]);
    c.push_back(seven_and_half * d[i]);
  }
  BarrierSystem<Scalar> out;
  out.head_start = s;
  for (std::size_t i = 0; i < n; ++i) {
    out.right.push_back({a[i], b[i]});
    out.left.push_back({c[i], d[i]});
  }
  return out;
}

/// Unshifted interlacing with growth factor beta: d_i = beta b_i,
/// b_{i+1} = beta d_i, c_{i+1} = 2 (b_{i+1} - b_i), a_{i+1} = 2 (d_i - d_{i-1})
/// and a_2 = 2 (d_1 - b_1). The end of each 0-interval on one side coincides
/// with the end of a 3-interval on the other. With beta = 4, b_1 = 17s and
/// d_1 = 34s this is the 17/9 system.
template <typename Scalar>
BarrierSystem<Scalar> build_basic_interlacing(const Scalar& beta, const Scalar& s, const Scalar& b1, const Scalar& d1,
                                              int cycles = kDefaultCycles) {
  if (!(beta > Scalar(2))) throw std::invalid_argument("build_basic_interlacing: beta must exceed 2");
  if (cycles < 1) throw std::invalid_argument("build_basic_interlacing: need at least one cycle");
  const auto n = static_cast<std::size_t>(cycles);
  std::vector<Scalar> b{b1}, d{d1};
  for (std::size_t i = 1; i < n; ++i) {
    b.push_back(beta * d[i - 1]);
    d.push_back(beta * b[i]);
  }
  std::vector<Scalar> a{s, Scalar(2) * (d[0] - b[0])}, c{s};
  for (std::size_t i = 1; i < n; ++i) c.push_back(Scalar(2) * (b[i] - b[i - 1]));
  for (std::size_t i = 1; i + 1 < n; ++i) a.push_back(Scalar(2) * (d[i] - d[i - 1]));

  BarrierSystem<Scalar> out;
  out.head_start = s;
  for (std::size_t i = 0; i < n; ++i) {
    out.right.push_back({a[i], b[i]});
    out.left.push_back({c[i], d[i]});
  }
  ensure_valid(out);
  return out;
}

struct InterlacingParams {
  double beta = 0.0;
  double delta = 0.0;
  int cycles = kDefaultCycles;
  // nullopt: choose s so that the start-up matches the steady-state ratio.
  std::optional<double> head_start;
};

/// s / b_1 for the shifted interlacing at target speed v.
double improved_head_start(double beta, double delta, double v);

/// Shifted interlacing (b_1 = 1): d_1 = 2, a_1 = c_1 = s, a_2 = delta + 1,
/// c_2 = 2 beta + 3 delta - 1, b_{i+1} = beta d_i, d_{i+1} = beta b_{i+1},
/// c_{i+1} = (delta - 1) b_i + (beta + delta) d_i and
/// a_{i+2} = (delta - 1) d_i + (beta + delta) b_{i+1}.
/// The last recurrence is indexed so that each left 0-interval starts
/// delta * b_i before the matching right 3-interval.
BarrierSystem<double> build_improved(const InterlacingParams& params);

}  // namespace hpfire
