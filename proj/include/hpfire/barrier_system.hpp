#pragma once

// Barrier systems: an infinite horizontal barrier on the x-axis with vertical
// delaying barriers attached to it. Each side is a sequence of (gap, height)
// pairs: gap i is the horizontal distance from the previous vertical (or the
// origin) to vertical i. A horizontal ray follows the last vertical.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <string>
#include <vector>

#include "hpfire/scalar.hpp"

namespace hpfire {

enum class Side { Right, Left };

inline constexpr Side kBothSides[] = {Side::Right, Side::Left};

inline std::string_view to_string(Side side) { return side == Side::Right ? "right" : "left"; }

template <typename Scalar>
struct Barrier {
  Scalar gap;     // a_i (right) or c_i (left)
  Scalar height;  // b_i (right) or d_i (left)

  friend bool operator==(const Barrier&, const Barrier&) = default;
};

template <typename Scalar>
struct BarrierSystem {
  using scalar_type = Scalar;

  Scalar head_start{0};
  std::vector<Barrier<Scalar>> right;
  std::vector<Barrier<Scalar>> left;

  const std::vector<Barrier<Scalar>>& side(Side s) const { return s == Side::Right ? right : left; }
  std::vector<Barrier<Scalar>>& side(Side s) { return s == Side::Right ? right : left; }

  std::size_t vertical_count() const { return right.size() + left.size(); }

  friend bool operator==(const BarrierSystem&, const BarrierSystem&) = default;
};

class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  /// Offending field, e.g. "right[1].height" or "head_start".
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct SideValidation {
  bool doubling = true;     // b_{i+1} > 2 b_i for all i
  bool conditions7 = true;  // a_{i+1} >= b_i and b_{i+1} >= 2 b_i for all i
  // Zero-based positions in the side's sequence of the first offending pair.
  std::optional<std::size_t> first_doubling_violation;
  std::optional<std::size_t> first_conditions7_violation;
};

struct ValidationReport {
  bool is_positive = true;
  std::optional<std::string> first_nonpositive;  // field name
  SideValidation right;
  SideValidation left;

  const SideValidation& side(Side s) const { return s == Side::Right ? right : left; }
};

namespace detail {

inline std::string field_name(Side side, std::size_t i, bool height) {
  return std::string(to_string(side)) + "[" + std::to_string(i) + "]." + (height ? "height" : "gap");
}

template <typename Scalar>
SideValidation validate_side(const std::vector<Barrier<Scalar>>& seq) {
  SideValidation out;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const Scalar twice_prev = Scalar(2) * seq[i - 1].height;
    if (!(seq[i].height > twice_prev) && out.doubling) {
      out.doubling = false;
      out.first_doubling_violation = i;
    }
    const bool gap_ok = !(seq[i].gap < seq[i - 1].height);
    const bool growth_ok = !(seq[i].height < twice_prev);
    if (!(gap_ok && growth_ok) && out.conditions7) {
      out.conditions7 = false;
      out.first_conditions7_violation = i;
    }
  }
  return out;
}

}  // namespace detail

/// Positivity, doubling, and conditions (a_{i+1} >= b_i, b_{i+1} >= 2 b_i) per side.
/// Throws ValidationError for non-finite values or a negative head-start;
/// non-positive lengths are reported through `is_positive`.
template <typename Scalar>
ValidationReport validate(const BarrierSystem<Scalar>& system) {
  using Traits = ScalarTraits<Scalar>;
  if (!Traits::is_finite(system.head_start)) throw ValidationError("head_start", "not finite");
  if (system.head_start < Scalar(0)) throw ValidationError("head_start", "negative");

  ValidationReport report;
  for (Side side : kBothSides) {
    const auto& seq = system.side(side);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      for (bool height : {false, true}) {
        const Scalar& value = height ? seq[i].height : seq[i].gap;
        if (!Traits::is_finite(value)) throw ValidationError(detail::field_name(side, i, height), "not finite");
        if (!(value > Scalar(0)) && report.is_positive) {
          report.is_positive = false;
          report.first_nonpositive = detail::field_name(side, i, height);
        }
      }
    }
  }
  report.right = detail::validate_side(system.right);
  report.left = detail::validate_side(system.left);
  return report;
}

/// Throws ValidationError unless every length is finite and positive.
template <typename Scalar>
void ensure_valid(const BarrierSystem<Scalar>& system) {
  const ValidationReport report = validate(system);
  if (!report.is_positive) throw ValidationError(*report.first_nonpositive, "length must be positive");
}

/// Foot positions A_i (or C_i): prefix sums of the gaps.
template <typename Scalar>
std::vector<Scalar> foot_positions(const std::vector<Barrier<Scalar>>& seq) {
  std::vector<Scalar> out;
  out.reserve(seq.size());
  Scalar sum{0};
  for (const auto& barrier : seq) {
    sum += barrier.gap;
    out.push_back(sum);
  }
  return out;
}

/// Height prefix sums B_i (or D_i).
template <typename Scalar>
std::vector<Scalar> height_sums(const std::vector<Barrier<Scalar>>& seq) {
  std::vector<Scalar> out;
  out.reserve(seq.size());
  Scalar sum{0};
  for (const auto& barrier : seq) {
    sum += barrier.height;
    out.push_back(sum);
  }
  return out;
}

template <typename Scalar>
BarrierSystem<Scalar> scale(const BarrierSystem<Scalar>& system, const Scalar& factor) {
  if (!(factor > Scalar(0))) throw std::invalid_argument("scale factor must be positive");
  BarrierSystem<Scalar> out = system;
  out.head_start *= factor;
  for (Side side : kBothSides) {
    for (auto& barrier : out.side(side)) {
      barrier.gap *= factor;
      barrier.height *= factor;
    }
  }
  return out;
}

/// Swap the left and right sides.
template <typename Scalar>
BarrierSystem<Scalar> mirror(const BarrierSystem<Scalar>& system) {
  BarrierSystem<Scalar> out = system;
  std::swap(out.right, out.left);
  return out;
}

template <typename To, typename From>
BarrierSystem<To> convert(const BarrierSystem<From>& system) {
  auto cast = [](const From& x) -> To {
    if constexpr (std::is_same_v<To, double>) {
      return to_double(x);
    } else {
      return ScalarTraits<To>::from_double(to_double(x));
    }
  };
  BarrierSystem<To> out;
  out.head_start = cast(system.head_start);
  for (Side side : kBothSides) {
    for (const auto& barrier : system.side(side)) out.side(side).push_back({cast(barrier.gap), cast(barrier.height)});
  }
  return out;
}

namespace detail {

template <typename Scalar>
std::vector<Barrier<Scalar>> merge_head_start(const std::vector<Barrier<Scalar>>& seq, const Scalar& head_start) {
  const std::vector<Scalar> feet = foot_positions(seq);
  std::size_t covered = 0;
  while (covered < seq.size() && !(head_start < feet[covered])) ++covered;
  if (covered == 0) return seq;

  Scalar tallest = seq[0].height;
  for (std::size_t i = 1; i < covered; ++i) tallest = max_value(tallest, seq[i].height);

  std::vector<Barrier<Scalar>> out;
  out.push_back({head_start, tallest});
  if (covered < seq.size()) {
    out.push_back({feet[covered] - head_start, seq[covered].height});
    out.insert(out.end(), seq.begin() + static_cast<std::ptrdiff_t>(covered) + 1, seq.end());
  }
  return out;
}

template <typename Scalar>
std::vector<Barrier<Scalar>> enforce_doubling(std::vector<Barrier<Scalar>> seq) {
  for (;;) {
    std::size_t k = 1;
    while (k < seq.size() && seq[k].height > Scalar(2) * seq[k - 1].height) ++k;
    if (k >= seq.size()) return seq;
    if (k + 1 == seq.size()) {
      seq.pop_back();
      continue;
    }
    const Scalar delta = max_value(Scalar(0), Scalar(seq[k].height - seq[k - 1].height));
    seq[k + 1].gap = seq[k].gap + seq[k + 1].gap + Scalar(2) * delta;
    seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(k));
  }
}

}  // namespace detail

/// Rewrites a system so that every vertical is more than twice as tall as its
/// predecessor on the same side, without increasing consumption at any time.
///
/// Verticals standing inside the head-start are first merged into one vertical
/// of their maximal height at x = s. Then the first offending vertical b_k is
/// removed repeatedly; the following gap absorbs a_k + 2 max(0, b_k - b_{k-1}).
template <typename Scalar>
BarrierSystem<Scalar> normalize_lemma1(const BarrierSystem<Scalar>& system) {
  ensure_valid(system);
  BarrierSystem<Scalar> out;
  out.head_start = system.head_start;
  for (Side side : kBothSides) {
    out.side(side) = detail::enforce_doubling(detail::merge_head_start(system.side(side), system.head_start));
  }
  return out;
}

}  // namespace hpfire
