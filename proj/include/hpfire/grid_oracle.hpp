#pragma once

// Brute-force oracle: the upper half-plane is cut into h x h cells, barriers
// sit on cell edges and block crossings, and arrival times come from a
// breadth-first search with unit step h. Cell (i, j) covers
// [ih, (i+1)h] x [jh, (j+1)h]; its arrival is that of its centre, which is
// exact in the L1 metric when the barriers lie on grid lines.

#include <cstdint>
#include <optional>
#include <vector>

#include "hpfire/barrier_system.hpp"
#include "hpfire/piecewise_linear.hpp"

namespace hpfire {

struct GridScene {
  double h = 1.0;
  // Columns col_min .. col_min + cols - 1, rows 0 .. rows - 1.
  std::int64_t col_min = 0;
  std::int64_t cols = 0;
  std::int64_t rows = 0;
  // blocked_rows[m - col_min]: rows j < blocked_rows are walled off between
  // columns m - 1 and m (the wall at x = m h).
  std::vector<std::int64_t> blocked_rows;

  double x_min() const { return static_cast<double>(col_min) * h; }
  double x_max() const { return static_cast<double>(col_min + cols) * h; }
  double y_max() const { return static_cast<double>(rows) * h; }
};

/// Empty scene covering [-extent, extent] x [0, extent] (rounded up to whole cells).
GridScene empty_scene(double h, double extent);

/// Wall of `height` at x (both snapped to the grid; at least one cell high).
void add_wall(GridScene& scene, double x, double height);

/// Scene for a barrier system, extent = horizon + 2h in every direction.
GridScene scene_for(const BarrierSystem<double>& system, double h, double horizon);

class GridArrival {
 public:
  GridArrival(GridScene scene, std::vector<std::int32_t> steps);

  const GridScene& scene() const { return scene_; }
  /// BFS step count of a cell; nullopt when outside the scene or unreachable.
  std::optional<std::int32_t> steps(std::int64_t i, std::int64_t j) const;
  std::optional<double> cell_arrival(std::int64_t i, std::int64_t j) const;
  /// Arrival of the cell containing (x, y).
  std::optional<double> arrival(double x, double y) const;

 private:
  GridScene scene_;
  std::vector<std::int32_t> steps_;
};

/// BFS from the two cells touching the origin (both reached at time h).
/// Throws std::invalid_argument when a wall stands at x = 0.
GridArrival grid_arrival(const GridScene& scene);

struct SampledCurve {
  double h = 0.0;
  std::vector<double> t;  // t_m = m h, m = 0 .. horizon / h
  std::vector<double> right;
  std::vector<double> left;
  std::vector<double> total;
};

/// B~(t) = h * (number of barrier samples with arrival <= t). Ground samples
/// are cell centres with |x| > s (read from the cell above), vertical samples
/// are cell centres along the wall (earlier of the two adjacent cells).
SampledCurve grid_consumption(const BarrierSystem<double>& system, double h, double horizon);

/// Number of barrier faces: two per vertical.
std::size_t face_count(const BarrierSystem<double>& system);

/// 2 h (faces + 2).
double oracle_tolerance(double h, std::size_t faces);

struct Comparison {
  double max_deviation = 0.0;
  double at_time = 0.0;
  double tolerance = 0.0;
  std::optional<double> first_exceedance;
  std::size_t samples = 0;
  bool pass = true;
};

/// Max |B~(t) - B(t)| over the common sample times.
/// Throws std::invalid_argument when the time ranges do not overlap.
Comparison compare(const PiecewiseLinearCurve<double>& exact, const std::vector<double>& times,
                   const std::vector<double>& sampled, double tolerance);

}  // namespace hpfire
