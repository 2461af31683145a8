#include "hpfire/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hpfire {

namespace {

std::int64_t cells_for(double length, double h) {
  return static_cast<std::int64_t>(std::ceil(length / h - 1e-9));
}

std::int64_t snap(double x, double h) { return std::llround(x / h); }

// First column index k >= 0 whose cell centre (k + 1/2) h lies beyond s.
std::int64_t first_ground_cell(double s, double h) {
  return std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(s / h - 0.5 + 1e-9)) + 1);
}

}  // namespace

GridScene empty_scene(double h, double extent) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("grid: cell size must be positive");
  if (!(extent > 0.0)) throw std::invalid_argument("grid: extent must be positive");
  const std::int64_t n = cells_for(extent, h);
  GridScene scene;
  scene.h = h;
  scene.col_min = -n;
  scene.cols = 2 * n;
  scene.rows = n;
  scene.blocked_rows.assign(static_cast<std::size_t>(scene.cols + 1), 0);
  return scene;
}

void add_wall(GridScene& scene, double x, double height) {
  const std::int64_t m = snap(x, scene.h);
  const std::int64_t rows = std::max<std::int64_t>(1, snap(height, scene.h));
  if (m <= scene.col_min || m >= scene.col_min + scene.cols) return;  // outside the scene
  auto& slot = scene.blocked_rows[static_cast<std::size_t>(m - scene.col_min)];
  slot = std::max(slot, std::min(rows, scene.rows));
}

GridScene scene_for(const BarrierSystem<double>& system, double h, double horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("grid: horizon must be positive");
  GridScene scene = empty_scene(h, horizon + 2.0 * h);
  for (Side side : kBothSides) {
    const auto& seq = system.side(side);
    const auto feet = foot_positions(seq);
    const double sign = side == Side::Right ? 1.0 : -1.0;
    for (std::size_t i = 0; i < seq.size(); ++i) add_wall(scene, sign * feet[i], seq[i].height);
  }
  return scene;
}

GridArrival::GridArrival(GridScene scene, std::vector<std::int32_t> steps)
    : scene_(std::move(scene)), steps_(std::move(steps)) {}

std::optional<std::int32_t> GridArrival::steps(std::int64_t i, std::int64_t j) const {
  const std::int64_t c = i - scene_.col_min;
  if (c < 0 || c >= scene_.cols || j < 0 || j >= scene_.rows) return std::nullopt;
  const std::int32_t s = steps_[static_cast<std::size_t>(j * scene_.cols + c)];
  if (s < 0) return std::nullopt;
  return s;
}

std::optional<double> GridArrival::cell_arrival(std::int64_t i, std::int64_t j) const {
  auto s = steps(i, j);
  if (!s) return std::nullopt;
  return *s * scene_.h;
}

std::optional<double> GridArrival::arrival(double x, double y) const {
  const auto i = static_cast<std::int64_t>(std::floor(x / scene_.h));
  const auto j = static_cast<std::int64_t>(std::floor(y / scene_.h));
  return cell_arrival(i, j);
}

GridArrival grid_arrival(const GridScene& scene) {
  if (scene.cols < 2 || scene.rows < 1 || scene.col_min > -1 || scene.col_min + scene.cols < 1) {
    throw std::invalid_argument("grid: scene does not contain the origin");
  }
  if (scene.blocked_rows.size() != static_cast<std::size_t>(scene.cols + 1)) {
    throw std::invalid_argument("grid: wall table size mismatch");
  }
  if (scene.blocked_rows[static_cast<std::size_t>(-scene.col_min)] > 0) {
    throw std::invalid_argument("grid: source blocked by a wall at x = 0");
  }
  const std::int64_t cols = scene.cols;
  const std::int64_t rows = scene.rows;
  std::vector<std::int32_t> steps(static_cast<std::size_t>(cols * rows), -1);
  std::vector<std::int64_t> queue;
  queue.reserve(static_cast<std::size_t>(cols * rows));
  for (std::int64_t c : {-1 - scene.col_min, -scene.col_min}) {
    steps[static_cast<std::size_t>(c)] = 1;
    queue.push_back(c);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::int64_t cell = queue[head];
    const std::int64_t c = cell % cols;
    const std::int64_t j = cell / cols;
    const std::int32_t next = steps[static_cast<std::size_t>(cell)] + 1;
    auto visit = [&](std::int64_t target) {
      auto& s = steps[static_cast<std::size_t>(target)];
      if (s < 0) {
        s = next;
        queue.push_back(target);
      }
    };
    // Crossing from column c to c + 1 passes the wall slot c + 1.
    if (c > 0 && j >= scene.blocked_rows[static_cast<std::size_t>(c)]) visit(cell - 1);
    if (c + 1 < cols && j >= scene.blocked_rows[static_cast<std::size_t>(c + 1)]) visit(cell + 1);
    if (j > 0) visit(cell - cols);
    if (j + 1 < rows) visit(cell + cols);
  }
  return GridArrival(scene, std::move(steps));
}

SampledCurve grid_consumption(const BarrierSystem<double>& system, double h, double horizon) {
  ensure_valid(system);
  const GridArrival grid = grid_arrival(scene_for(system, h, horizon));
  const GridScene& scene = grid.scene();
  const auto last = static_cast<std::size_t>(std::floor(horizon / h + 1e-9));

  std::vector<std::size_t> hist_right(last + 1, 0), hist_left(last + 1, 0);
  auto record = [&](std::vector<std::size_t>& hist, std::optional<std::int32_t> s) {
    if (s && static_cast<std::size_t>(*s) <= last) ++hist[static_cast<std::size_t>(*s)];
  };

  const std::int64_t k0 = first_ground_cell(system.head_start, h);
  const std::int64_t reach = scene.col_min + scene.cols;
  for (std::int64_t k = k0; k < reach; ++k) {
    record(hist_right, grid.steps(k, 0));
    record(hist_left, grid.steps(-1 - k, 0));
  }
  for (Side side : kBothSides) {
    const auto& seq = system.side(side);
    const auto feet = foot_positions(seq);
    auto& hist = side == Side::Right ? hist_right : hist_left;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const std::int64_t m = snap(side == Side::Right ? feet[i] : -feet[i], h);
      const std::int64_t wall_rows = std::min(scene.rows, std::max<std::int64_t>(1, snap(seq[i].height, h)));
      for (std::int64_t j = 0; j < wall_rows; ++j) {
        const auto a = grid.steps(m - 1, j);
        const auto b = grid.steps(m, j);
        if (a && b) {
          record(hist, std::min(*a, *b));
        } else {
          record(hist, a ? a : b);
        }
      }
    }
  }

  SampledCurve out;
  out.h = h;
  std::size_t right = 0, left = 0;
  for (std::size_t m = 0; m <= last; ++m) {
    right += hist_right[m];
    left += hist_left[m];
    out.t.push_back(static_cast<double>(m) * h);
    out.right.push_back(static_cast<double>(right) * h);
    out.left.push_back(static_cast<double>(left) * h);
    out.total.push_back(static_cast<double>(right + left) * h);
  }
  return out;
}

std::size_t face_count(const BarrierSystem<double>& system) { return 2 * system.vertical_count(); }

double oracle_tolerance(double h, std::size_t faces) { return 2.0 * h * (static_cast<double>(faces) + 2.0); }

Comparison compare(const PiecewiseLinearCurve<double>& exact, const std::vector<double>& times,
                   const std::vector<double>& sampled, double tolerance) {
  if (times.size() != sampled.size()) throw std::invalid_argument("compare: times/values size mismatch");
  Comparison out;
  out.tolerance = tolerance;
  for (std::size_t m = 0; m < times.size(); ++m) {
    const double t = times[m];
    if (t < exact.start_time() || t > exact.end_time()) continue;
    ++out.samples;
    const double dev = std::abs(sampled[m] - exact(t));
    if (dev > out.max_deviation) {
      out.max_deviation = dev;
      out.at_time = t;
    }
    if (!out.first_exceedance && dev > tolerance) out.first_exceedance = t;
  }
  if (out.samples == 0) throw std::invalid_argument("compare: curves share no sample times");
  out.pass = !out.first_exceedance.has_value();
  return out;
}

}  // namespace hpfire
