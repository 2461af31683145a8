#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "hpfire/constructions.hpp"
#include "hpfire/consumption.hpp"
#include "hpfire/grid_oracle.hpp"

using namespace hpfire;

namespace {

BarrierSystem<double> single_barrier() {
  BarrierSystem<double> sys;
  sys.head_start = 1.0;
  sys.right.push_back({1.0, 17.0});
  return sys;
}

}  // namespace

TEST_SUITE("grid_oracle") {
  TEST_CASE("empty scene reproduces the L1 distance at cell centres") {
    const double h = 0.5;
    const auto grid = grid_arrival(empty_scene(h, 10.0));
    for (double x = -9.75; x < 10.0; x += 0.5) {
      for (double y = 0.25; y < 10.0; y += 0.5) CHECK(*grid.arrival(x, y) == doctest::Approx(std::abs(x) + y));
    }
    CHECK_FALSE(grid.arrival(0.0, 11.0).has_value());
    CHECK_FALSE(grid.arrival(0.0, -0.1).has_value());
  }

  TEST_CASE("points above the origin are never delayed") {
    const auto grid = grid_arrival(scene_for(convert<double>(build_seventeen_ninths(Rational(1), 2)), 0.5, 30.0));
    CHECK(*grid.arrival(0.25, 4.75) == doctest::Approx(5.0));
    CHECK(*grid.arrival(-0.25, 4.75) == doctest::Approx(5.0));
  }

  TEST_CASE("a wall at the origin blocks the source") {
    GridScene scene = empty_scene(1.0, 5.0);
    add_wall(scene, 0.0, 2.0);
    CHECK_THROWS_AS(grid_arrival(scene), std::invalid_argument);
  }

  TEST_CASE("walls are edge-blocking and snapped to the grid") {
    GridScene scene = empty_scene(1.0, 30.0);
    add_wall(scene, 1.2, 16.6);  // snaps to x = 1, height 17
    const auto grid = grid_arrival(scene);
    // over the top through the cells above it: exact 1.5 + 17 + 16.5 = 35, plus h for the detour
    CHECK(*grid.arrival(1.5, 0.5) == doctest::Approx(36.0));
    CHECK(*grid.arrival(0.5, 0.5) == doctest::Approx(1.0));
  }

  TEST_CASE("single barrier point near (10, 0)") {
    const auto grid = grid_arrival(scene_for(single_barrier(), 0.25, 50.0));
    CHECK(std::abs(*grid.arrival(10.0, 0.0) - 44.0) <= 0.5);
  }

  TEST_CASE("sampled consumption: flat and single barrier") {
    BarrierSystem<double> flat;
    flat.head_start = 1.0;
    const auto f = grid_consumption(flat, 0.25, 10.0);
    CHECK(f.t[20] == doctest::Approx(5.0));
    CHECK(std::abs(f.total[20] - 8.0) <= 0.5);

    const auto s = grid_consumption(single_barrier(), 0.25, 18.0);
    CHECK(s.t.back() == doctest::Approx(18.0));
    CHECK(std::abs(s.right.back() - 17.0) <= 1.0);
  }

  TEST_CASE("sampled curves are consistent") {
    const auto s = grid_consumption(convert<double>(build_seventeen_ninths(Rational(1), 2)), 0.5, 100.0);
    for (std::size_t m = 0; m < s.t.size(); ++m) {
      CHECK(s.total[m] == doctest::Approx(s.left[m] + s.right[m]));
      if (m > 0) CHECK(s.total[m] >= s.total[m - 1]);
    }
  }

  TEST_CASE("comparison against the exact curve") {
    BarrierSystem<double> flat;
    flat.head_start = 1.0;
    const double h = 0.25;
    const auto exact = consumption_curve(flat, 30.0);
    const auto sampled = grid_consumption(flat, h, 30.0);
    const double tol = oracle_tolerance(h, face_count(flat));
    CHECK(tol == doctest::Approx(1.0));

    const auto ok = compare(exact.total, sampled.t, sampled.total, tol);
    CHECK(ok.pass);
    CHECK(ok.max_deviation <= 1.0);

    const auto same = compare(exact.total, sampled.t, sampled.t, 1.0);  // y = t vs 2(t-1)
    CHECK_FALSE(same.pass);

    // identical curves
    std::vector<double> values;
    for (double t : sampled.t) values.push_back(exact.total(t));
    CHECK(compare(exact.total, sampled.t, values, tol).max_deviation == 0.0);

    // shift by 3h: the first sample already fails
    std::vector<double> shifted = values;
    for (auto& v : shifted) v += 3 * h;
    const auto bad = compare(exact.total, sampled.t, shifted, 2 * h);
    CHECK_FALSE(bad.pass);
    CHECK(*bad.first_exceedance == 0.0);

    CHECK_THROWS_AS(compare(exact.total, {40.0, 41.0}, {0.0, 0.0}, tol), std::invalid_argument);
  }

  TEST_CASE("oracle lower bound: grid arrival >= geodesic - 2h on barrier samples") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const auto sys = testing::random_grid_system(rng, 3, 8);
      const double h = 0.5;
      const auto grid = grid_arrival(scene_for(sys, h, 60.0));
      for (Side side : kBothSides) {
        const auto feet = foot_positions(sys.side(side));
        const double sign = side == Side::Right ? 1.0 : -1.0;
        for (std::size_t i = 0; i < feet.size(); ++i) {
          for (double y = 0.25; y < sys.side(side)[i].height; y += 0.5) {
            const auto near = grid.arrival(sign * feet[i] - sign * 0.25, y);
            if (!near) continue;
            CHECK(*near >= geodesic_distance(sys, {sign * feet[i], y}) - 2 * h);
          }
        }
      }
    }
  }
}
