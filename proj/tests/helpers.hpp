#pragma once

#include <random>
#include <vector>

#include "hpfire/barrier_system.hpp"

namespace hpfire::testing {

inline Rational R(long long p, long long q = 1) { return Rational(p, q); }

// Random positive system with `lo`..`hi` verticals per side; lengths uniform in [min_len, max_len].
inline BarrierSystem<double> random_system(std::mt19937_64& rng, int lo, int hi, double min_len = 0.1,
                                           double max_len = 100.0) {
  std::uniform_int_distribution<int> count(lo, hi);
  std::uniform_real_distribution<double> len(min_len, max_len);
  BarrierSystem<double> sys;
  sys.head_start = len(rng);
  for (auto* seq : {&sys.right, &sys.left}) {
    const int n = count(rng);
    for (int i = 0; i < n; ++i) seq->push_back({len(rng), len(rng)});
  }
  return sys;
}

// Random integer-valued system on a grid of spacing 1, suited to the grid oracle.
inline BarrierSystem<double> random_grid_system(std::mt19937_64& rng, int max_per_side, int max_len) {
  std::uniform_int_distribution<int> count(0, max_per_side);
  std::uniform_int_distribution<int> len(1, max_len);
  BarrierSystem<double> sys;
  sys.head_start = len(rng);
  for (auto* seq : {&sys.right, &sys.left}) {
    const int n = count(rng);
    for (int i = 0; i < n; ++i) seq->push_back({double(len(rng)), double(len(rng))});
  }
  return sys;
}

}  // namespace hpfire::testing
