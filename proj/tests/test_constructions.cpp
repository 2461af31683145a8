#include "doctest.h"
#include "helpers.hpp"
#include "hpfire/constructions.hpp"
#include "hpfire/consumption.hpp"
#include "hpfire/optimizer.hpp"

using namespace hpfire;
using hpfire::testing::R;

TEST_SUITE("constructions") {
  TEST_CASE("flat system") {
    const auto sys = build_flat(R(1));
    CHECK(sys.head_start == R(1));
    CHECK(sys.vertical_count() == 0);
    CHECK_THROWS_AS(build_flat(R(0)), std::invalid_argument);
  }

  TEST_CASE("17/9 starting values") {
    const auto sys = build_seventeen_ninths(R(1), 8);
    REQUIRE(sys.right.size() == 8);
    REQUIRE(sys.left.size() == 8);
    const long long a[] = {1, 34, 1020}, b[] = {17, 136, 2176}, c[] = {1, 238, 4080}, d[] = {34, 544, 8704};
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(sys.right[i].gap == R(a[i]));
      CHECK(sys.right[i].height == R(b[i]));
      CHECK(sys.left[i].gap == R(c[i]));
      CHECK(sys.left[i].height == R(d[i]));
    }
    // recurrences beyond the table
    for (std::size_t i = 1; i + 1 < 8; ++i) {
      CHECK(sys.right[i + 1].gap == R(15, 2) * sys.right[i].height);
      CHECK(sys.right[i].height == R(4) * sys.left[i - 1].height);
      CHECK(sys.left[i + 1].gap == R(15, 2) * sys.left[i].height);
      CHECK(sys.left[i].height == R(4) * sys.right[i].height);
    }
    CHECK_THROWS_AS(build_seventeen_ninths(R(1), 0), std::invalid_argument);
    CHECK_THROWS_AS(build_seventeen_ninths(R(-1), 3), std::invalid_argument);
  }

  TEST_CASE("17/9 system satisfies the interlacing conditions and scales with s") {
    const auto sys = build_seventeen_ninths(R(1), 8);
    const auto report = validate(sys);
    CHECK(report.is_positive);
    CHECK(report.right.conditions7);
    CHECK(report.left.conditions7);
    CHECK(build_seventeen_ninths(R(5, 2), 8) == scale(sys, R(5, 2)));
  }

  TEST_CASE("17/9 system: 0-intervals of the two sides never overlap") {
    const auto sys = build_seventeen_ninths(R(1), 8);
    const auto c = consumption_curve(sys, *valid_horizon(sys));
    auto zeros = [&](Scope scope) {
      std::vector<KInterval<Rational>> out;
      for (const auto& iv : c.intervals_of(scope)) {
        if (iv.k == 0 && iv.t_start > R(1)) out.push_back(iv);  // skip the head-start
      }
      return out;
    };
    const auto right = zeros(Scope::Right);
    const auto left = zeros(Scope::Left);
    CHECK(right.size() >= 6);
    CHECK(left.size() >= 6);
    for (const auto& r : right) {
      for (const auto& l : left) CHECK((r.t_end <= l.t_start || l.t_end <= r.t_start));
    }
  }

  TEST_CASE("basic interlacing with beta = 4 is the 17/9 system") {
    const auto basic = build_basic_interlacing(R(4), R(1), R(17), R(34), 8);
    CHECK(basic == build_seventeen_ninths(R(1), 8));
  }

  TEST_CASE("basic interlacing cycle ratio matches the closed form") {
    for (int beta : {3, 4, 5}) {
      const Rational b(beta);
      const auto sys = build_basic_interlacing(b, R(1), R(17), R(17) * b, 8);
      CHECK(validate(sys).right.conditions7);
      CHECK(validate(sys).left.conditions7);
      const auto c = consumption_curve(sys, *valid_horizon(sys));
      // steady-state window: from the top of the left vertical i to the top of the right vertical i+1
      for (std::size_t i = 2; i <= 5; ++i) {
        const Rational t0 = top_arrival_time(sys, Side::Left, i - 1);
        const Rational t1 = top_arrival_time(sys, Side::Right, i);
        const Rational ratio = (c.total(t1) - c.total(t0)) / (t1 - t0);
        CHECK(to_double(ratio) == doctest::Approx(cycle_ratio(beta)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("improved construction: starting values") {
    const Optimum opt = optimize_beta_delta();
    const auto sys = build_improved({opt.beta, *opt.delta, 8, std::nullopt});
    CHECK(sys.right[0].height == 1.0);
    CHECK(sys.left[0].height == 2.0);
    CHECK(sys.head_start == doctest::Approx(0.1493).epsilon(1e-3));
    CHECK(sys.right[0].gap == sys.head_start);
    CHECK(sys.left[0].gap == sys.head_start);
    CHECK(sys.right[1].gap == doctest::Approx(*opt.delta + 1.0));
    CHECK(sys.left[1].gap == doctest::Approx(2 * opt.beta + 3 * *opt.delta - 1.0));
    const auto report = validate(sys);
    CHECK(report.right.conditions7);
    CHECK(report.left.conditions7);
  }

  TEST_CASE("improved construction: head-start formula") {
    // with v = Q13 the start-up maximum sits below the steady state
    const double beta = 4.06887, delta = 1.2802;
    const double v = interlaced_maxima(beta, delta).first;
    const double s = improved_head_start(beta, delta, v);
    CHECK(s == doctest::Approx(((4 * beta + 2 * delta + 1) - v * (2 * beta + delta + 1)) / v));
    CHECK(s == doctest::Approx(0.149).epsilon(2e-3));
  }

  TEST_CASE("improved construction with delta = 0 grows like the unshifted scheme") {
    const auto sys = build_improved({4.0, 0.0, 6, 1.0});
    for (std::size_t i = 1; i < 6; ++i) {
      CHECK(sys.right[i].height == doctest::Approx(4.0 * sys.left[i - 1].height));
      CHECK(sys.left[i].height == doctest::Approx(4.0 * sys.right[i].height));
    }
  }

  TEST_CASE("improved construction rejects bad parameters") {
    CHECK_THROWS(build_improved({2.0, 1.0, 8, std::nullopt}));
    CHECK_THROWS(build_improved({4.0, -0.5, 8, std::nullopt}));
    CHECK_THROWS(build_improved({4.0, 1.0, 0, std::nullopt}));
    CHECK_THROWS(build_improved({4.0, 0.0, 8, std::nullopt}));  // auto s is negative here
  }
}
