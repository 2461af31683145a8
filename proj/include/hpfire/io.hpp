#pragma once

// CSV and JSON renderings of curves, k-intervals and reports. Exact values
// appear in JSON as "p/q" strings next to a decimal approximation; CSV
// columns are decimal so that standard tools can read them.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hpfire/consumption.hpp"
#include "hpfire/grid_oracle.hpp"
#include "hpfire/optimizer.hpp"
#include "json.hpp"

namespace hpfire {

namespace detail {

inline std::string decimal(double x) { return ScalarTraits<double>::format(x); }

template <typename Scalar>
std::string csv_number(const Scalar& x) {
  if constexpr (is_exact_v<Scalar>) {
    if (boost::multiprecision::denominator(x) == 1) return format_scalar(x);
  }
  return decimal(to_double(x));
}

template <typename Scalar>
nlohmann::json value_json(const Scalar& x) {
  if constexpr (is_exact_v<Scalar>) {
    return {{"exact", format_scalar(x)}, {"approx", to_double(x)}};
  } else {
    return x;
  }
}

}  // namespace detail

/// Columns t, B_total, B_left, B_right, k_total, Q at every breakpoint of any
/// of the three curves; k_total is the slope after t (the last slope on the final row).
template <typename Scalar>
std::string curve_csv(const ConsumptionCurves<Scalar>& curves) {
  std::vector<Scalar> times;
  for (const auto* c : {&curves.total, &curves.left, &curves.right}) {
    for (const auto& p : c->points()) times.push_back(p.t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::ostringstream out;
  out << "t,B_total,B_left,B_right,k_total,Q\n";
  for (const auto& t : times) {
    const Scalar total = curves.total(t);
    out << detail::csv_number(t) << ',' << detail::csv_number(total) << ',' << detail::csv_number(curves.left(t))
        << ',' << detail::csv_number(curves.right(t)) << ',' << curves.total.slope_after(t) << ',';
    out << (Scalar(0) < t ? detail::decimal(to_double(Scalar(total / t))) : "0") << '\n';
  }
  return out.str();
}

template <typename Scalar>
nlohmann::json intervals_json(const ConsumptionCurves<Scalar>& curves) {
  nlohmann::json doc;
  doc["horizon"] = detail::value_json(curves.horizon);
  doc["valid_horizon"] = curves.valid_horizon ? detail::value_json(*curves.valid_horizon) : nlohmann::json();
  doc["truncated"] = curves.truncated;
  for (Scope scope : {Scope::Right, Scope::Left, Scope::Combined}) {
    auto& list = doc["intervals"][std::string(to_string(scope))] = nlohmann::json::array();
    for (const auto& iv : curves.intervals_of(scope)) {
      list.push_back({{"t_start", detail::value_json(iv.t_start)},
                      {"t_end", detail::value_json(iv.t_end)},
                      {"k", iv.k}});
    }
  }
  return doc;
}

template <typename Scalar>
nlohmann::json verdict_json(const SpeedVerdict<Scalar>& verdict) {
  nlohmann::json doc{{"speed", detail::value_json(verdict.speed)},
                     {"feasible", verdict.feasible},
                     {"checked_until", detail::value_json(verdict.checked_until)}};
  doc["earliest_violation"] =
      verdict.earliest_violation ? detail::value_json(*verdict.earliest_violation) : nlohmann::json();
  return doc;
}

template <typename Scalar>
nlohmann::json ratio_report_json(const RatioReport<Scalar>& report) {
  nlohmann::json doc;
  doc["valid_horizon"] = detail::value_json(report.valid_horizon);
  doc["supremum"] = {{"t", detail::value_json(report.supremum.t)}, {"q", detail::value_json(report.supremum.q)}};
  doc["local_maxima"] = nlohmann::json::array();
  for (const auto& m : report.local_maxima) {
    doc["local_maxima"].push_back({{"t", detail::value_json(m.t)}, {"q", detail::value_json(m.q)}});
  }
  doc["feasible_for"] = report.feasible_for ? verdict_json(*report.feasible_for) : nlohmann::json();
  return doc;
}

inline nlohmann::json optimum_json(const Optimum& opt) {
  return {{"beta", opt.beta},
          {"delta", opt.delta ? nlohmann::json(*opt.delta) : nlohmann::json()},
          {"v", opt.v},
          {"maxima", opt.achieved_maxima},
          {"iterations", opt.iterations},
          {"unimodal", opt.unimodal}};
}

inline nlohmann::json comparison_json(const Comparison& cmp, double h) {
  return {{"cell_size", h},
          {"max_deviation", cmp.max_deviation},
          {"at_time", cmp.at_time},
          {"tolerance", cmp.tolerance},
          {"first_exceedance", cmp.first_exceedance ? nlohmann::json(*cmp.first_exceedance) : nlohmann::json()},
          {"samples", cmp.samples},
          {"pass", cmp.pass}};
}

inline std::string sampled_csv(const SampledCurve& curve) {
  std::ostringstream out;
  out << "t,B_sampled\n";
  for (std::size_t m = 0; m < curve.t.size(); ++m) {
    out << detail::decimal(curve.t[m]) << ',' << detail::decimal(curve.total[m]) << '\n';
  }
  return out.str();
}

}  // namespace hpfire
