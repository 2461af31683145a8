#include "hpfire/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hpfire {

double cycle_ratio(double beta) {
  if (!(beta > 2.0)) throw std::domain_error("cycle_ratio: beta must exceed 2");
  const double alpha = beta - 2.0;  // alpha / b_i
  const double sq = beta * beta;
  return (alpha + 2.0 * sq) / (alpha + sq);
}

double delta_of_beta(double beta) {
  const double b2 = beta * beta;
  const double disc = -12.0 + 4.0 * beta + 5.0 * b2 - 2.0 * b2 * beta + b2 * b2;
  if (!(disc >= 0.0)) throw std::domain_error("delta_of_beta: negative discriminant");
  return 0.5 * (beta - b2 + std::sqrt(disc));
}

std::pair<double, double> interlaced_maxima(double beta, double delta) {
  if (!(delta > 0.0)) throw std::domain_error("interlaced_maxima: delta must be positive");
  if (!(beta > 1.0)) throw std::domain_error("interlaced_maxima: beta must exceed 1");
  const double pole = beta * beta - 1.0 + delta;
  if (!(pole > 0.0)) throw std::domain_error("interlaced_maxima: beta^2 - 1 + delta must be positive");
  return {1.0 + 2.0 / (delta + 1.0), 2.0 + (2.0 - beta) / pole};
}

double equalized_speed(double beta) { return interlaced_maxima(beta, delta_of_beta(beta)).first; }

double closed_form_optimal_beta() {
  const double r6 = std::sqrt(6.0);
  return 1.5 + std::cbrt(513.0 - 114.0 * r6) / 6.0 + std::cbrt(19.0 * (9.0 + 2.0 * r6)) / (2.0 * std::cbrt(9.0));
}

double closed_form_optimal_speed() {
  const double r6 = std::sqrt(6.0);
  const double inner = 4.0 + 3.0 * r6;
  return (10.0 - std::cbrt(19.0 * 19.0) / std::cbrt(2.0 * inner) + std::cbrt(19.0 * inner) / std::cbrt(4.0)) / 6.0;
}

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol,
                                      int max_iterations) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section_minimize: empty bracket");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (b - a > tol && it < max_iterations) {
    ++it;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  ScalarMinimum out;
  out.x = 0.5 * (a + b);
  out.value = f(out.x);
  // Endpoints are never probed by the interior points; check them explicitly.
  for (double end : {lo, hi}) {
    const double fe = f(end);
    if (fe < out.value) out = {end, fe, 0};
  }
  out.iterations = it;
  return out;
}

bool is_unimodal_on_grid(const std::function<double(double)>& f, double lo, double hi, int points) {
  if (points < 3) return true;
  bool rising = false;
  double prev = f(lo);
  for (int i = 1; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    const double y = f(x);
    const double slack = 1e-15 * std::max(1.0, std::abs(prev));
    if (y > prev + slack) {
      rising = true;
    } else if (rising && y < prev - slack) {
      return false;
    }
    prev = y;
  }
  return true;
}

Optimum optimize_beta(SearchBracket bracket) {
  const auto f = [](double beta) { return cycle_ratio(beta); };
  Optimum out;
  out.unimodal = is_unimodal_on_grid(f, bracket.lo, bracket.hi);
  const ScalarMinimum m = golden_section_minimize(f, bracket.lo, bracket.hi, bracket.tol);
  out.beta = m.x;
  out.v = m.value;
  out.achieved_maxima = {m.value};
  out.iterations = m.iterations;
  return out;
}

Optimum optimize_beta_delta(SearchBracket bracket) {
  const auto f = [](double beta) { return equalized_speed(beta); };
  Optimum out;
  out.unimodal = is_unimodal_on_grid(f, bracket.lo, bracket.hi);
  const ScalarMinimum m = golden_section_minimize(f, bracket.lo, bracket.hi, bracket.tol);
  out.beta = m.x;
  out.delta = delta_of_beta(m.x);
  const auto [q13, q15] = interlaced_maxima(m.x, *out.delta);
  out.v = q13;
  out.achieved_maxima = {q13, q15};
  out.iterations = m.iterations;
  return out;
}

}  // namespace hpfire
