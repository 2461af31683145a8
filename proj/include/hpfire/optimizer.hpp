#pragma once

// Closed-form consumption ratios of the interlacing families and the scalar
// searches that minimise them. All arithmetic is double precision.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace hpfire {

/// Cycle ratio of the unshifted interlacing, ((beta-2) + 2 beta^2) / ((beta-2) + beta^2).
/// Throws std::domain_error for beta <= 2.
double cycle_ratio(double beta);

/// Shift that equalises the two local maxima of the shifted interlacing:
/// (beta - beta^2 + sqrt(beta^4 - 2 beta^3 + 5 beta^2 + 4 beta - 12)) / 2.
/// Throws std::domain_error when the discriminant is negative.
double delta_of_beta(double beta);

/// The two local maxima per cycle of the shifted interlacing:
/// Q13 = 1 + 2/(delta + 1) and Q15 = 2 + (2 - beta)/(beta^2 - 1 + delta).
std::pair<double, double> interlaced_maxima(double beta, double delta);

/// Minimal achievable speed of the shifted family at `beta` (both maxima equal).
double equalized_speed(double beta);

/// Radical closed forms of the optimal beta and speed of the shifted family.
double closed_form_optimal_beta();
double closed_form_optimal_speed();

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search on [lo, hi]; stops once the bracket is narrower than `tol`.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double tol = 1e-9, int max_iterations = 500);

/// True when samples of f on an evenly spaced grid of `points` points over
/// [lo, hi] decrease and then increase (plateaus allowed).
bool is_unimodal_on_grid(const std::function<double(double)>& f, double lo, double hi, int points = 1000);

struct Optimum {
  double beta = 0.0;
  std::optional<double> delta;  // absent for the unshifted family
  double v = 0.0;
  std::vector<double> achieved_maxima;
  int iterations = 0;
  bool unimodal = false;  // pre-scan verdict on the search bracket
};

struct SearchBracket {
  double lo = 2.5;
  double hi = 10.0;
  double tol = 1e-9;
};

/// Minimise cycle_ratio over the bracket (optimum beta = 4, v = 17/9).
Optimum optimize_beta(SearchBracket bracket = {});

/// Minimise Q13(delta_of_beta(beta)) over the bracket
/// (beta ≈ 4.06887, delta ≈ 1.2802, v ≈ 1.8771).
Optimum optimize_beta_delta(SearchBracket bracket = {});

}  // namespace hpfire
