#pragma once

#include <functional>
#include <vector>

namespace fuzzy::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  int intervals = 0;
  bool converged = false;
};

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-15;
  int max_intervals = 4000;
};

using Integrand = std::function<double(double)>;

/// 15-point Kronrod rule with the embedded 7-point Gauss estimate on [a, b].
Result gauss_kronrod15(const Integrand& f, double a, double b);

/// Globally adaptive bisection (largest error first) starting from the
/// partition `edges` (strictly increasing, at least two points, all finite).
/// Stops once the summed error is below max(abs_tol, rel_tol * |value|).
Result adaptive(const Integrand& f, const std::vector<double>& edges, const Options& opt = {});

/// Integral over [a, inf) after the map t = a + s / (1 - s), s in [0, 1).
/// `edges` optionally adds interior split points (> a) in t.
Result adaptive_to_infinity(const Integrand& f, double a, std::vector<double> edges,
                            const Options& opt = {});

}  // namespace fuzzy::quad
