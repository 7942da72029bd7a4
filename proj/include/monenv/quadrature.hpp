// Adaptive 1-D quadrature with a certified error estimate, backed by the
// Gauss-Kronrod 15-point rule from Boost.Math.
#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace monenv {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;  ///< error estimate reported by the rule
  bool converged = false;  ///< estimate met the requested tolerance
};

/// Integrates f over [a, b]. `rel_tol` bounds the relative error estimate;
/// max_depth 13 allows ~2^13 panel splits, i.e. on the order of 1e4
/// subdivisions.
template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                     int max_depth = 13) {
  QuadResult r;
  double error = 0.0;
  r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, rel_tol, &error);
  r.abs_error = error;
  r.converged =
      error <= rel_tol * std::max(std::abs(r.value), 1e-300) * 10.0 ||
      error <= 1e-14 * std::abs(b - a);
  return r;
}

}  // namespace monenv
