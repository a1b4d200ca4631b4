#pragma once

// Central finite differences for smooth scalar functions of one variable,
// with one optional level of Richardson extrapolation.
//
// The plain stencils have O(h^2) truncation error; one Richardson level
// combines steps h and h/2 to cancel the h^2 term, giving O(h^4).

#include <cmath>
#include <limits>

namespace toric::numdiff {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// eps^(1/k), the usual balance point between truncation and rounding.
inline double eps_root(int k) { return std::pow(kEps, 1.0 / k); }

template <class F>
double central_first(const F& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <class F>
double central_second(const F& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

template <class F>
double richardson_first(const F& f, double x, double h) {
  const double coarse = central_first(f, x, h);
  const double fine = central_first(f, x, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

template <class F>
double richardson_second(const F& f, double x, double h) {
  const double coarse = central_second(f, x, h);
  const double fine = central_second(f, x, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

template <class F>
double second_derivative(const F& f, double x, double h, bool richardson) {
  return richardson ? richardson_second(f, x, h) : central_second(f, x, h);
}

template <class F>
double first_derivative(const F& f, double x, double h, bool richardson) {
  return richardson ? richardson_first(f, x, h) : central_first(f, x, h);
}

}  // namespace toric::numdiff
