#pragma once

// U(n)-invariant toric metrics on the positive orthant. The symplectic
// potential is g(x) = 1/2 (sum x_i ln x_i + F(t)) with t = sum x_i; all
// curvature quantities depend on the profile F only through F''.

#include <functional>
#include <optional>

#include <Eigen/Core>

#include "toric/polytope.hpp"

namespace toric {

/// Open interval (lower, upper).
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double t) const noexcept { return t > lower && t < upper; }
  double width() const noexcept { return upper - lower; }
};

using ScalarFunction = std::function<double(double)>;

/// Radial profile of a symplectic potential, stored through F''. The
/// higher derivatives and F itself are optional.
struct TPotential {
  int n = 1;
  Interval domain;
  ScalarFunction f_second;
  ScalarFunction f_third;
  ScalarFunction f_fourth;
  ScalarFunction f_value;

  bool has_analytic_derivatives() const noexcept { return f_third && f_fourth; }
};

/// F'' = 0 on the given domain: the flat metric of C^n.
TPotential flat_t_potential(int n, Interval domain);

/// F(t) = (1-t) ln(1-t) on (0,1): the Fubini-Study metric on CP^n in
/// Guillemin form, with constant scalar curvature n(n+1).
TPotential guillemin_t_potential(int n);

/// 1 + t F''(t) at or below this is a degenerate metric.
inline constexpr double kDegenerateThreshold = 1e-14;

/// G_ij = 1/2 (delta_ij / x_i + F''), the Hessian of the radial potential.
Eigen::MatrixXd radial_hessian(const Point& x, double f_second);

/// G^{-1} = 2 (diag(x) - F'' x x^T / (1 + t F'')), the Sherman-Morrison
/// inverse of radial_hessian.
Eigen::MatrixXd radial_hessian_inverse(const Point& x, double f_second);

enum class DerivativePath {
  automatic,          // analytic when F''' and F'''' exist, else finite differences
  analytic,
  finite_difference,
};

struct RadialCurvatureOptions {
  DerivativePath path = DerivativePath::automatic;
  /// Finite-difference step for u''. Default eps^(1/4) max(1, |t|).
  std::optional<double> step;
  /// Combine steps h and h/2; needed for 1e-6 accuracy when t << 1.
  bool richardson = true;
};

/// S(t) = t^(1-n) u''(t) with u = t^(n+1) F'' / (1 + t F'').
double radial_scalar_curvature(const TPotential& potential, double t,
                               const RadialCurvatureOptions& options = {});

struct ValidityResult {
  bool pass = false;
  double min_value = 0.0;  // smallest 1 + t F''(t) on the grid
  double argmin = 0.0;
};

/// Samples 1 + t F''(t) at `samples` equally spaced interior points of the
/// domain (endpoints excluded). Never throws on a failing profile.
ValidityResult validity_check(const TPotential& potential, int samples);

}  // namespace toric
