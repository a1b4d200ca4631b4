#pragma once

// Calabi's U(n)-invariant extremal metrics on the blow-up of CP^n at a
// point. The radial profile of an extremal metric with S = A t + B is
//   F''(t) = p t^(n-1) / (p t^n - alpha(t)) - 1/t,
//   alpha(t) = n A t^(n+2) + (n+2) B t^(n+1) + p (C t + D),  p = n(n+1)(n+2),
// and A, B, C, D are fixed by requiring the potential to have Guillemin
// boundary behaviour at t = a and t = b.

#include <limits>

#include <Eigen/Core>

#include "toric/polytope.hpp"
#include "toric/jet.hpp"
#include "toric/radial.hpp"

namespace toric {

struct ExtremalCoefficients {
  int n = 1;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;  // b - a
  double p = 0.0;  // n(n+1)(n+2)
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
  /// Reciprocal condition estimate of the scaled boundary system; NaN when
  /// the coefficients did not come from a linear solve.
  double reciprocal_condition = std::numeric_limits<double>::quiet_NaN();

  /// Scalar curvature S(t) = A t + B of the extremal metric.
  double scalar_curvature(double t) const noexcept { return A * t + B; }
};

/// Coefficients with n, a, b, c, p filled in and A = B = C = D = 0.
ExtremalCoefficients blank_coefficients(int n, double a, double b);

/// Four linear equations for (A, B, C, D): alpha and alpha' at a and b.
struct BoundarySystem {
  Eigen::Matrix4d matrix;
  Eigen::Vector4d rhs;
};

/// Rows: alpha(a), alpha'(a), alpha(b), alpha'(b) as linear forms in
/// (A, B, C, D); rhs: p a^n, (n-1) p a^(n-1), p b^n, (n+1) p b^(n-1).
BoundarySystem boundary_system(int n, double a, double b);

/// Below this reciprocal condition number the scaled system counts as singular.
inline constexpr double kSingularRcond = 1e-15;

/// Solves the boundary system (row-scaled, pivoted LU).
ExtremalCoefficients solve_coefficients(int n, double a, double b);

enum class ClosedFormVariant {
  /// D numerator term b^(n+1) (n a - b (n-2)); agrees with the linear solve.
  corrected,
  /// D numerator term b^(n+1) (n - b (n-2)), as commonly printed.
  as_printed,
};

/// Explicit rational formulas for (A, B, C, D). Raises zero-denominator when
/// the shared denominator vanishes relative to its terms.
ExtremalCoefficients closed_form_coefficients(int n, double a, double b,
                                              ClosedFormVariant variant = ClosedFormVariant::corrected);

/// Explicit n = 2, b = 1 coefficients in terms of a alone.
ExtremalCoefficients cp2_example_coefficients(double a);

struct AlphaValue {
  double value = 0.0;
  double derivative = 0.0;
};

AlphaValue alpha_eval(const ExtremalCoefficients& e, double t);

/// Relative residuals of the four endpoint identities, each scaled by the
/// magnitude of its right-hand side.
struct BoundaryResiduals {
  double alpha_a = 0.0;
  double alpha_prime_a = 0.0;
  double alpha_b = 0.0;
  double alpha_prime_b = 0.0;

  double max() const noexcept;
};

BoundaryResiduals boundary_residuals(const ExtremalCoefficients& e);

/// |p t^n - alpha(t)| at or below this fraction of p t^n is a pole.
inline constexpr double kPoleThreshold = 1e-13;

/// F''(t) on the closed interval [a, b]; raises pole where p t^n = alpha(t)
/// and domain-violation outside [a, b].
double extremal_F_second(const ExtremalCoefficients& e, double t);

/// h''(t) = F''(t) - (b - a) / ((t - a)(b - t)) for a < t < b.
double h_second(const ExtremalCoefficients& e, double t);

/// F'' together with F''' and F''''.
Jet2 extremal_F_second_jet(const ExtremalCoefficients& e, double t);

struct ExtremalMetric {
  MomentPolytope polytope;
  TPotential potential;
  ExtremalCoefficients coefficients;
};

/// Grid size used to confirm p t^n - alpha(t) > 0 on (a, b).
inline constexpr int kPositivityGrid = 1000;

/// Solves for the coefficients and packages polytope and radial profile.
ExtremalMetric build_extremal_metric(int n, double a, double b);

}  // namespace toric
