#pragma once

// Scalar curvature of a toric Kahler metric from its symplectic potential:
//   S = -1/2 sum_{i,j} d^2 G^{ij} / dx_i dx_j,
// where G^{ij} is the inverse Hessian of the potential. Evaluated by
// finite differences of the inverted Hessian.

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "toric/polytope.hpp"
#include "toric/radial.hpp"

namespace toric {

using HessianOracle = std::function<Eigen::MatrixXd(const Point&)>;
using ValueOracle = std::function<double(const Point&)>;

/// A symplectic potential on the interior of a polytope, seen through its
/// Hessian.
class SymplecticPotential {
 public:
  SymplecticPotential(MomentPolytope polytope, HessianOracle hessian);

  /// Analytic Hessian of 1/2 (sum x_i ln x_i + F(t)).
  static SymplecticPotential radial(MomentPolytope polytope, TPotential profile);

  /// Finite-difference Hessian of a value oracle with fixed step.
  static SymplecticPotential from_values(MomentPolytope polytope, ValueOracle value, double step);

  const MomentPolytope& polytope() const noexcept { return polytope_; }
  Eigen::MatrixXd hessian(const Point& x) const { return hessian_(x); }

 private:
  MomentPolytope polytope_;
  HessianOracle hessian_;
};

/// Central second differences on the diagonal, 4-point cross stencil off
/// it, symmetrized. No domain check.
Eigen::MatrixXd numeric_hessian(const ValueOracle& value, const Point& x, double h);

/// As above, but raises stencil-exits-domain unless every stencil point is
/// interior to `domain`.
Eigen::MatrixXd numeric_hessian(const ValueOracle& value, const Point& x, double h,
                                const MomentPolytope& domain);

/// Largest dimension accepted by the dense inversion in abreu_scalar_curvature.
inline constexpr int kMaxAbreuDimension = 16;

inline constexpr double kMaxAbreuStep = 1e-3;

/// Outer stencil step at x: d / 3 capped at kMaxAbreuStep * L, where
/// d is the smallest facet value at x and L the widest side of the bounding box. Meant for use with one Richardson level; the
/// G^{-1} entries are smooth up to the boundary, so the step is limited by
/// truncation error rather than by rounding.
double default_abreu_step(const MomentPolytope& polytope, const Point& x);

/// Abreu's formula at x with stencil step h. Requires every facet value at x
/// to be >= 3h. With `richardson`, steps h and h/2 are combined.
double abreu_scalar_curvature(const SymplecticPotential& potential, const Point& x, double h,
                              bool richardson = false);

/// Abreu's formula with default_abreu_step and Richardson extrapolation.
double abreu_scalar_curvature(const SymplecticPotential& potential, const Point& x);

struct ScalarCurvatureSample {
  Point x;
  double S = 0.0;
};

/// Least-squares affine fit S(x) ~ <slope, x> + intercept over samples.
struct ExtremalityFit {
  Eigen::VectorXd slope;
  double intercept = 0.0;
  double max_residual = 0.0;
  std::vector<ScalarCurvatureSample> samples;
};

/// Fits an affine function to Abreu's scalar curvature at the given points.
/// Needs at least n+1 affinely independent points.
ExtremalityFit extremality_residual(const SymplecticPotential& potential,
                                    const std::vector<Point>& points);

/// Same, from curvature values already computed.
ExtremalityFit fit_affine(std::vector<ScalarCurvatureSample> samples);

}  // namespace toric
