#include "toric/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "toric/error.hpp"
#include "toric/jet.hpp"
#include "toric/numdiff.hpp"

namespace toric {

namespace {

double sum_checked(const Point& x) {
  if (x.size() < 1) throw Error(ErrorKind::dimension_mismatch, "empty point");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) {
      throw Error(ErrorKind::non_interior_point,
                  "coordinate " + std::to_string(i) + " is not positive: " + std::to_string(x[i]));
    }
  }
  return x.sum();
}

void require_nondegenerate(double one_plus_tf, double t) {
  if (!(one_plus_tf > kDegenerateThreshold)) {
    throw Error(ErrorKind::degenerate_metric,
                "1 + t F'' = " + std::to_string(one_plus_tf) + " at t = " + std::to_string(t));
  }
}

// u = t^(n+1) F'' / (1 + t F''), written as t^n (tF'') / (1 + tF'').
template <class T>
T radial_u(int n, T t, T f2) {
  const T tf = t * f2;
  return ipow(t, n) * tf / (T(1.0) + tf);
}

}  // namespace

TPotential flat_t_potential(int n, Interval domain) {
  if (n < 1) throw Error(ErrorKind::invalid_parameters, "n must be >= 1");
  if (!(domain.lower >= 0.0) || !(domain.upper > domain.lower)) {
    throw Error(ErrorKind::invalid_parameters, "domain must be a nonempty subinterval of [0, inf)");
  }
  const auto zero = [](double) { return 0.0; };
  // F(t) = -t is the profile produced by the Kahler potential s/2.
  return {n, domain, zero, zero, zero, [](double t) { return -t; }};
}

TPotential guillemin_t_potential(int n) {
  if (n < 1) throw Error(ErrorKind::invalid_parameters, "n must be >= 1");
  return {n,
          {0.0, 1.0},
          [](double t) { return 1.0 / (1.0 - t); },
          [](double t) { return 1.0 / ((1.0 - t) * (1.0 - t)); },
          [](double t) { return 2.0 / ((1.0 - t) * (1.0 - t) * (1.0 - t)); },
          [](double t) { return (1.0 - t) * std::log1p(-t); }};
}

Eigen::MatrixXd radial_hessian(const Point& x, double f_second) {
  sum_checked(x);
  const Eigen::Index n = x.size();
  Eigen::MatrixXd g = Eigen::MatrixXd::Constant(n, n, 0.5 * f_second);
  for (Eigen::Index i = 0; i < n; ++i) g(i, i) += 0.5 / x[i];
  return g;
}

Eigen::MatrixXd radial_hessian_inverse(const Point& x, double f_second) {
  const double t = sum_checked(x);
  const double one_plus_tf = 1.0 + t * f_second;
  require_nondegenerate(one_plus_tf, t);
  Eigen::MatrixXd inv = (-2.0 * f_second / one_plus_tf) * (x * x.transpose());
  inv.diagonal() += 2.0 * x;
  return inv;
}

double radial_scalar_curvature(const TPotential& potential, double t,
                               const RadialCurvatureOptions& options) {
  const int n = potential.n;
  if (!potential.domain.contains(t)) {
    throw Error(ErrorKind::domain_violation, "t = " + std::to_string(t) + " outside the profile domain");
  }

  bool analytic = false;
  switch (options.path) {
    case DerivativePath::automatic: analytic = potential.has_analytic_derivatives(); break;
    case DerivativePath::analytic:
      if (!potential.has_analytic_derivatives()) {
        throw Error(ErrorKind::invalid_parameters, "analytic path needs F''' and F''''");
      }
      analytic = true;
      break;
    case DerivativePath::finite_difference: analytic = false; break;
  }

  const double prefactor = std::pow(t, 1 - n);

  if (analytic) {
    const Jet2 f2{potential.f_second(t), potential.f_third(t), potential.f_fourth(t)};
    require_nondegenerate(1.0 + t * f2.v, t);
    return prefactor * radial_u(n, Jet2::variable(t), f2).d2;
  }

  const auto u = [&](double s) {
    const double f2 = potential.f_second(s);
    require_nondegenerate(1.0 + s * f2, s);
    return radial_u(n, s, f2);
  };
  const double distance = std::min(t - potential.domain.lower, potential.domain.upper - t);
  double h = options.step.value_or(numdiff::eps_root(4) * std::max(1.0, std::abs(t)));
  if (!(h > 0.0)) throw Error(ErrorKind::invalid_parameters, "finite-difference step must be positive");
  h = std::min(h, 0.5 * distance);
  return prefactor * numdiff::second_derivative(u, t, h, options.richardson);
}

ValidityResult validity_check(const TPotential& potential, int samples) {
  if (samples < 1) throw Error(ErrorKind::invalid_parameters, "samples must be >= 1");
  const Interval dom = potential.domain;
  if (!std::isfinite(dom.lower) || !std::isfinite(dom.upper)) {
    throw Error(ErrorKind::invalid_parameters, "validity grid needs a bounded domain");
  }

  ValidityResult result;
  result.min_value = std::numeric_limits<double>::infinity();
  bool finite = true;
  for (int k = 1; k <= samples; ++k) {
    const double t = dom.lower + dom.width() * k / (samples + 1.0);
    const double value = 1.0 + t * potential.f_second(t);
    if (std::isnan(value)) {
      finite = false;
      result.argmin = t;
      continue;
    }
    if (value < result.min_value) {
      result.min_value = value;
      if (finite) result.argmin = t;
    }
  }
  if (!finite) result.min_value = std::numeric_limits<double>::quiet_NaN();
  result.pass = finite && result.min_value > 0.0;
  return result;
}

}  // namespace toric
