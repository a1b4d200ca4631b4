#include "toric/calabi.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/LU>

#include "toric/error.hpp"
#include "toric/jet.hpp"

namespace toric {

namespace {

using Poly = std::vector<double>;  // ascending coefficients

void require_parameters(int n, double a, double b) {
  if (n < 1) throw Error(ErrorKind::invalid_parameters, "n must be >= 1");
  if (!(a > 0.0) || !(a < b) || !std::isfinite(b)) {
    throw Error(ErrorKind::invalid_parameters, "require 0 < a < b");
  }
}

template <class T>
T horner(const Poly& poly, T t) {
  if (poly.empty()) return T(0.0);
  T acc(poly.back());
  for (auto k = poly.size() - 1; k-- > 0;) acc = acc * t + T(poly[k]);
  return acc;
}

double magnitude_at(const Poly& poly, double t) {
  double total = 0.0, power = 1.0;
  for (double c : poly) {
    total += std::abs(c) * power;
    power *= std::abs(t);
  }
  return total;
}

// Synthetic division by (t - root); returns the quotient and stores the remainder.
Poly deflate(const Poly& poly, double root, double& remainder) {
  if (poly.empty()) {
    remainder = 0.0;
    return {};
  }
  Poly quotient(poly.size() - 1);
  double carry = poly.back();
  for (auto k = poly.size() - 1; k-- > 0;) {
    quotient[k] = carry;
    carry = poly[k] + root * carry;
  }
  remainder = carry;
  return quotient;
}

// p t^n - alpha(t) = (t - a)(b - t) r(t), and
// p t^(n-1) - c r(t) = (t - a)(b - t) w(t), when the endpoint identities hold.
// Then F'' = p t^(n-1) / ((t-a)(b-t) r) - 1/t and h'' = w / r - 1/t, both
// free of the cancellation the raw formulas suffer near the endpoints.
struct Factorization {
  Poly q;
  Poly r;
  Poly w;
  bool valid = false;
};

constexpr double kDeflationTolerance = 1e-9;

Poly alpha_poly(const ExtremalCoefficients& e) {
  const auto n = static_cast<std::size_t>(e.n);
  Poly alpha(n + 3, 0.0);
  alpha[0] = e.p * e.D;
  alpha[1] += e.p * e.C;
  alpha[n + 1] += (e.n + 2) * e.B;
  alpha[n + 2] += e.n * e.A;
  return alpha;
}

// `terms` holds the absolute size of each coefficient's contributions, so the
// remainder test is meaningful even when `poly` itself cancels to ~0.
bool divides_by_endpoints(const Poly& poly, const Poly& terms, double a, double b, Poly& quotient) {
  double rem_a = 0.0, rem_b = 0.0;
  const Poly once = deflate(poly, a, rem_a);
  const Poly twice = deflate(once, b, rem_b);
  // once(b) = poly(b) / (b - a)
  const bool ok = std::abs(rem_a) <= kDeflationTolerance * std::max(magnitude_at(terms, a), 1e-300) &&
                  std::abs(rem_b) * (b - a) <= kDeflationTolerance * std::max(magnitude_at(terms, b), 1e-300);
  quotient.resize(twice.size());
  // (t - a)(b - t) = -(t - a)(t - b)
  std::transform(twice.begin(), twice.end(), quotient.begin(), [](double v) { return -v; });
  return ok;
}

Factorization factor(const ExtremalCoefficients& e) {
  const auto n = static_cast<std::size_t>(e.n);
  Factorization f;
  const Poly alpha = alpha_poly(e);
  f.q.resize(alpha.size());
  Poly terms(alpha.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    f.q[k] = -alpha[k];
    terms[k] = std::abs(alpha[k]);
  }
  f.q[n] += e.p;
  terms[n] += e.p;
  if (!divides_by_endpoints(f.q, terms, e.a, e.b, f.r)) return f;

  Poly numerator(f.r.size()), numerator_terms(f.r.size());
  for (std::size_t k = 0; k < f.r.size(); ++k) {
    numerator[k] = -e.c * f.r[k];
    numerator_terms[k] = std::abs(numerator[k]);
  }
  numerator[n - 1] += e.p;
  numerator_terms[n - 1] += e.p;
  f.valid = divides_by_endpoints(numerator, numerator_terms, e.a, e.b, f.w);
  return f;
}

template <class T>
T f_second_factored(const ExtremalCoefficients& e, const Factorization& f, T t) {
  return e.p * ipow(t, e.n - 1) / ((t - T(e.a)) * (T(e.b) - t) * horner(f.r, t)) - T(1.0) / t;
}

template <class T>
T f_second_direct(const ExtremalCoefficients& e, const Factorization& f, T t) {
  return e.p * ipow(t, e.n - 1) / horner(f.q, t) - T(1.0) / t;
}

// Value of p t^n - alpha(t), preferring the factored form.
double pole_denominator(const ExtremalCoefficients& e, const Factorization& f, double t) {
  return f.valid ? (t - e.a) * (e.b - t) * horner(f.r, t) : horner(f.q, t);
}

void check_pole_and_domain(const ExtremalCoefficients& e, const Factorization& f, double t) {
  if (!(t >= e.a && t <= e.b)) {
    throw Error(ErrorKind::domain_violation,
                "t = " + std::to_string(t) + " outside [" + std::to_string(e.a) + ", " + std::to_string(e.b) + "]");
  }
  const double scale = e.p * std::pow(t, e.n);
  if (std::abs(pole_denominator(e, f, t)) <= kPoleThreshold * scale) {
    throw Error(ErrorKind::pole, "p t^n - alpha(t) vanishes at t = " + std::to_string(t));
  }
  if (t == e.a || t == e.b) throw Error(ErrorKind::domain_violation, "t must lie strictly inside (a, b)");
}

double relative(double residual, double scale) { return std::abs(residual) / std::max(std::abs(scale), 1e-300); }

}  // namespace

ExtremalCoefficients blank_coefficients(int n, double a, double b) {
  require_parameters(n, a, b);
  ExtremalCoefficients e;
  e.n = n;
  e.a = a;
  e.b = b;
  e.c = b - a;
  e.p = static_cast<double>(n) * (n + 1) * (n + 2);
  return e;
}

BoundarySystem boundary_system(int n, double a, double b) {
  require_parameters(n, a, b);
  const double p = static_cast<double>(n) * (n + 1) * (n + 2);
  BoundarySystem sys;
  int row = 0;
  for (const double t : {a, b}) {
    sys.matrix.row(row) << n * std::pow(t, n + 2), (n + 2) * std::pow(t, n + 1), p * t, p;
    sys.rhs[row] = p * std::pow(t, n);
    ++row;
    sys.matrix.row(row) << n * (n + 2) * std::pow(t, n + 1), (n + 1) * (n + 2) * std::pow(t, n), p, 0.0;
    ++row;
  }
  sys.rhs[1] = (n - 1) * p * std::pow(a, n - 1);
  sys.rhs[3] = (n + 1) * p * std::pow(b, n - 1);
  return sys;
}

ExtremalCoefficients solve_coefficients(int n, double a, double b) {
  BoundarySystem sys = boundary_system(n, a, b);
  // Columns are measured in units of b, so (A, B, C, D) become the
  // coefficients of the problem rescaled to b = 1.
  const Eigen::Vector4d column_scale(std::pow(b, -(n + 2)), std::pow(b, -(n + 1)), 1.0 / b, 1.0);
  sys.matrix = sys.matrix * column_scale.asDiagonal();
  for (int i = 0; i < 4; ++i) {
    const double scale = sys.matrix.row(i).cwiseAbs().maxCoeff();
    sys.matrix.row(i) /= scale;
    sys.rhs[i] /= scale;
  }
  const Eigen::PartialPivLU<Eigen::Matrix4d> lu(sys.matrix);
  const double rcond = lu.rcond();
  if (!(rcond > kSingularRcond)) {
    throw Error(ErrorKind::singular_system,
                "boundary system is singular (condition estimate " + std::to_string(1.0 / rcond) + ")");
  }
  const Eigen::Vector4d x = column_scale.asDiagonal() * lu.solve(sys.rhs);

  ExtremalCoefficients e = blank_coefficients(n, a, b);
  e.A = x[0];
  e.B = x[1];
  e.C = x[2];
  e.D = x[3];
  e.reciprocal_condition = rcond;
  return e;
}

ExtremalCoefficients closed_form_coefficients(int n, double a, double b, ClosedFormVariant variant) {
  ExtremalCoefficients e = blank_coefficients(n, a, b);
  const double nn = n;
  const double ab = a * b;
  const double abn1 = std::pow(ab, n - 1);
  const double abn = std::pow(ab, n);

  const double den_terms[] = {abn * 2.0 * nn * (nn + 2) * ab, -abn * (a * a + b * b) * (nn + 1) * (nn + 1),
                              std::pow(a, 2 * (n + 1)), std::pow(b, 2 * (n + 1))};
  double den = 0.0, den_scale = 0.0;
  for (double term : den_terms) {
    den += term;
    den_scale += std::abs(term);
  }
  if (std::abs(den) <= 1e-13 * den_scale) {
    throw Error(ErrorKind::zero_denominator, "closed-form denominator vanishes");
  }

  e.A = (nn + 1) * (nn + 2) *
        (abn1 * (nn * a * a * (nn + 1) + nn * b * b * (nn - 1) - 2 * ab * (nn * nn - 1)) - 2 * std::pow(a, 2 * n)) /
        den;
  e.B = nn * (nn + 1) *
        (abn1 * (a * a * (nn * b * (nn + 2) - a * (nn + 1) * (nn + 1)) +
                 b * b * (b * (1 - nn * nn) + a * (nn * nn - 4))) +
         3 * std::pow(a, 2 * n + 1) + std::pow(b, 2 * n + 1)) /
        den;
  e.C = abn1 *
        ((nn + 1) * (std::pow(a, n + 3) - a * std::pow(b, n + 2) - 3 * b * std::pow(a, n + 2)) +
         ((nn - 1) * std::pow(b, n + 3) + 2 * (nn + 2) * b * b * std::pow(a, n + 1))) /
        den;
  const double lead = variant == ClosedFormVariant::corrected ? nn * a - b * (nn - 2) : nn - b * (nn - 2);
  e.D = abn *
        (std::pow(b, n + 1) * lead - 2 * std::pow(a, n) * b * b * (nn + 1) - nn * std::pow(a, n + 1) * (a - 3 * b)) /
        den;
  return e;
}

ExtremalCoefficients cp2_example_coefficients(double a) {
  ExtremalCoefficients e = blank_coefficients(2, a, 1.0);
  const double den = a * a * a + 3 * a * a - 3 * a - 1;
  if (den == 0.0) throw Error(ErrorKind::zero_denominator, "a^3 + 3a^2 - 3a - 1 = 0");
  e.A = -24 * a / den;
  e.B = 6 * (3 * a * a - 1) / den;
  e.C = (3 * a * a - 1) * a / den;
  e.D = -2 * a * a * a / den;
  return e;
}

AlphaValue alpha_eval(const ExtremalCoefficients& e, double t) {
  // Horner for value and derivative together.
  const Poly alpha = alpha_poly(e);
  double value = alpha.back();
  double derivative = 0.0;
  for (auto k = alpha.size() - 1; k-- > 0;) {
    derivative = derivative * t + value;
    value = value * t + alpha[k];
  }
  return {value, derivative};
}

double BoundaryResiduals::max() const noexcept {
  return std::max({alpha_a, alpha_prime_a, alpha_b, alpha_prime_b});
}

BoundaryResiduals boundary_residuals(const ExtremalCoefficients& e) {
  const int n = e.n;
  const AlphaValue at_a = alpha_eval(e, e.a);
  const AlphaValue at_b = alpha_eval(e, e.b);
  const double pa = e.p * std::pow(e.a, n), pb = e.p * std::pow(e.b, n);
  const double dpa = (n - 1) * e.p * std::pow(e.a, n - 1), dpb = (n + 1) * e.p * std::pow(e.b, n - 1);
  // For n = 1 the target of alpha'(a) is zero; scale by p a^(n-1) instead.
  return {relative(at_a.value - pa, pa), relative(at_a.derivative - dpa, std::max(std::abs(dpa), e.p * std::pow(e.a, n - 1))),
          relative(at_b.value - pb, pb), relative(at_b.derivative - dpb, dpb)};
}

double extremal_F_second(const ExtremalCoefficients& e, double t) {
  const Factorization f = factor(e);
  check_pole_and_domain(e, f, t);
  return f.valid ? f_second_factored(e, f, t) : f_second_direct(e, f, t);
}

Jet2 extremal_F_second_jet(const ExtremalCoefficients& e, double t) {
  const Factorization f = factor(e);
  check_pole_and_domain(e, f, t);
  const Jet2 x = Jet2::variable(t);
  return f.valid ? f_second_factored(e, f, x) : f_second_direct(e, f, x);
}

double h_second(const ExtremalCoefficients& e, double t) {
  if (!(t > e.a && t < e.b)) {
    throw Error(ErrorKind::domain_violation, "h'' needs a < t < b, got t = " + std::to_string(t));
  }
  const Factorization f = factor(e);
  if (f.valid) return horner(f.w, t) / horner(f.r, t) - 1.0 / t;
  return extremal_F_second(e, t) - e.c / ((t - e.a) * (e.b - t));
}

ExtremalMetric build_extremal_metric(int n, double a, double b) {
  ExtremalCoefficients e = solve_coefficients(n, a, b);
  const Factorization f = factor(e);
  if (!f.valid) {
    throw Error(ErrorKind::singular_system, "solved coefficients do not satisfy the endpoint identities");
  }
  for (int k = 1; k <= kPositivityGrid; ++k) {
    const double t = a + (b - a) * k / (kPositivityGrid + 1.0);
    if (!(horner(f.r, t) > 0.0)) {
      throw Error(ErrorKind::positivity_violation, "p t^n - alpha(t) <= 0 at t = " + std::to_string(t));
    }
  }

  TPotential potential;
  potential.n = n;
  potential.domain = {a, b};
  potential.f_second = [e, f](double t) { return f_second_factored(e, f, t); };
  potential.f_third = [e, f](double t) { return f_second_factored(e, f, Jet2::variable(t)).d1; };
  potential.f_fourth = [e, f](double t) { return f_second_factored(e, f, Jet2::variable(t)).d2; };
  return {build_blowup_polytope(n, a, b), std::move(potential), e};
}

}  // namespace toric
