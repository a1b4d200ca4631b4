#include "toric/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "toric/error.hpp"
#include "toric/numdiff.hpp"

namespace toric {

namespace {

void require_positive_s(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorKind::domain_violation, "s must be positive, got " + std::to_string(s));
  }
}

void require_n(int n) {
  if (n < 1) throw Error(ErrorKind::invalid_parameters, "n must be >= 1");
}

// d/ds [2 s f'(s)]
double moment_slope(const KahlerPotential& k, double s) { return 2.0 * k.f_prime(s) + 2.0 * s * k.f_second(s); }

constexpr int kMaxBracketSteps = 2000;
// Bracketing stops this many orders of magnitude away from s = t; beyond it
// t(s) is dominated by overflow or underflow in f'.
constexpr double kBracketSpan = 1e100;

constexpr double kInducedSecondStep = 1e-2;
constexpr double kInducedCurvatureStep = 0.2;

}  // namespace

KahlerPotential flat_kahler_potential(int n) {
  require_n(n);
  return {n, [](double s) { return 0.5 * s; }, [](double) { return 0.5; }, [](double) { return 0.0; }};
}

KahlerPotential fubini_study_kahler_potential(int n) {
  require_n(n);
  return {n, [](double s) { return 0.5 * std::log1p(s); }, [](double s) { return 0.5 / (1.0 + s); },
          [](double s) { return -0.5 / ((1.0 + s) * (1.0 + s)); }};
}

std::optional<KahlerPotential> kahler_preset(std::string_view name, int n) {
  if (name == "flat") return flat_kahler_potential(n);
  if (name == "fubini-study") return fubini_study_kahler_potential(n);
  return std::nullopt;
}

double t_of_s(const KahlerPotential& k, double s) {
  require_positive_s(s);
  return 2.0 * s * k.f_prime(s);
}

double s_of_t(const KahlerPotential& k, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::out_of_range, "t must be positive, got " + std::to_string(t));
  }
  const auto residual = [&](double s) { return t_of_s(k, s) - t; };

  double lo = t, hi = t;
  double r_lo = residual(lo), r_hi = r_lo;
  for (int step = 0; r_lo > 0.0; ++step) {
    const double next = 0.5 * lo;
    const double r_next = residual(next);
    if (step >= kMaxBracketSteps || !(next > t / kBracketSpan)) {
      throw Error(ErrorKind::out_of_range, "t = " + std::to_string(t) + " is below the image of t(s)");
    }
    if (r_next > r_lo) throw Error(ErrorKind::not_invertible, "t(s) is not increasing while bracketing");
    hi = lo;
    r_hi = r_lo;
    lo = next;
    r_lo = r_next;
  }
  for (int step = 0; r_hi < 0.0; ++step) {
    const double next = 2.0 * hi;
    if (step >= kMaxBracketSteps || !(next < t * kBracketSpan)) {
      throw Error(ErrorKind::out_of_range, "t = " + std::to_string(t) + " is above the image of t(s)");
    }
    const double r_next = residual(next);
    if (r_next < r_hi) throw Error(ErrorKind::not_invertible, "t(s) is not increasing while bracketing");
    lo = hi;
    r_lo = r_hi;
    hi = next;
    r_hi = r_next;
  }
  if (r_lo == 0.0) return lo;
  if (r_hi == 0.0) return hi;
  if (!(moment_slope(k, lo) > 0.0) || !(moment_slope(k, hi) > 0.0)) {
    throw Error(ErrorKind::not_invertible, "d/ds (2 s f') is not positive on the bracket");
  }

  std::uintmax_t iterations = 200;
  const auto [left, right] = boost::math::tools::toms748_solve(
      residual, lo, hi, r_lo, r_hi, boost::math::tools::eps_tolerance<double>(50), iterations);
  const double s = std::abs(residual(left)) <= std::abs(residual(right)) ? left : right;
  if (!(std::abs(residual(s)) <= 1e-12 * std::max(1.0, std::abs(t)))) {
    throw Error(ErrorKind::not_invertible, "root find did not converge for t = " + std::to_string(t));
  }
  return s;
}

double F_of_t(const KahlerPotential& k, double t) {
  const double s = s_of_t(k, t);
  return t * std::log(s / t) - 2.0 * k.f(s);
}

double calabi_formula(const KahlerPotential& k, double s, const CalabiCurvatureOptions& options) {
  require_positive_s(s);
  const int n = k.n;
  const double x = std::log(s);

  // phi(x) = f(e^x): phi' = s f', phi'' = s f' + s^2 f''.
  const auto phi1 = [&](double y) {
    const double e = std::exp(y);
    return e * k.f_prime(e);
  };
  const auto phi2 = [&](double y) {
    const double e = std::exp(y);
    return e * k.f_prime(e) + e * e * k.f_second(e);
  };
  const auto v = [&](double y) {
    const double d1 = phi1(y), d2 = phi2(y);
    if (!(d1 > 0.0) || !(d2 > 0.0)) {
      throw Error(ErrorKind::nonpositive_derivative,
                  "phi' or phi'' is not positive at s~ = " + std::to_string(y));
    }
    return n * y - (n - 1) * std::log(d1) - std::log(d2);
  };

  const double d1 = phi1(x), d2 = phi2(x);
  if (!(d1 > 0.0) || !(d2 > 0.0)) {
    throw Error(ErrorKind::nonpositive_derivative, "phi' or phi'' is not positive at s = " + std::to_string(s));
  }
  const double scale = std::max(1.0, std::abs(x));
  const double h1 = options.first_step.value_or(numdiff::eps_root(5) * scale);
  const double h2 = options.second_step.value_or(numdiff::eps_root(6) * scale);
  const double v1 = numdiff::richardson_first(v, x, h1);
  const double v2 = numdiff::richardson_second(v, x, h2);
  return (n - 1) * v1 / d1 + v2 / d2;
}

double calabi_scalar_curvature(const KahlerPotential& k, double s, const CalabiCurvatureOptions& options) {
  return 0.5 * calabi_formula(k, s, options);
}

TPotential induced_t_potential(const KahlerPotential& k, Interval domain) {
  if (!(domain.lower >= 0.0) || !(domain.upper > domain.lower)) {
    throw Error(ErrorKind::invalid_parameters, "induced profile needs a nonempty domain in [0, inf)");
  }
  TPotential potential;
  potential.n = k.n;
  potential.domain = domain;
  potential.f_value = [k](double t) { return F_of_t(k, t); };
  potential.f_second = [k, domain](double t) {
    const double room = std::min(t - domain.lower, domain.upper - t);
    const double h = std::min(kInducedSecondStep * std::max(1.0, std::abs(t)), 0.5 * room);
    return numdiff::richardson_second([&](double y) { return F_of_t(k, y); }, t, h);
  };
  return potential;
}

BridgeReport bridge_cross_check(const KahlerPotential& k, const std::vector<double>& s_samples) {
  if (s_samples.empty()) throw Error(ErrorKind::invalid_parameters, "no samples");
  const auto [s_min, s_max] = std::minmax_element(s_samples.begin(), s_samples.end());
  require_positive_s(*s_min);

  // Room for the nested stencils on both sides of the sampled range.
  const double t_lo = t_of_s(k, *s_min / 8.0);
  const double t_hi = std::isfinite(*s_max * 8.0) ? t_of_s(k, *s_max * 8.0) : t_of_s(k, *s_max);
  const TPotential profile = induced_t_potential(k, {t_lo, t_hi});

  BridgeReport report;
  for (double s : s_samples) {
    BridgeSample sample;
    sample.s = s;
    sample.t = t_of_s(k, s);
    sample.calabi = calabi_scalar_curvature(k, s);
    RadialCurvatureOptions options;
    options.path = DerivativePath::finite_difference;
    options.richardson = true;
    options.step = kInducedCurvatureStep * std::max(1.0, sample.t);
    sample.radial = radial_scalar_curvature(profile, sample.t, options);
    sample.discrepancy = std::abs(sample.calabi - sample.radial);
    report.max_discrepancy = std::max(report.max_discrepancy, sample.discrepancy);
    report.samples.push_back(sample);
  }
  return report;
}

}  // namespace toric
