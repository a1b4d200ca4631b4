#pragma once

// The Kahler side of a U(n)-invariant metric on C^n \ {0}: a Kahler
// potential f(s), s = |z|^2, related to the symplectic profile by
//   t = 2 s f'(s),   F(t) = t ln(s(t) / t) - 2 f(s(t)),
// and Calabi's formula for the scalar curvature in terms of f.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toric/radial.hpp"

namespace toric {

/// f and its first two derivatives with respect to s.
struct KahlerPotential {
  int n = 1;
  ScalarFunction f;
  ScalarFunction f_prime;
  ScalarFunction f_second;
};

/// f(s) = s / 2, the flat metric.
KahlerPotential flat_kahler_potential(int n);
/// f(s) = 1/2 ln(1 + s), the Fubini-Study metric on CP^n restricted to C^n \ {0}.
KahlerPotential fubini_study_kahler_potential(int n);

/// `flat` or `fubini-study`; nullopt for any other name.
std::optional<KahlerPotential> kahler_preset(std::string_view name, int n);

double t_of_s(const KahlerPotential& k, double s);

/// Inverts t_of_s by geometric bracketing from s = t and TOMS 748.
double s_of_t(const KahlerPotential& k, double t);

double F_of_t(const KahlerPotential& k, double t);

struct CalabiCurvatureOptions {
  /// Steps in s~ = ln s for v' and v''; defaults scale with max(1, |s~|).
  std::optional<double> first_step;
  std::optional<double> second_step;
};

/// Calabi's formula S = (n-1) v'/phi' + v''/phi'' with
/// v = n s~ - (n-1) ln phi' - ln phi'' and phi(s~) = f(e^s~), all primes in
/// s~. This is the Riemannian scalar curvature.
double calabi_formula(const KahlerPotential& k, double s, const CalabiCurvatureOptions& options = {});

/// Calabi's formula rescaled by 1/2 to the normalization of Abreu's formula
/// and radial_scalar_curvature.
double calabi_scalar_curvature(const KahlerPotential& k, double s, const CalabiCurvatureOptions& options = {});

/// Profile induced on the symplectic side: F from F_of_t and F'' by
/// Richardson-extrapolated second differences of it (step 1e-2 max(1, t)).
TPotential induced_t_potential(const KahlerPotential& k, Interval domain);

struct BridgeSample {
  double s = 0.0;
  double t = 0.0;
  double calabi = 0.0;
  double radial = 0.0;
  double discrepancy = 0.0;
};

struct BridgeReport {
  std::vector<BridgeSample> samples;
  double max_discrepancy = 0.0;
};

/// Compares calabi_scalar_curvature with radial_scalar_curvature of the
/// induced profile at each s. The radial side differentiates u twice more,
/// so it uses a wide Richardson step (0.2 max(1, t)) to keep the nested
/// rounding noise below 1e-8.
BridgeReport bridge_cross_check(const KahlerPotential& k, const std::vector<double>& s_samples);

}  // namespace toric
