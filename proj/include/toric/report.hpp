#pragma once

// The cross-check battery behind `verify`: endpoint identities, the
// closed-form coefficients, radial vs general curvature at sampled interior
// points, profile validity and endpoint behaviour of h''.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "toric/calabi.hpp"
#include "toric/radial.hpp"

namespace toric {

struct VerifyConfig {
  int n = 2;
  double a = 0.5;
  double b = 1.0;
  int points = 100;
  std::uint64_t seed = 7;
  double tolerance_hard = 1e-9;
  double tolerance_soft = 1e-5;
  /// Facet-value margin for sampled points; <= 0 selects (b - a) / 50.
  double margin = 0.0;
  /// Outer Abreu stencil step; <= 0 selects default_abreu_step per point.
  double step = 0.0;
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool hard = true;
  bool pass = false;
};

struct VerificationReport {
  VerifyConfig inputs;
  double margin = 0.0;
  ExtremalCoefficients coefficients;
  BoundaryResiduals boundary;
  double closed_form_delta = 0.0;
  double as_printed_closed_form_delta = 0.0;
  Eigen::VectorXd fit_slope;
  double fit_intercept = 0.0;
  double extremality_residual = 0.0;     // relative to max |S|
  double radial_general_discrepancy = 0.0;  // max relative |S_abreu - S_radial|
  double general_expected_discrepancy = 0.0;  // max relative |S_abreu - (A t + B)|
  double radial_expected_discrepancy = 0.0;   // max relative |S_radial - (A t + B)|
  ValidityResult validity;
  double h_second_near_a = 0.0;
  double h_second_near_b = 0.0;
  double endpoint_halving_change = 0.0;
  std::vector<CheckResult> checks;
  std::vector<std::string> warnings;

  /// True when every hard check passes; soft failures become warnings.
  bool pass() const;
};

/// h'' is probed at a + d and b - d with d = kEndpointOffset * min(1, a, b - a);
/// halving d may change it by at most kEndpointStability * max(1, |h''|).
inline constexpr double kEndpointOffset = 1e-6;
inline constexpr double kEndpointStability = 1e-4;

/// Largest componentwise relative difference between two coefficient sets.
double coefficient_delta(const ExtremalCoefficients& x, const ExtremalCoefficients& reference);

VerificationReport run_verification(const VerifyConfig& config);

}  // namespace toric
