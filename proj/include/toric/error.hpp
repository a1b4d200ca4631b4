#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toric {

enum class ErrorKind {
  invalid_parameters,
  dimension_mismatch,
  empty_region,
  non_interior_point,
  degenerate_metric,
  domain_violation,
  stencil_exits_domain,
  singular_hessian,
  degenerate_point_set,
  singular_system,
  zero_denominator,
  pole,
  positivity_violation,
  not_invertible,
  out_of_range,
  nonpositive_derivative,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace toric
