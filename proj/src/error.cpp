#include "toric/error.hpp"

namespace toric {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_parameters: return "invalid-parameters";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::empty_region: return "empty-region";
    case ErrorKind::non_interior_point: return "non-interior-point";
    case ErrorKind::degenerate_metric: return "degenerate-metric";
    case ErrorKind::domain_violation: return "domain-violation";
    case ErrorKind::stencil_exits_domain: return "stencil-exits-domain";
    case ErrorKind::singular_hessian: return "singular-hessian";
    case ErrorKind::degenerate_point_set: return "degenerate-point-set";
    case ErrorKind::singular_system: return "singular-system";
    case ErrorKind::zero_denominator: return "zero-denominator";
    case ErrorKind::pole: return "pole";
    case ErrorKind::positivity_violation: return "positivity-violation";
    case ErrorKind::not_invertible: return "not-invertible";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::nonpositive_derivative: return "nonpositive-derivative";
  }
  return "unknown";
}

}  // namespace toric
