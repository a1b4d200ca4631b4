#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace toric {

using Point = Eigen::VectorXd;

/// Facet values closer than this to zero are treated as on the boundary.
inline constexpr double kFacetTolerance = 1e-12;

/// l(x) = <normal, x> + offset. The normal has integer entries.
struct AffineFacet {
  std::vector<int> normal;
  double offset = 0.0;

  double operator()(const Point& x) const;
};

/// A polytope cut out by l_i(x) >= 0, together with an axis-aligned box
/// that contains it (used for sampling).
class MomentPolytope {
 public:
  MomentPolytope(int dimension, std::vector<AffineFacet> facets, Point box_lower, Point box_upper);

  int dimension() const noexcept { return dimension_; }
  const std::vector<AffineFacet>& facets() const noexcept { return facets_; }
  const Point& box_lower() const noexcept { return box_lower_; }
  const Point& box_upper() const noexcept { return box_upper_; }

  /// Smallest facet value at x; positive exactly on the interior.
  double min_facet_value(const Point& x) const;
  bool contains_interior(const Point& x, double margin = 0.0) const;

 private:
  int dimension_;
  std::vector<AffineFacet> facets_;
  Point box_lower_;
  Point box_upper_;
};

/// Polytope of CP^n blown up at a point: x_i >= 0, t - a >= 0, b - t >= 0
/// with t = sum x_i. Requires n >= 1 and 0 < a < b.
MomentPolytope build_blowup_polytope(int n, double a, double b);

/// Standard simplex of size `size`: x_i >= 0, size - t >= 0 (CP^n).
MomentPolytope build_simplex_polytope(int n, double size = 1.0);

/// (l_1(x), ..., l_N(x)) in facet order.
std::vector<double> facet_values(const MomentPolytope& polytope, const Point& x);

/// Name of the generator behind sample_interior, for reports.
inline constexpr std::string_view kSamplerPrng = "mt19937_64";
inline constexpr std::int64_t kSamplerRetryBudget = 1'000'000;

/// Deterministic rejection sampling over the bounding box: `count` points
/// whose facet values are all >= margin. The retry budget is shared by all
/// points; exhausting it raises empty-region.
std::vector<Point> sample_interior(const MomentPolytope& polytope, int count, double margin,
                                   std::uint64_t seed);

}  // namespace toric
