#include "toric/polytope.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "toric/error.hpp"

namespace toric {

namespace {

void require_dimension(const Point& x, int n) {
  if (x.size() != n) {
    throw Error(ErrorKind::dimension_mismatch,
                "point has " + std::to_string(x.size()) + " coordinates, polytope has dimension " +
                    std::to_string(n));
  }
}

// Portable [0,1) from a 64-bit draw; std distributions are implementation-defined.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double AffineFacet::operator()(const Point& x) const {
  double value = offset;
  for (std::size_t i = 0; i < normal.size(); ++i) value += normal[i] * x[static_cast<Eigen::Index>(i)];
  return value;
}

MomentPolytope::MomentPolytope(int dimension, std::vector<AffineFacet> facets, Point box_lower,
                               Point box_upper)
    : dimension_(dimension),
      facets_(std::move(facets)),
      box_lower_(std::move(box_lower)),
      box_upper_(std::move(box_upper)) {
  if (dimension_ < 1) throw Error(ErrorKind::invalid_parameters, "dimension must be >= 1");
  if (box_lower_.size() != dimension_ || box_upper_.size() != dimension_) {
    throw Error(ErrorKind::dimension_mismatch, "bounding box does not match dimension");
  }
  for (const auto& facet : facets_) {
    if (static_cast<int>(facet.normal.size()) != dimension_) {
      throw Error(ErrorKind::dimension_mismatch, "facet normal does not match dimension");
    }
    if (std::all_of(facet.normal.begin(), facet.normal.end(), [](int c) { return c == 0; })) {
      throw Error(ErrorKind::invalid_parameters, "facet normal must be nonzero");
    }
  }
}

double MomentPolytope::min_facet_value(const Point& x) const {
  require_dimension(x, dimension_);
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& facet : facets_) lowest = std::min(lowest, facet(x));
  return lowest;
}

bool MomentPolytope::contains_interior(const Point& x, double margin) const {
  return min_facet_value(x) > std::max(margin, kFacetTolerance);
}

MomentPolytope build_blowup_polytope(int n, double a, double b) {
  if (n < 1) throw Error(ErrorKind::invalid_parameters, "n must be >= 1");
  if (!(a > 0.0) || !(a < b)) throw Error(ErrorKind::invalid_parameters, "require 0 < a < b");

  std::vector<AffineFacet> facets;
  facets.reserve(static_cast<std::size_t>(n) + 2);
  for (int i = 0; i < n; ++i) {
    AffineFacet f{std::vector<int>(static_cast<std::size_t>(n), 0), 0.0};
    f.normal[static_cast<std::size_t>(i)] = 1;
    facets.push_back(std::move(f));
  }
  facets.push_back({std::vector<int>(static_cast<std::size_t>(n), 1), -a});
  facets.push_back({std::vector<int>(static_cast<std::size_t>(n), -1), b});
  return MomentPolytope(n, std::move(facets), Point::Zero(n), Point::Constant(n, b));
}

MomentPolytope build_simplex_polytope(int n, double size) {
  if (n < 1) throw Error(ErrorKind::invalid_parameters, "n must be >= 1");
  if (!(size > 0.0)) throw Error(ErrorKind::invalid_parameters, "simplex size must be positive");

  std::vector<AffineFacet> facets;
  for (int i = 0; i < n; ++i) {
    AffineFacet f{std::vector<int>(static_cast<std::size_t>(n), 0), 0.0};
    f.normal[static_cast<std::size_t>(i)] = 1;
    facets.push_back(std::move(f));
  }
  facets.push_back({std::vector<int>(static_cast<std::size_t>(n), -1), size});
  return MomentPolytope(n, std::move(facets), Point::Zero(n), Point::Constant(n, size));
}

std::vector<double> facet_values(const MomentPolytope& polytope, const Point& x) {
  require_dimension(x, polytope.dimension());
  std::vector<double> values;
  values.reserve(polytope.facets().size());
  for (const auto& facet : polytope.facets()) values.push_back(facet(x));
  return values;
}

std::vector<Point> sample_interior(const MomentPolytope& polytope, int count, double margin,
                                   std::uint64_t seed) {
  if (count < 0) throw Error(ErrorKind::invalid_parameters, "count must be >= 0");
  if (!(margin > 0.0)) throw Error(ErrorKind::invalid_parameters, "margin must be positive");

  const int n = polytope.dimension();
  std::mt19937_64 rng(seed);
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(count));

  Point candidate(n);
  std::int64_t attempts = 0;
  while (static_cast<int>(points.size()) < count) {
    if (attempts++ >= kSamplerRetryBudget) {
      throw Error(ErrorKind::empty_region, "no point with facet values >= " + std::to_string(margin) +
                                               " found within the retry budget");
    }
    for (int i = 0; i < n; ++i) {
      const double lo = polytope.box_lower()[i];
      const double hi = polytope.box_upper()[i];
      candidate[i] = lo + (hi - lo) * unit_uniform(rng);
    }
    if (polytope.min_facet_value(candidate) >= margin) points.push_back(candidate);
  }
  return points;
}

}  // namespace toric
