#include "toric/abreu.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "toric/error.hpp"
#include "toric/numdiff.hpp"

namespace toric {

namespace {

// Inverse of a symmetric matrix via pivoted LDL^T.
Eigen::MatrixXd invert_hessian(const Eigen::MatrixXd& g) {
  const Eigen::Index n = g.rows();
  Eigen::LDLT<Eigen::MatrixXd> ldlt(g);
  const Eigen::VectorXd d = ldlt.vectorD().cwiseAbs();
  if (ldlt.info() != Eigen::Success || !(d.minCoeff() > numdiff::kEps * n * d.maxCoeff())) {
    throw Error(ErrorKind::singular_hessian, "Hessian is numerically singular");
  }
  return ldlt.solve(Eigen::MatrixXd::Identity(n, n));
}

// Stencil offsets are small integer multiples of h along coordinate axes;
// memoize G^{-1} by offset so shared points are inverted once.
class InverseCache {
 public:
  InverseCache(const SymplecticPotential& potential, const Point& x, double h)
      : potential_(potential), x_(x), h_(h) {}

  const Eigen::MatrixXd& at(std::vector<int> offset) {
    auto it = cache_.find(offset);
    if (it != cache_.end()) return it->second;
    Point y = x_;
    for (std::size_t i = 0; i < offset.size(); ++i) y[static_cast<Eigen::Index>(i)] += offset[i] * h_;
    if (!potential_.polytope().contains_interior(y)) {
      throw Error(ErrorKind::stencil_exits_domain, "stencil point left the polytope interior");
    }
    return cache_.emplace(std::move(offset), invert_hessian(potential_.hessian(y))).first->second;
  }

 private:
  const SymplecticPotential& potential_;
  const Point& x_;
  double h_;
  std::map<std::vector<int>, Eigen::MatrixXd> cache_;
};

double abreu_plain(const SymplecticPotential& potential, const Point& x, double h) {
  const int n = static_cast<int>(x.size());
  InverseCache inverse(potential, x, h);
  const std::vector<int> origin(static_cast<std::size_t>(n), 0);

  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    auto plus = origin, minus = origin;
    plus[static_cast<std::size_t>(i)] = 1;
    minus[static_cast<std::size_t>(i)] = -1;
    total += (inverse.at(plus)(i, i) - 2.0 * inverse.at(origin)(i, i) + inverse.at(minus)(i, i)) / (h * h);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto corner = [&](int si, int sj) {
        auto offset = origin;
        offset[static_cast<std::size_t>(i)] = si;
        offset[static_cast<std::size_t>(j)] = sj;
        return inverse.at(std::move(offset))(i, j);
      };
      const double mixed = (corner(1, 1) - corner(1, -1) - corner(-1, 1) + corner(-1, -1)) / (4.0 * h * h);
      total += 2.0 * mixed;  // (i,j) and (j,i)
    }
  }
  return -0.5 * total;
}

}  // namespace

SymplecticPotential::SymplecticPotential(MomentPolytope polytope, HessianOracle hessian)
    : polytope_(std::move(polytope)), hessian_(std::move(hessian)) {
  if (!hessian_) throw Error(ErrorKind::invalid_parameters, "missing Hessian oracle");
}

SymplecticPotential SymplecticPotential::radial(MomentPolytope polytope, TPotential profile) {
  if (profile.n != polytope.dimension()) {
    throw Error(ErrorKind::dimension_mismatch, "profile and polytope dimensions differ");
  }
  return SymplecticPotential(std::move(polytope), [profile = std::move(profile)](const Point& x) {
    const double t = x.sum();
    if (!profile.domain.contains(t)) {
      throw Error(ErrorKind::domain_violation, "t = " + std::to_string(t) + " outside the profile domain");
    }
    return radial_hessian(x, profile.f_second(t));
  });
}

SymplecticPotential SymplecticPotential::from_values(MomentPolytope polytope, ValueOracle value,
                                                     double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::invalid_parameters, "step must be positive");
  auto domain = polytope;
  return SymplecticPotential(std::move(polytope),
                             [value = std::move(value), step, domain = std::move(domain)](const Point& x) {
                               return numeric_hessian(value, x, step, domain);
                             });
}

Eigen::MatrixXd numeric_hessian(const ValueOracle& value, const Point& x, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::invalid_parameters, "step must be positive");
  const Eigen::Index n = x.size();
  Eigen::MatrixXd hess(n, n);
  const double center = value(x);
  Point y = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    y[i] = x[i] + h;
    const double up = value(y);
    y[i] = x[i] - h;
    const double down = value(y);
    y[i] = x[i];
    hess(i, i) = (up - 2.0 * center + down) / (h * h);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto corner = [&](double si, double sj) {
        y[i] = x[i] + si * h;
        y[j] = x[j] + sj * h;
        const double v = value(y);
        y[i] = x[i];
        y[j] = x[j];
        return v;
      };
      const double pp = corner(1, 1), pm = corner(1, -1), mp = corner(-1, 1), mm = corner(-1, -1);
      hess(i, j) = hess(j, i) = (pp - pm - mp + mm) / (4.0 * h * h);
    }
  }
  return hess;
}

Eigen::MatrixXd numeric_hessian(const ValueOracle& value, const Point& x, double h,
                                const MomentPolytope& domain) {
  if (x.size() != domain.dimension()) throw Error(ErrorKind::dimension_mismatch, "point dimension");
  // Stencil points move at most two coordinates by h.
  const ValueOracle guarded = [&](const Point& y) {
    if (!domain.contains_interior(y)) {
      throw Error(ErrorKind::stencil_exits_domain, "Hessian stencil left the polytope interior");
    }
    return value(y);
  };
  return numeric_hessian(guarded, x, h);
}

double default_abreu_step(const MomentPolytope& polytope, const Point& x) {
  const double distance = polytope.min_facet_value(x);
  if (!(distance > 0.0)) throw Error(ErrorKind::stencil_exits_domain, "point is not interior");
  const double extent = (polytope.box_upper() - polytope.box_lower()).maxCoeff();
  return std::min(distance / 3.0, kMaxAbreuStep * extent);
}

double abreu_scalar_curvature(const SymplecticPotential& potential, const Point& x, double h,
                              bool richardson) {
  const MomentPolytope& polytope = potential.polytope();
  if (x.size() != polytope.dimension()) throw Error(ErrorKind::dimension_mismatch, "point dimension");
  if (polytope.dimension() > kMaxAbreuDimension) {
    throw Error(ErrorKind::invalid_parameters,
                "dimension exceeds " + std::to_string(kMaxAbreuDimension) + " for dense inversion");
  }
  if (!(h > 0.0)) throw Error(ErrorKind::invalid_parameters, "step must be positive");
  if (polytope.min_facet_value(x) < 3.0 * h) {
    throw Error(ErrorKind::stencil_exits_domain, "point is closer than 3h to a facet");
  }
  if (!richardson) return abreu_plain(potential, x, h);
  const double coarse = abreu_plain(potential, x, h);
  const double fine = abreu_plain(potential, x, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

double abreu_scalar_curvature(const SymplecticPotential& potential, const Point& x) {
  return abreu_scalar_curvature(potential, x, default_abreu_step(potential.polytope(), x), true);
}

ExtremalityFit fit_affine(std::vector<ScalarCurvatureSample> samples) {
  if (samples.empty()) throw Error(ErrorKind::degenerate_point_set, "no samples");
  const Eigen::Index n = samples.front().x.size();
  const Eigen::Index m = static_cast<Eigen::Index>(samples.size());
  if (m < n + 1) throw Error(ErrorKind::degenerate_point_set, "need at least n+1 points");

  Eigen::MatrixXd design(m, n + 1);
  Eigen::VectorXd values(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto& sample = samples[static_cast<std::size_t>(k)];
    if (sample.x.size() != n) throw Error(ErrorKind::dimension_mismatch, "mixed point dimensions");
    design.row(k).head(n) = sample.x.transpose();
    design(k, n) = 1.0;
    values[k] = sample.S;
  }

  // Column scaling before the QR solve.
  Eigen::VectorXd scale = design.cwiseAbs().colwise().maxCoeff().transpose();
  for (Eigen::Index j = 0; j <= n; ++j) {
    if (!(scale[j] > 0.0)) throw Error(ErrorKind::degenerate_point_set, "zero column in design matrix");
  }
  const Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  qr.setThreshold(1e-10);
  if (qr.rank() < n + 1) throw Error(ErrorKind::degenerate_point_set, "points are affinely dependent");
  const Eigen::VectorXd coeff = qr.solve(values).cwiseQuotient(scale);

  ExtremalityFit fit;
  fit.slope = coeff.head(n);
  fit.intercept = coeff[n];
  fit.max_residual = (design * coeff - values).cwiseAbs().maxCoeff();
  fit.samples = std::move(samples);
  return fit;
}

ExtremalityFit extremality_residual(const SymplecticPotential& potential,
                                    const std::vector<Point>& points) {
  std::vector<ScalarCurvatureSample> samples;
  samples.reserve(points.size());
  for (const auto& x : points) samples.push_back({x, abreu_scalar_curvature(potential, x)});
  return fit_affine(std::move(samples));
}

}  // namespace toric
