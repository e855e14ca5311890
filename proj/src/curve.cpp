#include "thomae/curve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace thomae {

const char* errc_name(errc c) {
  switch (c) {
    case errc::duplicate_branch_point: return "DuplicateBranchPoint";
    case errc::bad_shape: return "BadShape";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::same_point: return "SamePoint";
    case errc::branch_point_evaluation: return "BranchPointEvaluation";
    case errc::unsupported_factor: return "UnsupportedFactor";
    case errc::clearance_violation: return "ClearanceViolation";
    case errc::step_underflow: return "StepUnderflow";
    case errc::rank_deficiency: return "RankDeficiency";
    case errc::ill_conditioned: return "IllConditioned";
    case errc::quadrature_failure: return "QuadratureFailure";
    case errc::not_positive_definite: return "NotPositiveDefinite";
    case errc::truncation_overflow: return "TruncationOverflow";
    case errc::near_vanishing: return "NearVanishing";
    case errc::coincident_points: return "CoincidentPoints";
    case errc::path_clearance: return "PathClearance";
    case errc::fit_diverged: return "FitDiverged";
    case errc::basis_jump: return "BasisJump";
    case errc::path_collision: return "PathCollision";
    case errc::invalid_input: return "InvalidInput";
  }
  return "UnknownError";
}

FiberProductCurve FiberProductCurve::validate(
    int n, int m, const std::vector<std::vector<cd>>& branch_points) {
  std::vector<std::string> violations;
  if (n < 1) violations.push_back("n must be >= 1");
  if (m < 1) violations.push_back("m must be >= 1");
  if (n >= 1 && static_cast<int>(branch_points.size()) != n)
    violations.push_back("expected " + std::to_string(n) + " factor lists, got " +
                         std::to_string(branch_points.size()));
  if (!violations.empty()) throw ValidationError(errc::bad_shape, violations);

  for (int j = 0; j < n; ++j) {
    if (static_cast<int>(branch_points[j].size()) != 2 * m)
      violations.push_back("factor " + std::to_string(j + 1) + " has " +
                           std::to_string(branch_points[j].size()) + " branch points, expected " +
                           std::to_string(2 * m));
  }
  if (!violations.empty()) throw ValidationError(errc::bad_shape, violations);

  // Keep the dynamic range sane; quadrature near-singularity control assumes it.
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < 2 * m; ++i)
      if (std::abs(branch_points[j][i]) > 1e8)
        violations.push_back("branch point (" + std::to_string(j + 1) + "," +
                             std::to_string(i + 1) + ") exceeds modulus bound 1e8");
  if (!violations.empty()) throw ValidationError(errc::bad_shape, violations);

  bool dup = false;
  double minsep = std::numeric_limits<double>::infinity();
  const int total = 2 * m * n;
  for (int a = 0; a < total; ++a) {
    const cd la = branch_points[a / (2 * m)][a % (2 * m)];
    for (int b = a + 1; b < total; ++b) {
      const cd lb = branch_points[b / (2 * m)][b % (2 * m)];
      const double d = std::abs(la - lb);
      if (d == 0.0) {
        dup = true;
        violations.push_back("coincident branch points at flat indices " + std::to_string(a) +
                             " and " + std::to_string(b));
      }
      minsep = std::min(minsep, d);
    }
  }
  if (dup) throw ValidationError(errc::duplicate_branch_point, violations);

  FiberProductCurve c;
  c.n_ = n;
  c.m_ = m;
  c.factors_.resize(n);
  double sc = 1.0;
  for (int j = 0; j < n; ++j) {
    c.factors_[j].index = j + 1;
    c.factors_[j].branch_points = branch_points[j];
    for (const cd& l : branch_points[j]) sc = std::max(sc, std::abs(l));
  }
  c.min_pair_distance_ = total > 1 ? minsep : 1.0;
  c.scale_ = sc;
  return c;
}

cd FiberProductCurve::f(int factor, cd x) const {
  cd p = 1.0;
  for (const cd& l : factors_[factor].branch_points) p *= (x - l);
  return p;
}

cd FiberProductCurve::f_skip(int factor, int skip, cd x) const {
  cd p = 1.0;
  const auto& ls = factors_[factor].branch_points;
  for (int i = 0; i < static_cast<int>(ls.size()); ++i)
    if (i != skip) p *= (x - ls[i]);
  return p;
}

cd FiberProductCurve::f_derivative(int factor, cd x) const {
  const auto& ls = factors_[factor].branch_points;
  cd s = 0.0;
  for (int i = 0; i < static_cast<int>(ls.size()); ++i) s += f_skip(factor, i, x);
  return s;
}

cd FiberProductCurve::y_product(unsigned vmask, const SurfacePoint& p) const {
  cd prod = 1.0;
  for (int j = 0; j < n_; ++j)
    if (vmask & (1u << j)) prod *= p.y[j];
  return prod;
}

bool FiberProductCurve::on_curve(const SurfacePoint& p, double tol) const {
  if (static_cast<int>(p.y.size()) != n_) return false;
  for (int j = 0; j < n_; ++j) {
    const cd fx = f(j, p.x);
    if (std::abs(p.y[j] * p.y[j] - fx) > tol * (1.0 + std::abs(fx))) return false;
  }
  return true;
}

void FiberProductCurve::require_on_curve(const SurfacePoint& p) const {
  if (!on_curve(p)) throw Error(errc::invalid_input, "point fails curve membership tolerance");
}

SurfacePoint apply(const AutomorphismElement& a, const FiberProductCurve& curve,
                   SurfacePoint p) {
  for (int j = 0; j < curve.n(); ++j)
    if (a.bits & (1u << j)) p.y[j] = -p.y[j];
  return p;
}

std::vector<DifferentialIndex> differential_basis(const FiberProductCurve& curve) {
  std::vector<DifferentialIndex> basis;
  const int n = curve.n(), m = curve.m();
  for (unsigned v = 1; v < (1u << n); ++v) {
    const int s = std::popcount(v);
    for (int l = 0; l <= m * s - 2; ++l) basis.push_back({v, l, s});
  }
  return basis;
}

cd evaluate_differential(const FiberProductCurve& curve, const DifferentialIndex& d,
                         const SurfacePoint& p) {
  cd denom = 1.0;
  for (int j = 0; j < curve.n(); ++j) {
    if (!(d.vmask & (1u << j))) continue;
    if (std::abs(p.y[j]) < 1e-13 * (1.0 + curve.scale()))
      throw Error(errc::branch_point_evaluation,
                  "y_" + std::to_string(j + 1) + " vanishes; use branch_local_coefficient");
    denom *= p.y[j];
  }
  return std::pow(p.x, d.l) / denom;
}

cd branch_local_coefficient(const FiberProductCurve& curve, const DifferentialIndex& d,
                            BranchRef b, const BranchSheet& sheet) {
  if (!(d.vmask & (1u << b.factor)))
    throw Error(errc::unsupported_factor,
                "differential has no dt-order-0 term at this branch point");
  const cd l = curve.lambda(b);
  cd denom = sheet.h0;
  for (int j = 0; j < curve.n(); ++j) {
    if (j == b.factor || !(d.vmask & (1u << j))) continue;
    denom *= sheet.y_other[j];
  }
  // x = lambda + t^2, dx = 2t dt, y_j = t h(t): leading dt coefficient.
  return 2.0 * std::pow(l, d.l) / denom;
}

BranchSheet principal_branch_sheet(const FiberProductCurve& curve, BranchRef b) {
  BranchSheet s;
  s.y_other.resize(curve.n());
  const cd l = curve.lambda(b);
  for (int j = 0; j < curve.n(); ++j)
    if (j != b.factor) s.y_other[j] = std::sqrt(curve.f(j, l));
  s.h0 = std::sqrt(curve.f_skip(b.factor, b.index, l));
  return s;
}

}  // namespace thomae
