#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "thomae/errors.hpp"

namespace thomae {

using cd = std::complex<double>;

/// Identifies one branch point: factor j (0-based) and index i within the factor.
struct BranchRef {
  int factor = 0;
  int index = 0;
  bool operator==(const BranchRef&) const = default;
};

struct HyperellipticFactor {
  int index = 0;                  // 1-based factor label
  std::vector<cd> branch_points;  // exactly 2m, pairwise distinct
};

/// x^l dx / (y_{i1}...y_{is}) with the support encoded as a bitmask over factors.
struct DifferentialIndex {
  unsigned vmask = 0;  // nonzero subset of factors, bit j = factor j (0-based)
  int l = 0;           // 0 <= l <= m*s - 2
  int support = 0;     // popcount(vmask)
};

struct SurfacePoint {
  cd x{};
  std::vector<cd> y;  // one sheet value per factor
  bool is_branch = false;
  int branch_factor = -1;  // factor whose y vanishes, when is_branch
};

struct AutomorphismElement {
  unsigned bits = 0;  // Z_2^n, bit j flips y_j
};

/// Fiber product of n hyperelliptic curves y_j^2 = f_j(x), deg f_j = 2m.
class FiberProductCurve {
public:
  static FiberProductCurve validate(int n, int m,
                                    const std::vector<std::vector<cd>>& branch_points);

  int n() const { return n_; }
  int m() const { return m_; }
  int genus() const { return (m_ * n_ - 2) * (1 << (n_ - 1)) + 1; }
  int sheet_count() const { return 1 << n_; }
  int branch_count() const { return 2 * m_ * n_; }  // 2mn branch points in total
  int total_ramification() const { return (1 << n_) * m_ * n_; }

  const std::vector<HyperellipticFactor>& factors() const { return factors_; }
  const std::vector<cd>& lambdas(int factor) const { return factors_[factor].branch_points; }
  cd lambda(BranchRef b) const { return factors_[b.factor].branch_points[b.index]; }
  cd lambda(int flat) const { return lambda(branch_ref(flat)); }

  BranchRef branch_ref(int flat) const { return {flat / (2 * m_), flat % (2 * m_)}; }
  int flat_index(BranchRef b) const { return b.factor * 2 * m_ + b.index; }

  cd f(int factor, cd x) const;                  // prod_i (x - lambda_{factor,i})
  cd f_skip(int factor, int skip, cd x) const;   // same with one root removed
  cd f_derivative(int factor, cd x) const;
  cd y_product(unsigned vmask, const SurfacePoint& p) const;

  double min_pair_distance() const { return min_pair_distance_; }
  double scale() const { return scale_; }  // max |lambda|, at least 1

  bool on_curve(const SurfacePoint& p, double tol = 1e-10) const;
  void require_on_curve(const SurfacePoint& p) const;

private:
  FiberProductCurve() = default;
  int n_ = 0, m_ = 0;
  std::vector<HyperellipticFactor> factors_;
  double min_pair_distance_ = 0;
  double scale_ = 1;
};

SurfacePoint apply(const AutomorphismElement& a, const FiberProductCurve& curve,
                   SurfacePoint p);

/// Deterministic basis of the g holomorphic differentials: v in binary-counter
/// order, then l ascending.
std::vector<DifferentialIndex> differential_basis(const FiberProductCurve& curve);

/// Coefficient of dx at a regular point: x^l / prod_{j in v} y_j.
cd evaluate_differential(const FiberProductCurve& curve, const DifferentialIndex& d,
                         const SurfacePoint& p);

/// Sheet data for a preimage of a branch point of factor j. y values are given
/// for every factor except j; h0 is the limit of y_j / t for t = (x-lambda)^{1/2}.
struct BranchSheet {
  std::vector<cd> y_other;  // size n, entry at the ramified factor is ignored
  cd h0;                    // nonzero
};

/// Leading coefficient c0 in (c0 + c1 t + ...) dt of a first-kind differential
/// expanded at a ramification point in the local coordinate t = (x-lambda)^{1/2}.
cd branch_local_coefficient(const FiberProductCurve& curve, const DifferentialIndex& d,
                            BranchRef b, const BranchSheet& sheet);

/// Principal-sheet expansion data at a branch point (other y's at principal
/// square roots, h0 the principal root of f_j(x)/(x-lambda) at lambda).
BranchSheet principal_branch_sheet(const FiberProductCurve& curve, BranchRef b);

}  // namespace thomae
