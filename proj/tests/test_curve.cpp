#include "doctest.h"

#include <bit>
#include <cmath>
#include <complex>

#include "thomae/curve.hpp"

using namespace thomae;

namespace {
FiberProductCurve g1_curve() {
  return FiberProductCurve::validate(1, 2, {{-1.0, -1.0 / 3, 1.0 / 3, 1.0}});
}
FiberProductCurve g2_curve() {
  return FiberProductCurve::validate(1, 3, {{-5.0, -3.0, -1.0, 1.0, 3.0, 5.0}});
}
FiberProductCurve g5_curve() {
  return FiberProductCurve::validate(2, 2, {{-2.0, -1.0, 1.0, 2.0}, {-3.0, -1.5, 1.5, 3.0}});
}
}  // namespace

TEST_CASE("curve validation accepts the documented instances") {
  CHECK(g1_curve().genus() == 1);
  CHECK(g2_curve().genus() == 2);
  CHECK(g5_curve().genus() == 5);
  CHECK(FiberProductCurve::validate(1, 1, {{-1.0, 1.0}}).genus() == 0);
}

TEST_CASE("curve validation reports every violation") {
  CHECK_THROWS_AS(FiberProductCurve::validate(1, 2, {{-1.0, 1.0, 1.0, 2.0}}), ValidationError);
  try {
    FiberProductCurve::validate(1, 2, {{-1.0, 1.0, 1.0, -1.0}});
    FAIL("expected DuplicateBranchPoint");
  } catch (const ValidationError& e) {
    CHECK(e.code() == errc::duplicate_branch_point);
    CHECK(e.violations().size() == 2);  // both coincidences listed
  }
  CHECK_THROWS_AS(FiberProductCurve::validate(2, 2, {{-1.0, 1.0, 2.0, 3.0}}), ValidationError);
  CHECK_THROWS_AS(FiberProductCurve::validate(1, 2, {{-1.0, 1.0, 2.0, 1e9}}), ValidationError);
}

TEST_CASE("basis count identity matches the genus for n<=4, m<=5") {
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 5; ++m) {
      long long count = 0;
      for (unsigned v = 1; v < (1u << n); ++v) {
        const int s = std::popcount(v);
        if (m * s - 1 > 0) count += m * s - 1;
      }
      const long long genus = (static_cast<long long>(m) * n - 2) * (1LL << (n - 1)) + 1;
      CHECK(count == genus);
    }
}

TEST_CASE("differential basis enumeration is deterministic and complete") {
  const auto c2 = g2_curve();
  auto basis = differential_basis(c2);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0].vmask == 1);
  CHECK(basis[0].l == 0);
  CHECK(basis[1].l == 1);

  const auto c5 = g5_curve();
  basis = differential_basis(c5);
  REQUIRE(basis.size() == 5);
  CHECK(basis[0].vmask == 1);  // (v=(1,0), l=0)
  CHECK(basis[1].vmask == 2);  // (v=(0,1), l=0)
  CHECK(basis[2].vmask == 3);
  CHECK(basis[2].l == 0);
  CHECK(basis[4].l == 2);

  CHECK(differential_basis(FiberProductCurve::validate(1, 1, {{-1.0, 1.0}})).empty());
}

TEST_CASE("evaluate_differential at a regular point") {
  const auto c = g1_curve();
  SurfacePoint p;
  p.x = 0.0;
  p.y = {std::sqrt(c.f(0, 0.0))};
  REQUIRE(c.on_curve(p));
  const DifferentialIndex d{1u, 0, 1};
  const cd val = evaluate_differential(c, d, p);
  CHECK(std::abs(val - 1.0 / p.y[0]) < 1e-14);

  // sign action of the group
  const SurfacePoint q = apply(AutomorphismElement{1u}, c, p);
  CHECK(std::abs(evaluate_differential(c, d, q) + val) < 1e-14);

  // real input, real branch points: value is real
  CHECK(std::abs(val.imag()) < 1e-14);

  SurfacePoint branch;
  branch.x = 1.0;
  branch.y = {0.0};
  CHECK_THROWS_AS(evaluate_differential(c, d, branch), Error);
}

TEST_CASE("automorphism group acts by commuting involutions") {
  const auto c = g5_curve();
  SurfacePoint p;
  p.x = 0.4;
  p.y = {std::sqrt(c.f(0, 0.4)), std::sqrt(c.f(1, 0.4))};
  for (unsigned a = 0; a < 4; ++a)
    for (unsigned b = 0; b < 4; ++b) {
      const auto pab = apply(AutomorphismElement{a}, c, apply(AutomorphismElement{b}, c, p));
      const auto pba = apply(AutomorphismElement{b}, c, apply(AutomorphismElement{a}, c, p));
      for (int j = 0; j < 2; ++j) CHECK(pab.y[j] == pba.y[j]);
      const auto paa = apply(AutomorphismElement{a}, c, apply(AutomorphismElement{a}, c, p));
      for (int j = 0; j < 2; ++j) CHECK(paa.y[j] == p.y[j]);
    }
}

TEST_CASE("branch_local_coefficient against a sampling-regression oracle") {
  const auto c = FiberProductCurve::validate(1, 2, {{-1.0, 1.0, -2.0, 2.0}});
  const DifferentialIndex d{1u, 0, 1};
  const BranchRef b{0, 1};  // lambda = 1
  const BranchSheet sheet = principal_branch_sheet(c, b);
  const cd c0 = branch_local_coefficient(c, d, b, sheet);

  // Oracle: sample omega/dt on a small circle in t and regress on powers of t.
  // x = 1 + t^2, dx = 2t dt, omega/dt = 2t x^l / y(x).
  const double rho = 1e-3;
  cd acc = 0.0;
  const int M = 32;
  for (int s = 0; s < M; ++s) {
    const cd t = rho * std::exp(cd(0, 2 * M_PI * s / M));
    const cd x = 1.0 + t * t;
    // y near the branch on the sheet matching h0: y = t * h(t), h -> sheet.h0
    const cd h = std::sqrt(c.f_skip(0, 1, x));
    const cd hs = std::abs(h - sheet.h0) < std::abs(h + sheet.h0) ? h : -h;
    const cd y = t * hs;
    acc += (2.0 * t * std::pow(x, d.l) / y);  // coefficient of dt, sampled
  }
  acc /= static_cast<double>(M);  // mean isolates the t^0 Fourier mode
  CHECK(std::abs(acc - c0) < 1e-6 * std::abs(c0));

  // flipping every supported sheet flips the coefficient
  BranchSheet flipped = sheet;
  flipped.h0 = -flipped.h0;
  CHECK(std::abs(branch_local_coefficient(c, d, b, flipped) + c0) < 1e-14);

  CHECK_THROWS_AS(branch_local_coefficient(FiberProductCurve::validate(
                                               2, 2, {{-2.0, -1.0, 1.0, 2.0},
                                                      {-3.0, -1.5, 1.5, 3.0}}),
                                           DifferentialIndex{2u, 0, 1}, BranchRef{0, 0},
                                           BranchSheet{{0.0, 1.0}, 1.0}),
                  Error);
}

TEST_CASE("first-kind property: finite nonzero leading coefficient at supported branches") {
  const auto c = g5_curve();
  for (const auto& d : differential_basis(c))
    for (int flat = 0; flat < c.branch_count(); ++flat) {
      const BranchRef b = c.branch_ref(flat);
      if (!(d.vmask & (1u << b.factor))) continue;
      const cd c0 = branch_local_coefficient(c, d, b, principal_branch_sheet(c, b));
      CHECK(std::isfinite(std::abs(c0)));
      CHECK(std::abs(c0) > 1e-12);
    }
}

TEST_CASE("differential decay exponent at large x") {
  const auto c = g5_curve();
  for (const auto& d : differential_basis(c)) {
    const double r1 = 1e3, r2 = 1e4;
    auto value = [&](double r) {
      SurfacePoint p;
      p.x = cd(r, 0.37 * r);
      p.y.resize(2);
      for (int j = 0; j < 2; ++j) p.y[j] = std::sqrt(c.f(j, p.x));
      return std::abs(evaluate_differential(c, d, p));
    };
    const double slope = std::log(value(r2) / value(r1)) / std::log(r2 / r1);
    const double predicted = d.l - c.m() * d.support;
    CHECK(std::abs(slope - predicted) < 0.1);
  }
}
