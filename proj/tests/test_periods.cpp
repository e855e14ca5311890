#include "doctest.h"

#include "agm_oracle.hpp"
#include "thomae/surface.hpp"

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

void check_riemann_relations(Surface& s) {
  const auto& p = s.periods();
  CHECK(p.tau_symmetry_residual < 1e-8);
  CHECK(p.min_eig_im_tau > 0.0);
}
}  // namespace

TEST_CASE("genus-1 period matches the AGM elliptic oracle") {
  auto c = g1_curve();
  Surface s(c);
  const auto& p = s.periods();
  REQUIRE(p.tau.rows() == 1);
  const cd tau = agm_oracle::sl2z_reduce(p.tau(0, 0));
  const cd tau_agm =
      agm_oracle::sl2z_reduce(agm_oracle::tau_from_branch_points(-1.0, -1.0 / 3, 1.0 / 3, 1.0));
  CHECK(std::abs(tau - tau_agm) < 1e-8 * std::abs(tau_agm));
  check_riemann_relations(s);
}

TEST_CASE("Riemann bilinear relations across the test matrix") {
  {
    auto c = g2_curve();
    Surface s(c);
    check_riemann_relations(s);
  }
  {
    auto c = g5_curve();
    Surface s(c);
    check_riemann_relations(s);
    CHECK(s.periods().cond_A < 1e8);
    CHECK(std::abs(s.periods().detC) > 0);
  }
}

TEST_CASE("variational formula vs finite differences, genus 1 and 2") {
  for (int which = 0; which < 2; ++which) {
    auto c = which == 0 ? g1_curve() : g2_curve();
    Surface s(c);
    const double h = 1e-5;
    for (int flat = 0; flat < c.branch_count(); ++flat) {
      const Eigen::MatrixXcd pred = variational_prediction(s, flat);
      CHECK((pred - pred.transpose()).cwiseAbs().maxCoeff() < 1e-10 * pred.cwiseAbs().maxCoeff());
      const Eigen::MatrixXcd fd =
          dtau_dlambda_fd(c, s.options(), flat, h, s.base_x(), s.branch_order());
      const double rel =
          (fd - pred).cwiseAbs().maxCoeff() / std::max(pred.cwiseAbs().maxCoeff(), 1e-30);
      CHECK(rel < 1e-4);
    }
  }
}

TEST_CASE("fd step halving shows second-order behavior") {
  auto c = g1_curve();
  Surface s(c);
  const Eigen::MatrixXcd pred = variational_prediction(s, 0);
  const Eigen::MatrixXcd f1 =
      dtau_dlambda_fd(c, s.options(), 0, 2e-4, s.base_x(), s.branch_order());
  const Eigen::MatrixXcd f2 =
      dtau_dlambda_fd(c, s.options(), 0, 1e-4, s.base_x(), s.branch_order());
  const double e1 = (f1 - pred).cwiseAbs().maxCoeff();
  const double e2 = (f2 - pred).cwiseAbs().maxCoeff();
  CHECK(e2 < e1 / 2.5);  // ~4x for clean second order, allow slack
  CHECK(e1 / e2 < 6.5);
}
