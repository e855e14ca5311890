#include "doctest.h"

#include <cmath>

#include "thomae/surface.hpp"

using namespace thomae;

namespace {
FiberProductCurve g1_curve() {
  return FiberProductCurve::validate(1, 2, {{-1.0, -1.0 / 3, 1.0 / 3, 1.0}});
}
FiberProductCurve g5_curve() {
  return FiberProductCurve::validate(2, 2, {{-2.0, -1.0, 1.0, 2.0}, {-3.0, -1.5, 1.5, 3.0}});
}
}  // namespace

TEST_CASE("continue_sheets: contractible loop returns the start sheets") {
  const auto c = g1_curve();
  SurfacePoint start;
  start.x = cd(0.0, -3.0);
  start.y = {std::sqrt(c.f(0, start.x))};
  const double r = 0.5;
  std::vector<cd> loop;
  for (int s = 0; s <= 32; ++s)
    loop.push_back(start.x + r * std::exp(cd(0, 2 * M_PI * s / 32.0)) - r);
  const auto tracked = continue_sheets(c, loop, start, 1e-3);
  CHECK(std::abs(tracked.y_tracks.back()[0] - start.y[0]) < 1e-10);
}

TEST_CASE("continue_sheets guards clearance") {
  const auto c = g1_curve();
  SurfacePoint start;
  start.x = cd(-2.0, 0.0);
  start.y = {std::sqrt(c.f(0, start.x))};
  // segment passes straight through the branch point at -1
  CHECK_THROWS_AS(continue_sheets(c, {start.x, cd(0.0, 0.0)}, start, 1e-3), Error);
}

TEST_CASE("monodromy generators are the expected sheet flips") {
  auto c = g5_curve();
  Surface s(c);
  const auto& mono = s.monodromy();
  REQUIRE(mono.translations.size() == 8);
  for (int flat = 0; flat < 8; ++flat) {
    const unsigned expected = 1u << c.branch_ref(flat).factor;
    CHECK(mono.translations[flat] == expected);
    const auto perm = mono.permutation(flat, c.sheet_count());
    for (int sheet = 0; sheet < c.sheet_count(); ++sheet) {
      CHECK(perm[perm[sheet]] == sheet);      // involution
      CHECK(perm[sheet] != sheet);            // acts freely
    }
  }
  // product over all generators is the identity translation
  unsigned acc = 0;
  for (unsigned t : mono.translations) acc ^= t;
  CHECK(acc == 0u);
}

TEST_CASE("loop around two same-factor branch points restores all sheets") {
  auto c = g1_curve();
  Surface s(c);
  Route route = s.loop_route(0, s.base_x());
  const Route second = s.loop_route(1, s.base_x());
  route.insert(route.end(), second.begin(), second.end());
  RouteTracker tracker(c, route, s.base_point().y);
  const auto end = tracker.end_sheets();
  CHECK(std::abs(end[0] - s.base_point().y[0]) < 1e-9);
}

TEST_CASE("point_at reaches the requested sheet") {
  auto c = g5_curve();
  Surface s(c);
  for (unsigned mask = 0; mask < 4; ++mask) {
    const SurfacePoint p = s.point_at(cd(0.3, 0.4), mask);
    CHECK(c.on_curve(p));
    // continuation from base with the prefix must land mask-consistently:
    // re-deriving the mask from a fresh straight continuation is exactly
    // what point_at did, so check curve membership and distinctness instead.
  }
  // the four points over one x are pairwise distinct and split into sign pairs
  std::vector<SurfacePoint> pts;
  for (unsigned mask = 0; mask < 4; ++mask) pts.push_back(s.point_at(cd(0.3, 0.4), mask));
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      double d = 0;
      for (int j = 0; j < 2; ++j) d += std::abs(pts[a].y[j] - pts[b].y[j]);
      CHECK(d > 1e-8);
    }
}
