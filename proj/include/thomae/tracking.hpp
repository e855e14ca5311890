#pragma once

#include <map>
#include <vector>

#include "thomae/path.hpp"

namespace thomae {

/// Continuation of the n sheet values along one leg. For regular legs the
/// tracked slots are the y_j themselves; the singular legs track desingularized
/// companions instead:
///   BranchApproach: slot j0 holds h with y_j0 = w h, w = s sqrt(a-lambda);
///   Infinity:       slot j holds  g with y_j  = x^m g  (g -> ±1 at infinity).
/// Each slot satisfies slot^2 = S_j(t) for a smooth nonvanishing S_j, and is
/// continued by nearest-square-root steps with bisection refinement.
class LegTracker {
public:
  LegTracker(const FiberProductCurve& curve, Leg leg, std::vector<cd> start_slots);

  const std::vector<cd>& at(double t);

  /// Sheet values y_j at parameter t (regular legs only).
  std::vector<cd> sheets(double t);

  static std::vector<cd> slots_from_sheets(const FiberProductCurve& curve, const Leg& leg,
                                           const std::vector<cd>& y_at_start);
  /// Convert end-of-leg slots back to sheet values where defined (t=1 of a
  /// BranchApproach has y_j0 = 0; Infinity has no finite sheet values).
  static std::vector<cd> sheets_from_slots(const FiberProductCurve& curve, const Leg& leg,
                                           const std::vector<cd>& slots, double t);

  cd slot_sq(int j, double t) const;

private:
  std::vector<cd> advance(const std::vector<cd>& from, double t0, double t1, int depth) const;

  const FiberProductCurve& curve_;
  Leg leg_;
  std::map<double, std::vector<cd>> cache_;
};

/// End-to-end tracked route: hands sheet state across leg boundaries.
class RouteTracker {
public:
  RouteTracker(const FiberProductCurve& curve, Route route, std::vector<cd> start_sheets);

  LegTracker& leg(std::size_t i) { return trackers_[i]; }
  std::size_t size() const { return trackers_.size(); }
  const Route& route() const { return route_; }

  /// Sheet values at the end of the final leg (requires a regular final leg).
  std::vector<cd> end_sheets();

private:
  const FiberProductCurve& curve_;
  Route route_;
  std::vector<LegTracker> trackers_;
};

/// Nearest-square-root selection: the root of `sq` closest to `ref`.
cd nearest_sqrt(cd sq, cd ref);

}  // namespace thomae
