#include "thomae/tracking.hpp"

#include <cmath>

namespace thomae {

cd nearest_sqrt(cd sq, cd ref) {
  const cd r = std::sqrt(sq);
  return std::abs(r - ref) <= std::abs(-r - ref) ? r : -r;
}

LegTracker::LegTracker(const FiberProductCurve& curve, Leg leg, std::vector<cd> start_slots)
    : curve_(curve), leg_(std::move(leg)) {
  cache_.emplace(0.0, std::move(start_slots));
}

cd LegTracker::slot_sq(int j, double t) const {
  return std::visit(
      [&](const auto& l) -> cd {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, SegmentLeg> || std::is_same_v<T, ArcLeg>) {
          return curve_.f(j, l.at(t));
        } else if constexpr (std::is_same_v<T, BranchApproachLeg>) {
          const cd x = l.at(t);
          if (j == l.branch.factor) return curve_.f_skip(j, l.branch.index, x);
          return curve_.f(j, x);
        } else {  // InfinityLeg: product form of f_j(x)/x^{2m}, no overflow
          const double s = l.s(t);
          cd p = 1.0;
          for (const cd& lam : curve_.lambdas(j)) p *= (1.0 - lam * s / l.x_far);
          return p;
        }
      },
      leg_);
}

std::vector<cd> LegTracker::advance(const std::vector<cd>& from, double t0, double t1,
                                    int depth) const {
  std::vector<cd> next(from.size());
  bool safe = true;
  for (int j = 0; j < curve_.n(); ++j) {
    const cd cand = nearest_sqrt(slot_sq(j, t1), from[j]);
    if (std::abs(cand - from[j]) > 0.5 * std::abs(cand)) safe = false;
    next[j] = cand;
  }
  if (safe) return next;
  if (depth <= 0)
    throw Error(errc::step_underflow, "sheet continuation step refinement exhausted");
  const double tm = 0.5 * (t0 + t1);
  return advance(advance(from, t0, tm, depth - 1), tm, t1, depth - 1);
}

const std::vector<cd>& LegTracker::at(double t) {
  auto it = cache_.lower_bound(t);
  if (it != cache_.end() && it->first == t) return it->second;
  // Continue from the nearest cached parameter (prefer the one below).
  auto from = it == cache_.begin() ? it : std::prev(it);
  std::vector<cd> v = advance(from->second, from->first, t, 52);
  auto [ins, ok] = cache_.emplace(t, std::move(v));
  return ins->second;
}

std::vector<cd> LegTracker::sheets(double t) {
  return sheets_from_slots(curve_, leg_, at(t), t);
}

std::vector<cd> LegTracker::slots_from_sheets(const FiberProductCurve& curve, const Leg& leg,
                                              const std::vector<cd>& y) {
  return std::visit(
      [&](const auto& l) -> std::vector<cd> {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, SegmentLeg> || std::is_same_v<T, ArcLeg>) {
          return y;
        } else if constexpr (std::is_same_v<T, BranchApproachLeg>) {
          std::vector<cd> slots = y;
          const cd r = std::sqrt(l.a - l.lambda);  // w(t=0) = r
          slots[l.branch.factor] = y[l.branch.factor] / r;
          return slots;
        } else {  // InfinityLeg
          std::vector<cd> slots = y;
          const cd xm = std::pow(l.x_far, curve.m());
          for (int j = 0; j < curve.n(); ++j) slots[j] = y[j] / xm;
          return slots;
        }
      },
      leg);
}

std::vector<cd> LegTracker::sheets_from_slots(const FiberProductCurve& curve, const Leg& leg,
                                              const std::vector<cd>& slots, double t) {
  return std::visit(
      [&](const auto& l) -> std::vector<cd> {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, SegmentLeg> || std::is_same_v<T, ArcLeg>) {
          return slots;
        } else if constexpr (std::is_same_v<T, BranchApproachLeg>) {
          std::vector<cd> y = slots;
          const cd w = l.s(t) * std::sqrt(l.a - l.lambda);
          y[l.branch.factor] = w * slots[l.branch.factor];
          return y;
        } else {
          if (l.s(t) == 0.0)
            throw Error(errc::invalid_input, "no finite sheet values at infinity");
          std::vector<cd> y = slots;
          const cd x = l.x_far / l.s(t);
          const cd xm = std::pow(x, curve.m());
          // y = x^m g with g^2 = prod(1 - lambda s / x_far) = f(x) / x^{2m}.
          for (int j = 0; j < curve.n(); ++j) y[j] = xm * slots[j];
          return y;
        }
      },
      leg);
}

RouteTracker::RouteTracker(const FiberProductCurve& curve, Route route,
                           std::vector<cd> start_sheets)
    : curve_(curve), route_(std::move(route)) {
  std::vector<cd> y = std::move(start_sheets);
  trackers_.reserve(route_.size());
  for (std::size_t i = 0; i < route_.size(); ++i) {
    std::vector<cd> slots = LegTracker::slots_from_sheets(curve_, route_[i], y);
    trackers_.emplace_back(curve_, route_[i], std::move(slots));
    if (i + 1 < route_.size())
      y = trackers_.back().sheets(1.0);
  }
}

std::vector<cd> RouteTracker::end_sheets() { return trackers_.back().sheets(1.0); }

}  // namespace thomae
