#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

#include "thomae/curve.hpp"

namespace thomae {

/// Path legs are parametrized by t in [0,1].
struct SegmentLeg {
  cd a, b;
  cd at(double t) const { return a + t * (b - a); }
  cd dxdt(double) const { return b - a; }
};

struct ArcLeg {
  cd center;
  double radius = 0;
  double phi0 = 0;
  double dphi = 0;  // signed sweep; +2pi is a full ccw circle
  cd at(double t) const {
    return center + radius * std::exp(cd(0, phi0 + t * dphi));
  }
  cd dxdt(double t) const {
    return radius * cd(0, dphi) * std::exp(cd(0, phi0 + t * dphi));
  }
};

/// Approach x = lambda + s^2 (a - lambda), s = 1-t; removes the sqrt
/// singularity of first-kind integrands at the ramification point.
struct BranchApproachLeg {
  BranchRef branch;
  cd lambda, a;
  double s(double t) const { return 1.0 - t; }
  cd at(double t) const {
    const double ss = s(t);
    return lambda + ss * ss * (a - lambda);
  }
};

/// Escape x = x_far / s, s = 1-t; t = 1 is the point over infinity.
struct InfinityLeg {
  cd x_far;
  double s(double t) const { return 1.0 - t; }
};

using Leg = std::variant<SegmentLeg, ArcLeg, BranchApproachLeg, InfinityLeg>;

using Route = std::vector<Leg>;

inline cd leg_start(const Leg& leg) {
  return std::visit(
      [](const auto& l) -> cd {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, SegmentLeg>) return l.a;
        else if constexpr (std::is_same_v<T, ArcLeg>) return l.at(0.0);
        else if constexpr (std::is_same_v<T, BranchApproachLeg>) return l.a;
        else return l.x_far;
      },
      leg);
}

/// Distance from point p to segment [a,b].
inline double point_segment_distance(cd p, cd a, cd b) {
  const cd ab = b - a;
  const double L2 = std::norm(ab);
  if (L2 == 0) return std::abs(p - a);
  double t = ((p - a) * std::conj(ab)).real() / L2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace thomae
