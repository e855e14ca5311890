#include <cmath>

#include "thomae/quadrature.hpp"
#include "thomae/surface.hpp"
#include "thomae/theta.hpp"

namespace thomae {

// I(l, j) = oint_{a_l} v_l(P) u_j(P), with u accumulated from the cycle base
// point z0 along the realized cycle path. Two-level panel scheme: the outer
// integral uses GK15 panels, the inner Abel prefix is advanced panel by panel.
Eigen::VectorXcd Surface::riemann_constant_formula() {
  build_periods();
  const int g = curve_.genus();
  Eigen::VectorXcd K(g);
  if (g == 0) return K;
  const Eigen::MatrixXcd& tau = periods_.tau;
  Eigen::MatrixXcd I = Eigen::MatrixXcd::Zero(g, g);
  const int panels_per_leg = 12;
  for (int l = 0; l < g; ++l) {
    const Route route = cycle_route(hom_.a_combo[l]);
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(g);
    std::vector<cd> y = base_point_.y;
    std::vector<cd> omega(g);
    for (const Leg& leg : route) {
      auto slots0 = LegTracker::slots_from_sheets(curve_, leg, y);
      LegTracker tracker(curve_, leg, slots0);
      auto omega_fn = [&](double t, std::vector<cd>& out) { omega_values(leg, tracker, t, out); };
      for (int p = 0; p < panels_per_leg; ++p) {
        const double t0 = static_cast<double>(p) / panels_per_leg;
        const double t1 = static_cast<double>(p + 1) / panels_per_leg;
        const Eigen::VectorXcd u_start = u;
        auto outer = [&](double t, std::vector<cd>& out) {
          // u(t) = u_start + normalized prefix over [t0, t]
          Eigen::VectorXcd pre = Eigen::VectorXcd::Zero(g);
          if (t > t0) {
            const auto inner = gk15_panel(g, omega_fn, t0, t);
            for (int j = 0; j < g; ++j) pre[j] = inner[j];
          }
          const Eigen::VectorXcd u_t = u_start + to_normalized_ * pre;
          omega_values(leg, tracker, t, omega);
          Eigen::Map<const Eigen::VectorXcd> om(omega.data(), g);
          const cd vl = (to_normalized_ * om)(l);
          for (int j = 0; j < g; ++j) out[j] = vl * u_t[j];
        };
        const auto contrib = gk15_panel(g, outer, t0, t1);
        for (int j = 0; j < g; ++j) I(l, j) += contrib[j];
        const auto step = gk15_panel(g, omega_fn, t0, t1);
        Eigen::VectorXcd step_v(g);
        for (int j = 0; j < g; ++j) step_v[j] = step[j];
        u = u_start + to_normalized_ * step_v;
      }
      y = LegTracker::sheets_from_slots(curve_, leg, tracker.at(1.0), 1.0);
    }
  }
  for (int j = 0; j < g; ++j) {
    K[j] = 0.5 * (1.0 + tau(j, j));
    for (int l = 0; l < g; ++l)
      if (l != j) K[j] -= I(l, j);
  }
  return K;
}

namespace {
// Deterministic generic x-samples for vanishing validation divisors.
cd sample_x(const FiberProductCurve& curve, cd base, int idx) {
  cd centroid = 0.0;
  for (int k = 0; k < curve.branch_count(); ++k) centroid += curve.lambda(k);
  centroid /= static_cast<double>(curve.branch_count());
  double radius = 1.0;
  for (int k = 0; k < curve.branch_count(); ++k)
    radius = std::max(radius, std::abs(curve.lambda(k) - centroid));
  return centroid + std::polar(radius * (0.45 + 0.11 * (idx % 5)), 0.83 * idx + 0.37);
}
}  // namespace

Eigen::VectorXcd Surface::riemann_constant() {
  if (riemann_constant_) return *riemann_constant_;
  build_periods();
  const int g = curve_.genus();
  if (g == 0) {
    riemann_constant_ = Eigen::VectorXcd();
    return *riemann_constant_;
  }
  const Eigen::VectorXcd K0 = riemann_constant_formula();
  const ThetaContext ctx(periods_.tau, 1e-13);

  // Validation divisors: g-1 generic points each; Riemann vanishing demands
  // theta(u(E) + K) = 0.
  const int trials = 3;
  std::vector<Eigen::VectorXcd> uE(trials, Eigen::VectorXcd::Zero(g));
  for (int t = 0; t < trials; ++t)
    for (int e = 0; e < g - 1; ++e) {
      const int idx = t * (g - 1) + e;
      uE[t] += abel_to(sample_x(curve_, base_x_, idx),
                       static_cast<unsigned>(idx % curve_.sheet_count()));
    }
  const double scale0 = std::max(ctx.normalized_abs(Eigen::VectorXcd::Zero(g)), 1e-6);
  auto residual = [&](const Eigen::VectorXcd& K) {
    double worst = 0;
    for (int t = 0; t < trials; ++t)
      worst = std::max(worst, ctx.normalized_abs(uE[t] + K));
    return worst / scale0;
  };

  const double direct = residual(K0);
  if (direct < 1e-5) {
    riemann_constant_ = K0;
    return *riemann_constant_;
  }
  // Convention slack shows up as a half-period offset; search and pin it.
  double best = 1e300, second = 1e300;
  Eigen::VectorXcd bestK;
  for (long h = 0; h < (1L << (2 * g)); ++h) {
    Eigen::VectorXcd K = K0;
    for (int i = 0; i < g; ++i) {
      if (h & (1L << i)) K += 0.5 * periods_.tau.col(i);
      if (h & (1L << (g + i))) K[i] += 0.5;
    }
    const double r = residual(K);
    if (r < best) {
      second = best;
      best = r;
      bestK = K;
    } else {
      second = std::min(second, r);
    }
  }
  if (best > 1e-5 || second < 100 * best)
    throw Error(errc::near_vanishing,
                "Riemann constant validation failed to isolate a unique candidate");
  riemann_constant_ = bestK;
  return *riemann_constant_;
}

}  // namespace thomae
