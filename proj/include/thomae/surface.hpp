#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>

#include "thomae/curve.hpp"
#include "thomae/divisor.hpp"
#include "thomae/homology.hpp"
#include "thomae/path.hpp"
#include "thomae/tracking.hpp"

namespace thomae {

struct SurfaceOptions {
  std::optional<cd> base_point;
  double integration_rel_tol = 1e-12;
  double clearance_factor = 1e-3;  // clearance = factor * min pairwise distance
};

/// Sheet permutations of the covering map; every generator is the Z_2^n
/// translation by the branch factor's unit vector.
struct MonodromyRepresentation {
  cd base_x{};
  std::vector<unsigned> translations;  // per flat branch index
  std::vector<int> permutation(int flat, int sheets) const {
    std::vector<int> p(sheets);
    for (int s = 0; s < sheets; ++s) p[s] = s ^ static_cast<int>(translations[flat]);
    return p;
  }
};

struct SheetTrackedPath {
  std::vector<cd> waypoints;
  std::vector<std::vector<cd>> y_tracks;  // per waypoint, n sheet values
  double max_step = 0;
  double tolerance = 0;
};

struct PeriodData {
  Eigen::MatrixXcd A, B, tau;  // rows = cycles, columns = differential order
  cd detC{};
  double tau_symmetry_residual = 0;
  double min_eig_im_tau = 0;
  double cond_A = 0;
  bool orientation_flipped = false;
  std::uint64_t homology_fingerprint = 0;
};

/// Spec-level continuation entry point: adaptive sheet tracking along a
/// user-supplied polyline with a clearance guard.
SheetTrackedPath continue_sheets(const FiberProductCurve& curve,
                                 const std::vector<cd>& waypoints, const SurfacePoint& start,
                                 double clearance);

/// All transcendental per-curve state: base point, loop routes, monodromy,
/// homology, periods, Abel-map caches, Riemann constant.
class Surface {
public:
  explicit Surface(FiberProductCurve curve, SurfaceOptions opts = {});

  const FiberProductCurve& curve() const { return curve_; }
  const SurfaceOptions& options() const { return opts_; }
  int genus() const { return curve_.genus(); }
  cd base_x() const { return base_x_; }
  const SurfacePoint& base_point() const { return base_point_; }
  double clearance() const { return clearance_; }

  const std::vector<int>& branch_order() const { return branch_order_; }
  const MonodromyRepresentation& monodromy() const { return monodromy_; }
  const HomologyCombinatorics& homology();
  const PeriodData& periods();
  const Eigen::MatrixXcd& to_normalized();  // A^{-T}; maps plain integrals to normalized

  std::vector<cd> sheets_for_mask(unsigned mask) const;
  unsigned mask_for_sheets(const std::vector<cd>& y) const;
  SurfacePoint point_at(cd x, unsigned mask);

  Route loop_route(int flat, cd from) const;
  Route route_between(cd from, cd to) const;
  Route mask_prefix_route(unsigned mask) const;  // based loops realizing a deck element

  /// Integrals of the g non-normalized differentials along a tracked route.
  Eigen::VectorXcd integrate_differentials(const Route& route,
                                           const std::vector<cd>& start_sheets,
                                           std::vector<cd>* end_sheets = nullptr) const;

  Eigen::VectorXcd abel_along(const Route& route, const std::vector<cd>& start_sheets);
  Eigen::VectorXcd abel_to(cd x, unsigned mask);  // canonical route from the base point

  struct FiberEntry {
    Eigen::VectorXcd u;          // normalized Abel vector of the preimage
    std::vector<cd> y_at_branch; // sheet values of the regular factors at lambda
    cd h0{};                     // limit of y_j / t at the ramification point
    unsigned mask = 0;           // prefix mask used to reach it
  };
  const std::vector<FiberEntry>& fiber(int flat);
  Eigen::VectorXcd fiber_u_sum(int flat);
  Eigen::VectorXcd infinity_u_sum();
  Eigen::VectorXcd riemann_constant();
  Eigen::VectorXcd divisor_e(const BetaVector& beta);

  std::uint64_t fingerprint();

  /// Path legs of a canonical cycle (a_combo/b_combo row), based at z0.
  Route cycle_route(const std::vector<long long>& combo);

private:
  void select_base_point();
  void compute_monodromy();
  void build_atoms();
  void build_periods();
  Eigen::VectorXcd riemann_constant_formula();
  /// dx-coefficients of the g non-normalized differentials times dx/dt.
  void omega_values(const Leg& leg, LegTracker& tracker, double t,
                    std::vector<cd>& out) const;

  FiberProductCurve curve_;
  SurfaceOptions opts_;
  cd base_x_{};
  SurfacePoint base_point_;
  double clearance_ = 0;
  std::vector<double> loop_radius_;  // per flat branch index
  std::vector<int> branch_order_;    // flat indices sorted by angle from base
  MonodromyRepresentation monodromy_;
  std::vector<DifferentialIndex> basis_;

  bool homology_built_ = false;
  HomologyCombinatorics hom_;
  // atom integrals: per sorted position k and sheet w, the g-vector over moves
  std::vector<std::vector<Eigen::VectorXcd>> atoms_;
  std::vector<Eigen::VectorXcd> fund_integrals_;  // per fundamental cycle
  bool periods_built_ = false;
  PeriodData periods_;
  Eigen::MatrixXcd to_normalized_;

  std::map<int, std::vector<FiberEntry>> fiber_cache_;
  std::optional<Eigen::VectorXcd> infinity_u_;
  std::optional<Eigen::VectorXcd> riemann_constant_;
};

/// dtau/dlambda of Thm-variational form: 1/2 sum over the fiber of v v^T
/// evaluated through the branch-local dt coefficients.
Eigen::MatrixXcd variational_prediction(Surface& s, int flat);

/// Central-difference dtau/dlambda with matched homology construction.
Eigen::MatrixXcd dtau_dlambda_fd(const FiberProductCurve& curve, const SurfaceOptions& opts,
                                 int flat, double h, cd pinned_base,
                                 const std::vector<int>& pinned_order);

}  // namespace thomae
