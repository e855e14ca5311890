#include "thomae/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thomae/quadrature.hpp"

namespace thomae {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angle_of(cd z) { return std::arg(z); }
}  // namespace

SheetTrackedPath continue_sheets(const FiberProductCurve& curve,
                                 const std::vector<cd>& waypoints, const SurfacePoint& start,
                                 double clearance) {
  if (waypoints.size() < 2) throw Error(errc::invalid_input, "path needs at least two waypoints");
  if (std::abs(waypoints.front() - start.x) > 1e-12 * (1 + std::abs(start.x)))
    throw Error(errc::invalid_input, "start point does not match the first waypoint");
  curve.require_on_curve(start);
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    for (int j = 0; j < curve.n(); ++j)
      for (const cd& l : curve.lambdas(j))
        if (point_segment_distance(l, waypoints[i], waypoints[i + 1]) < clearance)
          throw Error(errc::clearance_violation,
                      "waypoint segment passes a branch point closer than the clearance");
  }
  SheetTrackedPath out;
  out.tolerance = clearance;
  std::vector<cd> y = start.y;
  out.waypoints.push_back(waypoints[0]);
  out.y_tracks.push_back(y);
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    LegTracker tracker(curve, SegmentLeg{waypoints[i], waypoints[i + 1]}, y);
    y = tracker.sheets(1.0);
    out.waypoints.push_back(waypoints[i + 1]);
    out.y_tracks.push_back(y);
    out.max_step = std::max(out.max_step, std::abs(waypoints[i + 1] - waypoints[i]));
  }
  return out;
}

Surface::Surface(FiberProductCurve curve, SurfaceOptions opts)
    : curve_(std::move(curve)), opts_(opts) {
  clearance_ = opts_.clearance_factor * curve_.min_pair_distance();
  basis_ = differential_basis(curve_);
  select_base_point();
  compute_monodromy();
}

void Surface::select_base_point() {
  const int total = curve_.branch_count();
  std::vector<cd> lambdas(total);
  cd centroid = 0.0;
  for (int k = 0; k < total; ++k) {
    lambdas[k] = curve_.lambda(k);
    centroid += lambdas[k];
  }
  centroid /= static_cast<double>(total);
  double radius = 1.0;
  for (const cd& l : lambdas) radius = std::max(radius, std::abs(l - centroid));

  auto score = [&](cd cand) {
    // Reject candidates with nearly collinear branch directions; reward
    // segment clearance between every cut and every other branch point.
    double best = 1e30;
    std::vector<double> angles;
    for (const cd& l : lambdas) angles.push_back(angle_of(l - cand));
    std::sort(angles.begin(), angles.end());
    for (std::size_t i = 0; i < angles.size(); ++i) {
      const double next = i + 1 < angles.size() ? angles[i + 1] : angles[0] + kTwoPi;
      best = std::min(best, (next - angles[i]) * radius);
    }
    for (int k = 0; k < total; ++k)
      for (int l = 0; l < total; ++l) {
        if (l == k) continue;
        best = std::min(best, point_segment_distance(lambdas[l], cand, lambdas[k]));
      }
    return best;
  };

  if (opts_.base_point) {
    base_x_ = *opts_.base_point;
    if (score(base_x_) < 1e-9 * curve_.scale())
      throw Error(errc::invalid_input, "configured base point is degenerate for this curve");
  } else {
    double best_score = -1;
    cd best;
    for (int i = 0; i < 24; ++i) {
      const double ang = -std::numbers::pi / 2 + 0.71 * i;
      const double rad = radius * (1.8 + 0.13 * (i % 5));
      const cd cand = centroid + std::polar(rad, ang);
      const double sc = score(cand);
      if (sc > best_score) {
        best_score = sc;
        best = cand;
      }
    }
    base_x_ = best;
  }

  base_point_.x = base_x_;
  base_point_.y.resize(curve_.n());
  for (int j = 0; j < curve_.n(); ++j) base_point_.y[j] = std::sqrt(curve_.f(j, base_x_));
  base_point_.is_branch = false;

  branch_order_.resize(total);
  for (int k = 0; k < total; ++k) branch_order_[k] = k;
  std::sort(branch_order_.begin(), branch_order_.end(), [&](int a, int b) {
    const double aa = angle_of(curve_.lambda(a) - base_x_);
    const double ab = angle_of(curve_.lambda(b) - base_x_);
    if (aa != ab) return aa < ab;
    return std::abs(curve_.lambda(a) - base_x_) < std::abs(curve_.lambda(b) - base_x_);
  });

  loop_radius_.assign(total, 0.0);
  for (int k = 0; k < total; ++k) {
    double d = std::abs(curve_.lambda(k) - base_x_);
    for (int l = 0; l < total; ++l)
      if (l != k) d = std::min(d, std::abs(curve_.lambda(k) - curve_.lambda(l)));
    loop_radius_[k] = 0.42 * d;
  }
}

std::vector<cd> Surface::sheets_for_mask(unsigned mask) const {
  std::vector<cd> y = base_point_.y;
  for (int j = 0; j < curve_.n(); ++j)
    if (mask & (1u << j)) y[j] = -y[j];
  return y;
}

unsigned Surface::mask_for_sheets(const std::vector<cd>& y) const {
  unsigned mask = 0;
  for (int j = 0; j < curve_.n(); ++j) {
    const cd ref = base_point_.y[j];
    if (std::abs(y[j] - ref) > std::abs(y[j] + ref)) mask |= 1u << j;
  }
  return mask;
}

Route Surface::route_between(cd from, cd to) const {
  // Straight segment, bulged around any branch point that comes too close.
  struct Obstacle {
    double t;
    int flat;
  };
  std::vector<Obstacle> obstacles;
  const cd dir = to - from;
  const double len2 = std::norm(dir);
  for (int k = 0; k < curve_.branch_count(); ++k) {
    const cd l = curve_.lambda(k);
    if (std::abs(l - to) < 1e-14 || std::abs(l - from) < 1e-14) continue;
    const double guard = 0.9 * loop_radius_[k];
    if (point_segment_distance(l, from, to) < guard) {
      double t = len2 > 0 ? ((l - from) * std::conj(dir)).real() / len2 : 0.0;
      obstacles.push_back({std::clamp(t, 0.0, 1.0), k});
    }
  }
  std::sort(obstacles.begin(), obstacles.end(), [](auto& a, auto& b) { return a.t < b.t; });

  Route route;
  cd cur = from;
  for (const auto& ob : obstacles) {
    const cd l = curve_.lambda(ob.flat);
    const double R = 0.9 * loop_radius_[ob.flat];
    // chord of the circle |x - l| = R cut by the segment
    const cd foot = from + std::clamp(((l - from) * std::conj(dir)).real() / len2, 0.0, 1.0) * dir;
    const double h = std::abs(l - foot);
    const double half = std::sqrt(std::max(R * R - h * h, 0.0));
    const cd unit = dir / std::sqrt(len2);
    const cd e1 = foot - half * unit, e2 = foot + half * unit;
    if (std::abs(e1 - cur) > 1e-15) route.push_back(SegmentLeg{cur, e1});
    const double phi1 = angle_of(e1 - l), phi2 = angle_of(e2 - l);
    double dphi = phi2 - phi1;
    while (dphi <= -std::numbers::pi) dphi += kTwoPi;
    while (dphi > std::numbers::pi) dphi -= kTwoPi;
    // choose the arc whose midpoint avoids the side of the obstacle
    const double side_l = ((l - from) * std::conj(dir)).imag();
    auto mid_side = [&](double sweep) {
      const cd mid = l + std::polar(R, phi1 + 0.5 * sweep);
      return ((mid - from) * std::conj(dir)).imag();
    };
    double sweep = dphi;
    if (side_l != 0 && mid_side(sweep) * side_l > 0) sweep = dphi - (dphi > 0 ? kTwoPi : -kTwoPi);
    route.push_back(ArcLeg{l, R, phi1, sweep});
    cur = e2;
  }
  if (std::abs(to - cur) > 0 || route.empty()) route.push_back(SegmentLeg{cur, to});
  return route;
}

Route Surface::loop_route(int flat, cd from) const {
  const cd l = curve_.lambda(flat);
  const double rho = loop_radius_[flat];
  const cd dir = (l - from) / std::abs(l - from);
  const cd approach = l - rho * dir;
  Route out = route_between(from, approach);
  out.push_back(ArcLeg{l, rho, angle_of(approach - l), kTwoPi});
  Route back = route_between(from, approach);
  for (auto it = back.rbegin(); it != back.rend(); ++it) {
    std::visit(
        [&](auto leg) {
          using T = std::decay_t<decltype(leg)>;
          if constexpr (std::is_same_v<T, SegmentLeg>) {
            out.push_back(SegmentLeg{leg.b, leg.a});
          } else if constexpr (std::is_same_v<T, ArcLeg>) {
            out.push_back(ArcLeg{leg.center, leg.radius, leg.phi0 + leg.dphi, -leg.dphi});
          } else {
            throw Error(errc::invalid_input, "unexpected leg in a loop route");
          }
        },
        *it);
  }
  return out;
}

Route Surface::mask_prefix_route(unsigned mask) const {
  Route route;
  for (int j = 0; j < curve_.n(); ++j) {
    if (!(mask & (1u << j))) continue;
    const Route loop = loop_route(curve_.flat_index({j, 0}), base_x_);
    route.insert(route.end(), loop.begin(), loop.end());
  }
  return route;
}

void Surface::compute_monodromy() {
  monodromy_.base_x = base_x_;
  monodromy_.translations.assign(curve_.branch_count(), 0);
  for (int k = 0; k < curve_.branch_count(); ++k) {
    RouteTracker tracker(curve_, loop_route(k, base_x_), base_point_.y);
    const unsigned mask = mask_for_sheets(tracker.end_sheets());
    if (mask != (1u << curve_.branch_ref(k).factor))
      throw Error(errc::step_underflow,
                  "monodromy of a branch loop is not the expected sheet flip");
    monodromy_.translations[k] = mask;
  }
}

const HomologyCombinatorics& Surface::homology() {
  if (!homology_built_) {
    std::vector<unsigned> trans;
    for (int k : branch_order_)
      trans.push_back(monodromy_.translations[k]);
    hom_ = build_cover_homology(curve_.sheet_count(), trans);
    if (hom_.genus != curve_.genus())
      throw Error(errc::rank_deficiency, "cell-complex genus disagrees with the formula");
    homology_built_ = true;
  }
  return hom_;
}

void Surface::omega_values(const Leg& leg, LegTracker& tracker, double t,
                           std::vector<cd>& out) const {
  const int g = static_cast<int>(basis_.size());
  const auto& slots = tracker.at(t);
  std::visit(
      [&](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, SegmentLeg> || std::is_same_v<T, ArcLeg>) {
          const cd x = l.at(t), dx = l.dxdt(t);
          for (int j = 0; j < g; ++j) {
            cd denom = 1.0;
            for (int f = 0; f < curve_.n(); ++f)
              if (basis_[j].vmask & (1u << f)) denom *= slots[f];
            out[j] = std::pow(x, basis_[j].l) * dx / denom;
          }
        } else if constexpr (std::is_same_v<T, BranchApproachLeg>) {
          const double s = l.s(t);
          const cd x = l.at(t);
          const cd r = std::sqrt(l.a - l.lambda);
          const int jb = l.branch.factor;
          for (int j = 0; j < g; ++j) {
            cd denom = 1.0;
            for (int f = 0; f < curve_.n(); ++f) {
              if (!(basis_[j].vmask & (1u << f)) || f == jb) continue;
              denom *= slots[f];
            }
            if (basis_[j].vmask & (1u << jb)) {
              out[j] = -2.0 * std::pow(x, basis_[j].l) * r / (slots[jb] * denom);
            } else {
              out[j] = -2.0 * s * std::pow(x, basis_[j].l) * (l.a - l.lambda) / denom;
            }
          }
        } else {  // InfinityLeg
          const double s = l.s(t);
          for (int j = 0; j < g; ++j) {
            const int sv = basis_[j].support;
            const int e2 = curve_.m() * sv - basis_[j].l - 2;
            cd denom = 1.0;
            for (int f = 0; f < curve_.n(); ++f)
              if (basis_[j].vmask & (1u << f)) denom *= slots[f];
            out[j] = std::pow(l.x_far, basis_[j].l + 1 - curve_.m() * sv) *
                     std::pow(s, e2) / denom;
          }
        }
      },
      leg);
}

Eigen::VectorXcd Surface::integrate_differentials(const Route& route,
                                                  const std::vector<cd>& start_sheets,
                                                  std::vector<cd>* end_sheets) const {
  const int g = static_cast<int>(basis_.size());
  Eigen::VectorXcd total = Eigen::VectorXcd::Zero(g);
  std::vector<cd> y = start_sheets;
  for (std::size_t li = 0; li < route.size(); ++li) {
    const Leg& leg = route[li];
    auto slots0 = LegTracker::slots_from_sheets(curve_, leg, y);
    LegTracker tracker(curve_, leg, slots0);
    auto integrand = [&](double t, std::vector<cd>& out) { omega_values(leg, tracker, t, out); };
    VectorQuad quad(g, integrand);
    const auto part = quad.integrate(0.0, 1.0, opts_.integration_rel_tol);
    for (int j = 0; j < g; ++j) total[j] += part[j];
    if (li + 1 < route.size()) {
      y = LegTracker::sheets_from_slots(curve_, leg, tracker.at(1.0), 1.0);
    } else if (end_sheets) {
      const bool regular = std::holds_alternative<SegmentLeg>(leg) ||
                           std::holds_alternative<ArcLeg>(leg);
      if (regular) *end_sheets = LegTracker::sheets_from_slots(curve_, leg, tracker.at(1.0), 1.0);
      else *end_sheets = tracker.at(1.0);  // slots of the singular leg
    }
  }
  return total;
}

void Surface::build_atoms() {
  homology();
  const int N = curve_.branch_count();
  const int d = curve_.sheet_count();
  atoms_.assign(N, std::vector<Eigen::VectorXcd>(d));
  for (int pos = 0; pos < N; ++pos) {
    const int flat = branch_order_[pos];
    const Route route = loop_route(flat, base_x_);
    for (int w = 0; w < d; ++w) {
      std::vector<cd> end;
      atoms_[pos][w] =
          integrate_differentials(route, sheets_for_mask(static_cast<unsigned>(w)), &end);
      const unsigned em = mask_for_sheets(end);
      if (em != (static_cast<unsigned>(w) ^ monodromy_.translations[flat]))
        throw Error(errc::step_underflow, "atom integral ended on an unexpected sheet");
    }
  }
  fund_integrals_.assign(hom_.rank, Eigen::VectorXcd::Zero(basis_.size()));
  for (int i = 0; i < hom_.rank; ++i)
    for (const SignedMove& mv : hom_.words[i])
      fund_integrals_[i] += static_cast<double>(mv.sign) * atoms_[mv.k][mv.w];
}

void Surface::build_periods() {
  if (periods_built_) return;
  homology();
  const int g = curve_.genus();
  if (g == 0) {
    periods_built_ = true;
    periods_.homology_fingerprint = hom_.fingerprint;
    return;
  }
  build_atoms();
  auto combine = [&](const IntMat& combos) {
    Eigen::MatrixXcd mat(combos.size(), basis_.size());
    for (std::size_t c = 0; c < combos.size(); ++c) {
      Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(basis_.size());
      for (int i = 0; i < hom_.rank; ++i)
        if (combos[c][i] != 0) acc += static_cast<double>(combos[c][i]) * fund_integrals_[i];
      mat.row(c) = acc.transpose();
    }
    return mat;
  };
  Eigen::MatrixXcd A = combine(hom_.a_combo);
  Eigen::MatrixXcd B = combine(hom_.b_combo);

  auto assemble = [&](const Eigen::MatrixXcd& Am, const Eigen::MatrixXcd& Bm) {
    Eigen::MatrixXcd tau = Bm * Am.inverse();
    return tau;
  };
  Eigen::MatrixXcd tau = assemble(A, B);
  Eigen::MatrixXd imtau = tau.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (imtau + imtau.transpose()));
  bool flipped = false;
  if (es.eigenvalues().minCoeff() < 0) {
    // wrong global orientation of the canonical basis: (a, b) -> (b, -a)
    flipped = true;
    std::swap(hom_.a_combo, hom_.b_combo);
    for (auto& row : hom_.b_combo)
      for (auto& x : row) x = -x;
    A = combine(hom_.a_combo);
    B = combine(hom_.b_combo);
    tau = assemble(A, B);
    imtau = tau.imag();
    es.compute(0.5 * (imtau + imtau.transpose()));
  }
  periods_.A = A;
  periods_.B = B;
  periods_.tau = tau;
  periods_.detC = A.determinant();
  periods_.tau_symmetry_residual = (tau - tau.transpose()).cwiseAbs().maxCoeff();
  periods_.min_eig_im_tau = es.eigenvalues().minCoeff();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  periods_.cond_A = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
  periods_.orientation_flipped = flipped;
  periods_.homology_fingerprint = hom_.fingerprint;
  if (periods_.min_eig_im_tau <= 0)
    throw Error(errc::rank_deficiency, "Im tau is not positive definite after orientation fix");
  if (periods_.cond_A > 1e10)
    throw Error(errc::ill_conditioned, "a-period matrix is numerically singular");
  to_normalized_ = A.inverse().transpose();
  periods_built_ = true;
}

const PeriodData& Surface::periods() {
  build_periods();
  return periods_;
}

const Eigen::MatrixXcd& Surface::to_normalized() {
  build_periods();
  return to_normalized_;
}

SurfacePoint Surface::point_at(cd x, unsigned mask) {
  Route route = mask_prefix_route(mask);
  const Route seg = route_between(base_x_, x);
  route.insert(route.end(), seg.begin(), seg.end());
  RouteTracker tracker(curve_, route, base_point_.y);
  SurfacePoint p;
  p.x = x;
  p.y = tracker.end_sheets();
  return p;
}

Eigen::VectorXcd Surface::abel_along(const Route& route, const std::vector<cd>& start_sheets) {
  build_periods();
  return to_normalized_ * integrate_differentials(route, start_sheets);
}

Eigen::VectorXcd Surface::abel_to(cd x, unsigned mask) {
  Route route = mask_prefix_route(mask);
  const Route seg = route_between(base_x_, x);
  route.insert(route.end(), seg.begin(), seg.end());
  return abel_along(route, base_point_.y);
}

const std::vector<Surface::FiberEntry>& Surface::fiber(int flat) {
  auto it = fiber_cache_.find(flat);
  if (it != fiber_cache_.end()) return it->second;
  build_periods();
  const BranchRef b = curve_.branch_ref(flat);
  const cd l = curve_.lambda(flat);
  const double rho = loop_radius_[flat];
  const cd dir = (l - base_x_) / std::abs(l - base_x_);
  const cd approach = l - rho * dir;
  std::vector<FiberEntry> entries;
  for (unsigned mask = 0; mask < static_cast<unsigned>(curve_.sheet_count()); ++mask) {
    if (mask & (1u << b.factor)) continue;  // transversal of Z_2^n / <e_j>
    Route route = mask_prefix_route(mask);
    const Route seg = route_between(base_x_, approach);
    route.insert(route.end(), seg.begin(), seg.end());
    route.push_back(BranchApproachLeg{b, l, approach});
    std::vector<cd> end_slots;
    const Eigen::VectorXcd raw = integrate_differentials(route, base_point_.y, &end_slots);
    FiberEntry e;
    e.u = to_normalized_ * raw;
    e.y_at_branch = end_slots;  // slot at b.factor holds h, others hold y(lambda)
    e.h0 = end_slots[b.factor];
    e.y_at_branch[b.factor] = 0.0;
    e.mask = mask;
    entries.push_back(std::move(e));
  }
  return fiber_cache_.emplace(flat, std::move(entries)).first->second;
}

Eigen::VectorXcd Surface::fiber_u_sum(int flat) {
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(curve_.genus());
  for (const auto& e : fiber(flat)) s += e.u;
  return s;
}

Eigen::VectorXcd Surface::infinity_u_sum() {
  if (infinity_u_) return *infinity_u_;
  build_periods();
  cd centroid = 0.0;
  for (int k = 0; k < curve_.branch_count(); ++k) centroid += curve_.lambda(k);
  centroid /= static_cast<double>(curve_.branch_count());
  double radius = 1.0;
  for (int k = 0; k < curve_.branch_count(); ++k)
    radius = std::max(radius, std::abs(curve_.lambda(k) - centroid));
  const cd dir = (base_x_ - centroid) / std::abs(base_x_ - centroid);
  const cd far = base_x_ + dir * (25.0 * radius);

  Eigen::VectorXcd total = Eigen::VectorXcd::Zero(curve_.genus());
  for (unsigned mask = 0; mask < static_cast<unsigned>(curve_.sheet_count()); ++mask) {
    Route route = mask_prefix_route(mask);
    const Route seg = route_between(base_x_, far);
    route.insert(route.end(), seg.begin(), seg.end());
    route.push_back(InfinityLeg{far});
    total += abel_along(route, base_point_.y);
  }
  infinity_u_ = total;
  return total;
}

Eigen::VectorXcd Surface::divisor_e(const BetaVector& beta) {
  require_shape(curve_, beta);
  Eigen::VectorXcd e = riemann_constant() - infinity_u_sum();
  for (int flat = 0; flat < curve_.branch_count(); ++flat)
    if (beta.at_flat(flat)) e += fiber_u_sum(flat);
  return e;
}

Route Surface::cycle_route(const std::vector<long long>& combo) {
  homology();
  Route route;
  for (int i = 0; i < hom_.rank; ++i) {
    if (combo[i] == 0) continue;
    const long long reps = std::llabs(combo[i]);
    for (long long rep = 0; rep < reps; ++rep) {
      std::vector<SignedMove> word = hom_.words[i];
      if (combo[i] < 0) {
        std::reverse(word.begin(), word.end());
        for (auto& mv : word) mv.sign = -mv.sign;
      }
      for (const SignedMove& mv : word) {
        Route loop = loop_route(branch_order_[mv.k], base_x_);
        if (mv.sign < 0) {
          Route rev;
          for (auto it = loop.rbegin(); it != loop.rend(); ++it) {
            std::visit(
                [&](auto leg) {
                  using T = std::decay_t<decltype(leg)>;
                  if constexpr (std::is_same_v<T, SegmentLeg>) {
                    rev.push_back(SegmentLeg{leg.b, leg.a});
                  } else if constexpr (std::is_same_v<T, ArcLeg>) {
                    rev.push_back(ArcLeg{leg.center, leg.radius, leg.phi0 + leg.dphi, -leg.dphi});
                  } else {
                    throw Error(errc::invalid_input, "unexpected leg in cycle route");
                  }
                },
                *it);
          }
          loop = std::move(rev);
        }
        route.insert(route.end(), loop.begin(), loop.end());
      }
    }
  }
  return route;
}

std::uint64_t Surface::fingerprint() {
  homology();
  return hom_.fingerprint;
}

Eigen::MatrixXcd variational_prediction(Surface& s, int flat) {
  const auto& curve = s.curve();
  const int g = curve.genus();
  const BranchRef b = curve.branch_ref(flat);
  const auto basis = differential_basis(curve);
  Eigen::MatrixXcd pred = Eigen::MatrixXcd::Zero(g, g);
  for (const auto& entry : s.fiber(flat)) {
    BranchSheet sheet{entry.y_at_branch, entry.h0};
    Eigen::VectorXcd c(g);
    for (int j = 0; j < g; ++j) {
      if (basis[j].vmask & (1u << b.factor))
        c[j] = branch_local_coefficient(curve, basis[j], b, sheet);
      else
        c[j] = 0.0;  // differential vanishes to order >= 1 in t at this fiber
    }
    const Eigen::VectorXcd v = s.to_normalized() * c;
    pred += 0.5 * v * v.transpose();
  }
  return pred;
}

Eigen::MatrixXcd dtau_dlambda_fd(const FiberProductCurve& curve, const SurfaceOptions& opts,
                                 int flat, double h, cd pinned_base,
                                 const std::vector<int>& pinned_order) {
  auto perturbed = [&](double sign) {
    std::vector<std::vector<cd>> pts;
    for (const auto& f : curve.factors()) pts.push_back(f.branch_points);
    const BranchRef b = curve.branch_ref(flat);
    pts[b.factor][b.index] += sign * h;
    FiberProductCurve pc = FiberProductCurve::validate(curve.n(), curve.m(), pts);
    SurfaceOptions po = opts;
    po.base_point = pinned_base;
    Surface s(std::move(pc), po);
    if (s.branch_order() != pinned_order)
      throw Error(errc::basis_jump, "branch ordering changed under perturbation");
    return s.periods().tau;
  };
  const Eigen::MatrixXcd tp = perturbed(+1.0);
  const Eigen::MatrixXcd tm = perturbed(-1.0);
  return (tp - tm) / (2.0 * h);
}

}  // namespace thomae
