#include "thomae/theta.hpp"

#include <cmath>
#include <numbers>

#include "thomae/errors.hpp"

namespace thomae {

namespace {
constexpr double kPi = std::numbers::pi;

// Upper incomplete gamma for half-integer 2s, via the recurrence
// Gamma(s+1,x) = s Gamma(s,x) + x^s e^{-x}, seeded by erfc / exp.
double upper_gamma(double s, double x) {
  if (std::abs(s - 0.5) < 1e-12) return std::sqrt(kPi) * std::erfc(std::sqrt(x));
  if (std::abs(s - 1.0) < 1e-12) return std::exp(-x);
  return (s - 1.0) * upper_gamma(s - 1.0, x) + std::pow(x, s - 1.0) * std::exp(-x);
}
}  // namespace

ThetaContext::ThetaContext(Eigen::MatrixXcd tau, double eps) : tau_(std::move(tau)), eps_(eps) {
  const int g = genus();
  if (g == 0) throw Error(errc::invalid_input, "theta needs genus >= 1");
  X_ = tau_.real();
  Y_ = tau_.imag();
  const double sym = (tau_ - tau_.transpose()).cwiseAbs().maxCoeff();
  if (sym > 1e-8 * (1.0 + tau_.cwiseAbs().maxCoeff()))
    throw Error(errc::not_positive_definite, "tau is not symmetric");
  // Work with the symmetrized matrix.
  X_ = 0.5 * (X_ + X_.transpose()).eval();
  Y_ = 0.5 * (Y_ + Y_.transpose()).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(Y_);
  if (llt.info() != Eigen::Success)
    throw Error(errc::not_positive_definite, "Im tau is not positive definite");
  cholL_ = llt.matrixL();
  Yinv_ = llt.solve(Eigen::MatrixXd::Identity(g, g));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cholL_.transpose());
  sigma_min_ = svd.singularValues().tail(1)(0);
}

double ThetaContext::pick_radius(int order) const {
  const int g = genus();
  const double rho = sigma_min_;  // shortest-vector lower bound scale
  double R = std::sqrt(std::max(double(g), 2.0));
  for (int iter = 0; iter < 400; ++iter) {
    const double x = kPi * R * R;
    // Deconinck-style tail bound, inflated for derivative order.
    double tail = 0.5 * g * std::pow(2.0 / rho, g) * upper_gamma(0.5 * g, x);
    tail *= std::pow(2.0 * kPi * (R + 1.0) / std::min(rho, 1.0), order);
    if (std::isfinite(tail) && tail < eps_) return R + 0.5;
    R += 0.25;
    if (R > 400.0)
      throw Error(errc::truncation_overflow, "theta ellipsoid radius exceeds the cap");
  }
  throw Error(errc::truncation_overflow, "theta radius search failed");
}

ThetaValue ThetaContext::evaluate(const Eigen::VectorXcd& z, int order) const {
  const int g = genus();
  for (int i = 0; i < g; ++i)
    if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag()))
      throw Error(errc::invalid_input, "theta argument is not finite");
  const Eigen::VectorXd x = z.real(), y = z.imag();
  const Eigen::VectorXd c = Yinv_ * y;  // ellipsoid center is -c
  const double R = pick_radius(order);

  ThetaValue out;
  out.log_scale = kPi * y.dot(c);
  out.grad = Eigen::VectorXcd::Zero(g);
  out.hess = Eigen::MatrixXcd::Zero(g, g);

  // Enumerate k with ||L^T (k + c)|| <= R by back-substitution over
  // coordinates g-1 .. 0 on the upper-triangular U = L^T.
  const Eigen::MatrixXd U = cholL_.transpose();
  std::vector<long long> k(g, 0);
  cd sum = 0.0;
  Eigen::VectorXcd gsum = Eigen::VectorXcd::Zero(g);
  Eigen::MatrixXcd hsum = Eigen::MatrixXcd::Zero(g, g);
  double abs_sum = 0.0;

  // partial[i] = sum_{t>i} U(i,t) (k_t + c_t), maintained during recursion
  std::vector<double> rem(g + 1, 0.0);  // remaining squared radius
  rem[g] = R * R;

  struct Frame {
    long long kmin, kmax, kcur;
  };
  std::vector<Frame> frames(g);
  std::vector<double> offs(g, 0.0);

  int level = g - 1;
  bool descending = true;
  while (level <= g - 1) {
    if (level < 0) {
      // full assignment: accumulate the term
      double q = 0.0;
      Eigen::VectorXd kc(g);
      for (int i = 0; i < g; ++i) kc[i] = static_cast<double>(k[i]) + c[i];
      const Eigen::VectorXd w = U * kc;
      q = w.squaredNorm();
      double phase = 0.0;
      for (int i = 0; i < g; ++i) {
        phase += X_(i, i) * static_cast<double>(k[i]) * static_cast<double>(k[i]);
        for (int j = i + 1; j < g; ++j)
          phase += 2.0 * X_(i, j) * static_cast<double>(k[i]) * static_cast<double>(k[j]);
        phase += 2.0 * static_cast<double>(k[i]) * x[i];
      }
      const cd term = std::exp(cd(-kPi * q, kPi * phase));
      sum += term;
      abs_sum += std::abs(term);
      if (order >= 1)
        for (int i = 0; i < g; ++i) gsum[i] += cd(0, 2.0 * kPi * k[i]) * term;
      if (order >= 2)
        for (int i = 0; i < g; ++i)
          for (int j = 0; j < g; ++j)
            hsum(i, j) += cd(0, 2.0 * kPi * k[i]) * cd(0, 2.0 * kPi * k[j]) * term;
      ++level;
      descending = false;
      continue;
    }
    if (descending) {
      // bound k_level from U(level,level)(k+c) + offs in  |.| <= sqrt(rem)
      double off = 0.0;
      for (int t = level + 1; t < g; ++t)
        off += U(level, t) * (static_cast<double>(k[t]) + c[t]);
      offs[level] = off;
      const double rad = std::sqrt(std::max(rem[level + 1], 0.0));
      const double lo = (-rad - off) / U(level, level) - c[level];
      const double hi = (rad - off) / U(level, level) - c[level];
      frames[level] = {static_cast<long long>(std::ceil(lo - 1e-12)),
                       static_cast<long long>(std::floor(hi + 1e-12)), 0};
      frames[level].kcur = frames[level].kmin;
    } else {
      ++frames[level].kcur;
    }
    if (frames[level].kcur > frames[level].kmax) {
      ++level;
      descending = false;
      continue;
    }
    k[level] = frames[level].kcur;
    const double u = U(level, level) * (static_cast<double>(k[level]) + c[level]) + offs[level];
    rem[level] = rem[level + 1] - u * u;
    if (rem[level] < -1e-12) {
      descending = false;
      continue;  // next k at this level
    }
    --level;
    descending = true;
  }

  out.value = sum;
  if (order >= 1) out.grad = gsum;
  if (order >= 2) out.hess = hsum;
  // tail bound target plus floating accumulation noise
  out.error_bound = eps_ + abs_sum * 1e-15;
  return out;
}

Eigen::MatrixXcd theta_hessian_log(const ThetaContext& ctx, const Eigen::VectorXcd& e,
                                   double vanish_threshold) {
  const ThetaValue tv = ctx.evaluate(e, 2);
  if (std::abs(tv.value) < vanish_threshold)
    throw Error(errc::near_vanishing, "theta too close to zero for a log-Hessian");
  const Eigen::VectorXcd gl = tv.grad / tv.value;
  return tv.hess / tv.value - gl * gl.transpose();
}

Lattice::Lattice(Eigen::MatrixXcd tau) : tau_(std::move(tau)) {
  Y_ = tau_.imag();
  Y_ = 0.5 * (Y_ + Y_.transpose()).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(Y_);
  if (llt.info() != Eigen::Success)
    throw Error(errc::not_positive_definite, "lattice needs Im tau positive definite");
  Yinv_ = llt.solve(Eigen::MatrixXd::Identity(tau_.rows(), tau_.rows()));
}

Eigen::VectorXcd Lattice::reduce(const Eigen::VectorXcd& z) const {
  const int g = static_cast<int>(tau_.rows());
  Eigen::VectorXd m = -(Yinv_ * z.imag());
  Eigen::VectorXcd out = z;
  for (int i = 0; i < g; ++i) {
    const double mi = std::round(m[i]);
    if (mi != 0) out += mi * tau_.col(i);
  }
  for (int i = 0; i < g; ++i) out[i] -= std::round(out[i].real());
  return out;
}

double Lattice::distance(const Eigen::VectorXcd& z) const {
  const int g = static_cast<int>(tau_.rows());
  const Eigen::VectorXcd r = reduce(z);
  double best = 1e300;
  // search the rounding neighborhood for boundary cases
  std::vector<int> m(g, -1), n(g, -1);
  const long total = 1;
  (void)total;
  std::vector<int> digits(2 * g, 0);
  const int span = 3;
  const long count = static_cast<long>(std::pow(span, 2 * g));
  for (long idx = 0; idx < count; ++idx) {
    long t = idx;
    Eigen::VectorXcd cand = r;
    for (int i = 0; i < 2 * g; ++i) {
      const int digit = static_cast<int>(t % span) - 1;
      t /= span;
      if (digit == 0) continue;
      if (i < g) cand += static_cast<double>(digit) * tau_.col(i);
      else cand[i - g] += static_cast<double>(digit);
    }
    best = std::min(best, cand.norm());
  }
  return best;
}

}  // namespace thomae
