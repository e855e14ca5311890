#pragma once

#include <Eigen/Dense>
#include <complex>

namespace thomae {

using cd = std::complex<double>;

/// theta(z, tau) evaluated as exp(log_scale) * value with
/// log_scale = pi y^T Y^{-1} y, y = Im z; |value| is then the lattice-invariant
/// normalized magnitude. grad/hess are scaled the same way.
struct ThetaValue {
  cd value{};
  Eigen::VectorXcd grad;
  Eigen::MatrixXcd hess;
  double log_scale = 0;
  double error_bound = 0;  // absolute, on the scaled value
};

class ThetaContext {
public:
  ThetaContext(Eigen::MatrixXcd tau, double eps = 1e-13);

  int genus() const { return static_cast<int>(tau_.rows()); }
  const Eigen::MatrixXcd& tau() const { return tau_; }
  const Eigen::MatrixXd& Y() const { return Y_; }
  const Eigen::MatrixXd& Yinv() const { return Yinv_; }
  double eps() const { return eps_; }

  /// order: 0 value, 1 +gradient, 2 +hessian.
  ThetaValue evaluate(const Eigen::VectorXcd& z, int order = 0) const;

  /// |theta(z)| exp(-pi y^T Y^{-1} y): invariant under lattice shifts.
  double normalized_abs(const Eigen::VectorXcd& z) const { return std::abs(evaluate(z).value); }

private:
  double pick_radius(int order) const;

  Eigen::MatrixXcd tau_;
  Eigen::MatrixXd X_, Y_, Yinv_;
  Eigen::MatrixXd cholL_;  // Y = L L^T
  double eps_;
  double sigma_min_ = 1;  // smallest singular value of L^T
};

/// Hessian of log theta at z (shift form theta[e](0) = theta(e)).
Eigen::MatrixXcd theta_hessian_log(const ThetaContext& ctx, const Eigen::VectorXcd& e,
                                   double vanish_threshold = 1e-10);

/// Period lattice Z^g + tau Z^g with reduction helpers.
class Lattice {
public:
  explicit Lattice(Eigen::MatrixXcd tau);
  const Eigen::MatrixXcd& tau() const { return tau_; }
  Eigen::VectorXcd reduce(const Eigen::VectorXcd& z) const;
  double distance(const Eigen::VectorXcd& z) const;  // to the nearest lattice point

private:
  Eigen::MatrixXcd tau_;
  Eigen::MatrixXd Y_, Yinv_;
};

struct JacobianPoint {
  Eigen::VectorXcd value;
  bool reduced = false;
};

}  // namespace thomae
