#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "thomae/errors.hpp"

namespace thomae {

// Gauss-Kronrod 7-15 on [-1,1] (QUADPACK dqk15 constants).
namespace gk {
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace gk

/// Adaptive complex vector-valued quadrature over [a,b]. The integrand fills
/// `out` (fixed dimension) at parameter t. Nodes of every panel are evaluated
/// in ascending t so stateful trackers can advance monotonically.
class VectorQuad {
public:
  using Fn = std::function<void(double t, std::vector<std::complex<double>>& out)>;

  VectorQuad(std::size_t dim, Fn fn) : dim_(dim), fn_(std::move(fn)), buf_(dim) {}

  std::vector<std::complex<double>> integrate(double a, double b, double rel_tol,
                                              double abs_tol = 0.0, int max_depth = 34) {
    std::vector<std::complex<double>> whole(dim_, 0.0);
    const double err0 = panel(a, b, whole);
    const double scale = std::max(norm(whole), 1e-30);
    if (err0 <= std::max(abs_tol, rel_tol * scale)) return whole;
    std::vector<std::complex<double>> total(dim_, 0.0);
    recurse(a, b, whole, err0, rel_tol, abs_tol, scale, max_depth, total);
    return total;
  }

  std::size_t evals() const { return evals_; }

private:
  static double norm(const std::vector<std::complex<double>>& v) {
    double s = 0;
    for (const auto& x : v) s = std::max(s, std::abs(x));
    return s;
  }

  // One GK15 panel; returns the error estimate, fills `k15`.
  double panel(double a, double b, std::vector<std::complex<double>>& k15) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::vector<std::complex<double>> g7(dim_, 0.0);
    std::fill(k15.begin(), k15.end(), std::complex<double>(0.0));
    for (int i = 0; i < 15; ++i) {
      const int j = i < 8 ? i : 14 - i;
      const double x = i < 8 ? c - h * gk::xgk[j] : c + h * gk::xgk[j];
      fn_(x, buf_);
      ++evals_;
      for (std::size_t d = 0; d < dim_; ++d) k15[d] += gk::wgk[j] * buf_[d];
      if (j == 7) {
        for (std::size_t d = 0; d < dim_; ++d) g7[d] += gk::wg[3] * buf_[d];
      } else if (j % 2 == 1) {
        for (std::size_t d = 0; d < dim_; ++d) g7[d] += gk::wg[(j - 1) / 2] * buf_[d];
      }
    }
    double err = 0;
    for (std::size_t d = 0; d < dim_; ++d) {
      err = std::max(err, std::abs(k15[d] - g7[d]) * h);
      k15[d] *= h;
    }
    return err;
  }

  void recurse(double a, double b, const std::vector<std::complex<double>>& estimate,
               double err, double rel_tol, double abs_tol, double scale, int depth,
               std::vector<std::complex<double>>& total) {
    if (err <= std::max(abs_tol, rel_tol * scale)) {
      for (std::size_t d = 0; d < dim_; ++d) total[d] += estimate[d];
      return;
    }
    if (depth == 0) {
      if (err > 1e3 * std::max(abs_tol, rel_tol * scale))
        throw Error(errc::quadrature_failure, "adaptive refinement exhausted");
      for (std::size_t d = 0; d < dim_; ++d) total[d] += estimate[d];
      return;
    }
    const double c = 0.5 * (a + b);
    std::vector<std::complex<double>> left(dim_), right(dim_);
    const double el = panel(a, c, left);
    const double er = panel(c, b, right);
    recurse(a, c, left, el, rel_tol, abs_tol * 0.5, scale, depth - 1, total);
    recurse(c, b, right, er, rel_tol, abs_tol * 0.5, scale, depth - 1, total);
  }

  std::size_t dim_;
  Fn fn_;
  std::vector<std::complex<double>> buf_;
  std::size_t evals_ = 0;
};

/// Non-adaptive single GK15 panel, for smooth short inner integrals.
inline std::vector<std::complex<double>> gk15_panel(
    std::size_t dim, const VectorQuad::Fn& fn, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::vector<std::complex<double>> out(dim, 0.0), buf(dim);
  for (int i = 0; i < 15; ++i) {
    const int j = i < 8 ? i : 14 - i;
    const double x = i < 8 ? c - h * gk::xgk[j] : c + h * gk::xgk[j];
    fn(x, buf);
    for (std::size_t d = 0; d < dim; ++d) out[d] += h * gk::wgk[j] * buf[d];
  }
  return out;
}

}  // namespace thomae
