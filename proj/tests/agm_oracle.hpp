#pragma once

// Arithmetic-geometric-mean oracle for genus-1 periods: for real branch
// points e1 < e2 < e3 < e4 of y^2 = prod(x - e_i),
//   k^2 = [(e2-e1)(e4-e3)] / [(e3-e1)(e4-e2)],  tau = i K(k') / K(k)
// up to the modular group; compare after reduction to the fundamental domain.

#include <cmath>
#include <complex>

namespace agm_oracle {

inline double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * std::abs(a); ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

inline double complete_K(double k) { return M_PI / (2.0 * agm(1.0, std::sqrt(1.0 - k * k))); }

inline std::complex<double> tau_from_branch_points(double e1, double e2, double e3, double e4) {
  const double k2 = ((e2 - e1) * (e4 - e3)) / ((e3 - e1) * (e4 - e2));
  const double k = std::sqrt(k2);
  const double kp = std::sqrt(1.0 - k2);
  return std::complex<double>(0.0, complete_K(kp) / complete_K(k));
}

inline std::complex<double> sl2z_reduce(std::complex<double> tau) {
  for (int i = 0; i < 99; ++i) {
    tau -= std::round(tau.real());
    if (std::abs(tau) < 1.0 - 1e-15) tau = -1.0 / tau;
    else break;
  }
  tau -= std::round(tau.real());
  return tau;
}

}  // namespace agm_oracle
