#pragma once

// Exact Riemann-Roch dimension search on the hyperelliptic model y^2 = f(x),
// deg f = 2m, for divisors D = sum_{i in S} P_i - inf_1 - inf_2 with S the
// beta-marked branch points. r(-D) in the div(f) >= D sign convention equals
// dim{ f = (p + y q) / prod_{i in S}(x - lambda_i) : div f >= -D }, found by
// an explicit function search over x-monomials and y x-monomials with exact
// rational arithmetic.

#include <vector>

#include "thomae/divisor.hpp"

namespace rr_oracle {

using thomae::Rational;
using Series = std::vector<Rational>;  // coefficients in w = 1/x

inline Series series_mul(const Series& a, const Series& b, std::size_t len) {
  Series c(len, Rational(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) c[i + j] += a[i] * b[j];
  return c;
}

// sqrt of a series with constant term 1, by coefficient recursion:
// (T^2)_k = P_k  =>  T_k = (P_k - sum_{0<i<k} T_i T_{k-i}) / 2.
inline Series series_sqrt(const Series& p, std::size_t len) {
  Series t(len, Rational(0));
  t[0] = Rational(1);
  for (std::size_t k = 1; k < len; ++k) {
    Rational acc = k < p.size() ? p[k] : Rational(0);
    for (std::size_t i = 1; i < k; ++i) acc -= t[i] * t[k - i];
    t[k] = acc / 2;
  }
  return t;
}

inline int rational_kernel_dim(std::vector<std::vector<Rational>> mat, int unknowns) {
  int rank = 0;
  int col = 0;
  for (auto& row : mat) (void)row;
  for (int r = 0; r < static_cast<int>(mat.size()) && col < unknowns; ++col) {
    int pivot = -1;
    for (int i = r; i < static_cast<int>(mat.size()); ++i)
      if (mat[i][col] != Rational(0)) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(mat[r], mat[pivot]);
    for (int i = 0; i < static_cast<int>(mat.size()); ++i) {
      if (i == r || mat[i][col] == Rational(0)) continue;
      const Rational f = mat[i][col] / mat[r][col];
      for (int j = col; j < unknowns; ++j) mat[i][j] -= f * mat[r][j];
    }
    ++rank;
    ++r;
  }
  return unknowns - rank;
}

/// r(-D) for the n=1 curve with integer branch points `lambda` and marks S.
inline int r_minus_d(const std::vector<long long>& lambda, const std::vector<int>& marks,
                     int m) {
  const int size = static_cast<int>(lambda.size());
  int nmarks = 0;
  for (int v : marks) nmarks += v;
  // f = (p + y q)/prod_{marks}(x - lambda): deg p <= nmarks-1, deg q <= nmarks-m-1.
  const int dp = nmarks - 1;            // may be -1 (no p unknowns)
  const int dq = nmarks - m - 1;        // may be negative (no q unknowns)
  const int p_unknowns = dp + 1;
  const int q_unknowns = dq >= 0 ? dq + 1 : 0;

  std::vector<std::vector<Rational>> rows;
  // p vanishes at every marked branch point.
  for (int i = 0; i < size; ++i) {
    if (!marks[i]) continue;
    std::vector<Rational> row(p_unknowns + q_unknowns, Rational(0));
    Rational pw(1);
    for (int a = 0; a < p_unknowns; ++a) {
      row[a] = pw;
      pw *= Rational(lambda[i]);
    }
    rows.push_back(std::move(row));
  }
  // q-part zero conditions at infinity: coefficient of w^j in
  // w^{-m} T(w) q(1/w) must vanish for j <= -nmarks, with T = sqrt(prod(1-lw)).
  if (q_unknowns > 0) {
    const std::size_t len = static_cast<std::size_t>(m + dq + 4);
    Series poly(len, Rational(0));
    poly[0] = Rational(1);
    for (int i = 0; i < size; ++i) {
      Series lin{Rational(1), Rational(-lambda[i])};
      poly = series_mul(poly, lin, len);
    }
    const Series t = series_sqrt(poly, len);
    for (int j = -(m + dq); j <= -nmarks; ++j) {
      std::vector<Rational> row(p_unknowns + q_unknowns, Rational(0));
      for (int b = 0; b <= dq; ++b) {
        const int idx = j + m + b;
        if (idx >= 0 && idx < static_cast<int>(t.size())) row[p_unknowns + b] = t[idx];
      }
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) return p_unknowns + q_unknowns;
  return rational_kernel_dim(std::move(rows), p_unknowns + q_unknowns);
}

}  // namespace rr_oracle
