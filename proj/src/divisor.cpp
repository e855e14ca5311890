#include "thomae/divisor.hpp"

#include <algorithm>
#include <numeric>

namespace thomae {

BetaVector BetaVector::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw Error(errc::bad_shape, "beta needs at least one row");
  BetaVector b(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int j = 0; j < b.n_; ++j) {
    if (static_cast<int>(rows[j].size()) != b.two_m_)
      throw Error(errc::bad_shape, "ragged beta rows");
    for (int i = 0; i < b.two_m_; ++i) {
      if (rows[j][i] != 0 && rows[j][i] != 1)
        throw Error(errc::bad_shape, "beta entries must be 0 or 1");
      b.set(j, i, rows[j][i]);
    }
  }
  return b;
}

int BetaVector::row_sum(int factor) const {
  int s = 0;
  for (int i = 0; i < two_m_; ++i) s += at(factor, i);
  return s;
}

int BetaVector::total() const {
  return std::accumulate(bits_.begin(), bits_.end(), 0);
}

BetaVector BetaVector::complement() const {
  BetaVector c = *this;
  for (auto& b : c.bits_) b = 1 - b;
  return c;
}

std::vector<std::vector<int>> BetaVector::rows() const {
  std::vector<std::vector<int>> r(n_, std::vector<int>(two_m_));
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < two_m_; ++i) r[j][i] = at(j, i);
  return r;
}

int TauProfile::sum() const { return std::accumulate(tau.begin(), tau.end(), 0); }

void require_shape(const FiberProductCurve& curve, const BetaVector& beta) {
  if (beta.n() != curve.n() || beta.row_length() != 2 * curve.m())
    throw Error(errc::shape_mismatch, "beta shape does not match the curve");
}

TauProfile tau_profile(const FiberProductCurve& curve, const BetaVector& beta) {
  require_shape(curve, beta);
  const int n = curve.n(), m = curve.m();
  TauProfile p;
  p.tau.resize(1 << n);
  for (unsigned v = 0; v < (1u << n); ++v) {
    int s = 0;
    for (int j = 0; j < n; ++j) {
      const int vj = (v >> j) & 1;
      for (int i = 0; i < 2 * m; ++i) s += (beta.at(j, i) + vj) & 1;
    }
    p.tau[v] = m * n - s;
  }
  return p;
}

int r_minus_D(const FiberProductCurve& curve, const BetaVector& beta) {
  const TauProfile p = tau_profile(curve, beta);
  int r = 0;
  for (int t : p.tau) r += std::max(0, t);
  return r;
}

bool is_admissible(const FiberProductCurve& curve, const BetaVector& beta) {
  require_shape(curve, beta);
  const TauProfile p = tau_profile(curve, beta);
  return std::all_of(p.tau.begin(), p.tau.end(), [](int t) { return t == 0; });
}

std::vector<BetaVector> enumerate_admissible(const FiberProductCurve& curve,
                                             std::size_t limit) {
  const int n = curve.n(), m = curve.m(), two_m = 2 * m;
  // next_permutation walks the m-of-2m rows in ascending lexicographic order.
  std::vector<std::vector<std::uint8_t>> rows(n);
  auto reset_row = [&](int j) {
    rows[j].assign(two_m, 0);
    for (int i = m; i < two_m; ++i) rows[j][i] = 1;
    std::sort(rows[j].begin(), rows[j].end());
  };
  for (int j = 0; j < n; ++j) reset_row(j);
  std::vector<BetaVector> out;
  while (out.size() < limit) {
    BetaVector b(n, two_m);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < two_m; ++i) b.set(j, i, rows[j][i]);
    out.push_back(std::move(b));
    int j = n - 1;
    while (j >= 0 && !std::next_permutation(rows[j].begin(), rows[j].end())) {
      reset_row(j);
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

long long admissible_count(const FiberProductCurve& curve) {
  const int m = curve.m();
  long long c = 1;
  for (int i = 0; i < m; ++i) c = c * (2 * m - i) / (i + 1);  // C(2m, m)
  long long total = 1;
  for (int j = 0; j < curve.n(); ++j) total *= c;
  return total;
}

Rational q_exponent(const FiberProductCurve& curve, const BetaVector& beta, int flat1,
                    int flat2) {
  require_shape(curve, beta);
  if (flat1 == flat2) throw Error(errc::same_point, "q needs two distinct branch points");
  const BranchRef p1 = curve.branch_ref(flat1), p2 = curve.branch_ref(flat2);
  const int b1 = beta.at_flat(flat1), b2 = beta.at_flat(flat2);
  Rational q(0);
  for (unsigned v = 0; v < (1u << curve.n()); ++v) {
    const int v1 = (v >> p1.factor) & 1, v2 = (v >> p2.factor) & 1;
    // {(beta+v)/2} - 1/4 = +1/4 when beta+v is odd, -1/4 when even.
    const Rational k1 = ((b1 + v1) & 1) ? Rational(1, 4) : Rational(-1, 4);
    const Rational k2 = ((b2 + v2) & 1) ? Rational(1, 4) : Rational(-1, 4);
    q += k1 * k2;
  }
  return q;
}

Rational gamma_exponent(const FiberProductCurve& curve, int flat1, int flat2) {
  if (flat1 == flat2) throw Error(errc::same_point, "gamma needs two distinct branch points");
  const BranchRef p1 = curve.branch_ref(flat1), p2 = curve.branch_ref(flat2);
  return p1.factor == p2.factor ? Rational(1, 8) : Rational(1, 16);
}

ExponentTable exponent_table(const FiberProductCurve& curve, const BetaVector& beta) {
  require_shape(curve, beta);
  ExponentTable t;
  t.total = curve.branch_count();
  t.q.assign(t.total * t.total, Rational(0));
  t.gamma.assign(t.total * t.total, Rational(0));
  for (int a = 0; a < t.total; ++a)
    for (int b = 0; b < t.total; ++b) {
      if (a == b) continue;
      t.q[a * t.total + b] = q_exponent(curve, beta, a, b);
      t.gamma[a * t.total + b] = gamma_exponent(curve, a, b);
    }
  return t;
}

}  // namespace thomae
