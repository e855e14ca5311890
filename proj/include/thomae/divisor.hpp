#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <vector>

#include "thomae/curve.hpp"

namespace thomae {

using Rational = boost::rational<long long>;

/// {0,1} labels on the 2mn branch points, row j = factor j.
class BetaVector {
public:
  BetaVector() = default;
  BetaVector(int n, int two_m) : n_(n), two_m_(two_m), bits_(n * two_m, 0) {}
  static BetaVector from_rows(const std::vector<std::vector<int>>& rows);

  int n() const { return n_; }
  int row_length() const { return two_m_; }
  int at(int factor, int index) const { return bits_[factor * two_m_ + index]; }
  int at_flat(int flat) const { return bits_[flat]; }
  void set(int factor, int index, int v) { bits_[factor * two_m_ + index] = v ? 1 : 0; }
  int row_sum(int factor) const;
  int total() const;
  BetaVector complement() const;
  std::vector<std::vector<int>> rows() const;
  bool operator==(const BetaVector&) const = default;
  bool operator<(const BetaVector& o) const { return bits_ < o.bits_; }

private:
  int n_ = 0, two_m_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct TauProfile {
  std::vector<int> tau;  // indexed by vmask in 0 .. 2^n-1
  int sum() const;
};

void require_shape(const FiberProductCurve& curve, const BetaVector& beta);

/// tau_v = mn - sum_{j,i} ((beta_{ji} + v_j) mod 2).
TauProfile tau_profile(const FiberProductCurve& curve, const BetaVector& beta);

/// r(-D) = sum_v max(0, tau_v).
int r_minus_D(const FiberProductCurve& curve, const BetaVector& beta);

/// All tau_v = 0; equivalently every factor row carries exactly m ones.
bool is_admissible(const FiberProductCurve& curve, const BetaVector& beta);

/// Admissible vectors in lexicographic order of the flattened row-major bits;
/// yields prod_j C(2m, m) vectors, truncated at `limit`.
std::vector<BetaVector> enumerate_admissible(const FiberProductCurve& curve,
                                             std::size_t limit = SIZE_MAX);

long long admissible_count(const FiberProductCurve& curve);

/// q(beta_p, beta_p') = sum_{v in Z_2^n} ({(beta_p+v_j)/2} - 1/4)({(beta_p'+v_j')/2} - 1/4).
Rational q_exponent(const FiberProductCurve& curve, const BetaVector& beta, int flat1,
                    int flat2);

/// 1/8 for a same-factor pair, 1/16 across factors.
Rational gamma_exponent(const FiberProductCurve& curve, int flat1, int flat2);

/// Symmetric pair tables of q, gamma and the combined Thomae weight q + gamma/2.
struct ExponentTable {
  int total = 0;
  std::vector<Rational> q;          // row-major over flat pairs
  std::vector<Rational> gamma;      // ditto
  Rational q_at(int a, int b) const { return q[a * total + b]; }
  Rational gamma_at(int a, int b) const { return gamma[a * total + b]; }
  Rational weight(int a, int b) const { return q_at(a, b) + gamma_at(a, b) / 2; }
};

ExponentTable exponent_table(const FiberProductCurve& curve, const BetaVector& beta);

}  // namespace thomae
