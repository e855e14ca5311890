#include "thomae/intmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace thomae {

namespace {
constexpr long long kMagnitudeCap = 1LL << 56;

void check_magnitude(const IntMat& m) {
  for (const auto& row : m)
    for (long long v : row)
      if (std::llabs(v) > kMagnitudeCap)
        throw Error(errc::rank_deficiency, "integer matrix entries grew out of range");
}

long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::llabs(a);
  }
  long long x1, y1;
  const long long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// Column echelon form of `a` in place via unimodular column operations,
// optionally mirrored on u (a := a E, u := u E) and v := E^{-1} v.
int column_echelon(IntMat& a, IntMat* u, IntMat* v) {
  const int rows = a.size(), cols = rows ? a[0].size() : 0;
  auto swap_cols = [&](int c1, int c2) {
    for (auto& row : a) std::swap(row[c1], row[c2]);
    if (u)
      for (auto& row : *u) std::swap(row[c1], row[c2]);
    if (v) std::swap((*v)[c1], (*v)[c2]);
  };
  auto negate_col = [&](int c) {
    for (auto& row : a) row[c] = -row[c];
    if (u)
      for (auto& row : *u) row[c] = -row[c];
    if (v)
      for (auto& x : (*v)[c]) x = -x;
  };
  auto add_col = [&](int j, int c, long long q) {  // col_j += q col_c
    for (auto& row : a) row[j] += q * row[c];
    if (u)
      for (auto& row : *u) row[j] += q * row[c];
    if (v)
      for (std::size_t t = 0; t < (*v)[c].size(); ++t) (*v)[c][t] -= q * (*v)[j][t];
  };

  int r = 0;
  for (int i = 0; i < rows && r < cols; ++i) {
    while (true) {
      int nz = -1;
      long long best = 0;
      for (int c = r; c < cols; ++c)
        if (a[i][c] != 0 && (nz == -1 || std::llabs(a[i][c]) < best)) {
          nz = c;
          best = std::llabs(a[i][c]);
        }
      if (nz == -1) break;
      swap_cols(r, nz);
      if (a[i][r] < 0) negate_col(r);
      bool done = true;
      for (int c = r + 1; c < cols; ++c) {
        if (a[i][c] == 0) continue;
        add_col(c, r, -(a[i][c] / a[i][r]));
        if (a[i][c] != 0) done = false;
      }
      if (done) {
        ++r;
        break;
      }
    }
    check_magnitude(a);
  }
  return r;
}

int int_rank(IntMat a) { return column_echelon(a, nullptr, nullptr); }

// Basis of the lattice generated by the given rows.
IntMat lattice_row_basis(const IntMat& rows) {
  if (rows.empty()) return {};
  IntMat at = int_transpose(rows);
  const int r = column_echelon(at, nullptr, nullptr);
  IntMat basis;
  const int dim = at.size();
  for (int c = 0; c < r; ++c) {
    std::vector<long long> vec(dim);
    for (int i = 0; i < dim; ++i) vec[i] = at[i][c];
    basis.push_back(std::move(vec));
  }
  return basis;
}
}  // namespace

IntMat int_identity(int n) {
  IntMat m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat int_mul(const IntMat& a, const IntMat& b) {
  const int p = a.size(), q = b.size(), r = q ? b[0].size() : 0;
  IntMat c(p, std::vector<long long>(r, 0));
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < q; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < r; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  check_magnitude(c);
  return c;
}

IntMat int_transpose(const IntMat& a) {
  const int p = a.size(), q = p ? a[0].size() : 0;
  IntMat t(q, std::vector<long long>(p));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) t[j][i] = a[i][j];
  return t;
}

IntMat integer_kernel(const IntMat& a_in) {
  IntMat a = a_in;
  const int cols = a.empty() ? 0 : a[0].size();
  IntMat u = int_identity(cols), v = int_identity(cols);
  const int rank = column_echelon(a, &u, &v);
  IntMat kernel;
  for (int c = rank; c < cols; ++c) {
    std::vector<long long> col(cols);
    for (int i = 0; i < cols; ++i) col[i] = u[i][c];
    kernel.push_back(std::move(col));
  }
  return kernel;
}

IntMat saturated_complement(const IntMat& k_rows, int r) {
  if (k_rows.empty()) return int_identity(r);
  IntMat a = k_rows;
  IntMat u = int_identity(r), v = int_identity(r);
  const int rank = column_echelon(a, &u, &v);
  if (rank != static_cast<int>(k_rows.size()))
    throw Error(errc::rank_deficiency, "dependent rows in lattice basis");
  // K U = [H | 0]; rows rank..r-1 of V = U^{-1} complete K to a Z^r basis.
  IntMat comp;
  for (int i = rank; i < r; ++i) comp.push_back(v[i]);
  return comp;
}

bool in_row_span(const IntMat& rows, const std::vector<long long>& vec) {
  IntMat with = rows;
  with.push_back(vec);
  return int_rank(rows) == int_rank(with);
}

IntMat symplectic_reduce(const IntMat& m) {
  const int dim = m.size();
  if (dim % 2 != 0) throw Error(errc::rank_deficiency, "odd-dimensional symplectic space");
  const int g = dim / 2;

  auto pairing = [&](const std::vector<long long>& x, const std::vector<long long>& y) {
    long long s = 0;
    for (int i = 0; i < dim; ++i) {
      if (x[i] == 0) continue;
      long long acc = 0;
      for (int j = 0; j < dim; ++j) acc += m[i][j] * y[j];
      s += x[i] * acc;
    }
    return s;
  };

  IntMat remaining = int_identity(dim);
  IntMat a_vecs, b_vecs;
  for (int step = 0; step < g; ++step) {
    std::vector<long long> u = remaining.front();
    IntMat others(remaining.begin() + 1, remaining.end());
    std::vector<long long> p(others.size());
    for (std::size_t t = 0; t < others.size(); ++t) p[t] = pairing(u, others[t]);

    long long g_acc = 0;
    std::vector<long long> coeff(others.size(), 0);
    for (std::size_t t = 0; t < others.size(); ++t) {
      if (p[t] == 0) continue;
      if (g_acc == 0) {
        g_acc = std::llabs(p[t]);
        coeff[t] = p[t] > 0 ? 1 : -1;
      } else {
        long long x, y;
        const long long ng = ext_gcd(g_acc, p[t], x, y);
        for (auto& c : coeff) c *= x;
        coeff[t] += y;
        g_acc = ng;
      }
      if (g_acc == 1) break;
    }
    if (g_acc != 1)
      throw Error(errc::rank_deficiency, "intersection form is not unimodular on the quotient");
    std::vector<long long> v(dim, 0);
    for (std::size_t t = 0; t < others.size(); ++t) {
      if (coeff[t] == 0) continue;
      for (int i = 0; i < dim; ++i) v[i] += coeff[t] * others[t][i];
    }
    // project the others into the symplectic complement of (u, v)
    IntMat gens;
    for (auto& w : others) {
      const long long uw = pairing(u, w), vw = pairing(v, w);
      std::vector<long long> w2(dim);
      for (int i = 0; i < dim; ++i) w2[i] = w[i] - uw * v[i] + vw * u[i];
      gens.push_back(std::move(w2));
    }
    remaining = lattice_row_basis(gens);
    if (static_cast<int>(remaining.size()) != 2 * (g - step - 1))
      throw Error(errc::rank_deficiency, "symplectic complement has wrong rank");
    a_vecs.push_back(std::move(u));
    b_vecs.push_back(std::move(v));
  }
  IntMat c;
  for (auto& r : a_vecs) c.push_back(r);
  for (auto& r : b_vecs) c.push_back(r);
  check_magnitude(c);
  return c;
}

}  // namespace thomae
