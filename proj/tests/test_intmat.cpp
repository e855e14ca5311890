#include "doctest.h"

#include "thomae/intmat.hpp"

using namespace thomae;

TEST_CASE("integer kernel") {
  // rows: x + y + z = 0, x - z = 0  ->  kernel spanned by (1, -2, 1)
  IntMat a{{1, 1, 1}, {1, 0, -1}};
  const IntMat k = integer_kernel(a);
  REQUIRE(k.size() == 1);
  for (const auto& row : a) {
    long long dot = 0;
    for (int i = 0; i < 3; ++i) dot += row[i] * k[0][i];
    CHECK(dot == 0);
  }
  CHECK(std::llabs(k[0][1]) == 2 * std::llabs(k[0][0]));
}

TEST_CASE("saturated complement completes to a unimodular basis") {
  // L = span{(2,3)}: no unit-vector completion exists, the transform-based one must.
  const IntMat k{{2, 3}};
  const IntMat comp = saturated_complement(k, 2);
  REQUIRE(comp.size() == 1);
  const long long det = k[0][0] * comp[0][1] - k[0][1] * comp[0][0];
  CHECK(std::llabs(det) == 1);
}

TEST_CASE("symplectic reduction of a shuffled standard form") {
  // M = U J U^T for a unimodular U is a valid intersection form.
  const IntMat u{{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 2, 1, 0}, {1, 0, 3, 1}};
  const IntMat j0{{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}};
  const IntMat m = int_mul(int_mul(u, j0), int_transpose(u));
  const IntMat c = symplectic_reduce(m);
  const IntMat j = int_mul(int_mul(c, m), int_transpose(c));
  const int g = 2;
  for (int i = 0; i < 2 * g; ++i)
    for (int jj = 0; jj < 2 * g; ++jj) {
      long long want = 0;
      if (jj == i + g) want = 1;
      if (i == jj + g) want = -1;
      CHECK(j[i][jj] == want);
    }
}

TEST_CASE("in_row_span") {
  IntMat rows{{1, 0, 1}, {0, 1, 1}};
  CHECK(in_row_span(rows, {1, 1, 2}));
  CHECK_FALSE(in_row_span(rows, {0, 0, 1}));
}
