#include "doctest.h"

#include <bit>

#include "thomae/homology.hpp"

using namespace thomae;

namespace {
// one-vertex ribbon graph with a given ccw dart order; edge e = darts (2e, 2e+1)
RibbonGraph bouquet(const std::vector<int>& order) {
  RibbonGraph g;
  g.num_vertices = 1;
  const int darts = static_cast<int>(order.size());
  g.dart_vertex.assign(darts, 0);
  g.next_ccw.assign(darts, 0);
  g.prev_ccw.assign(darts, 0);
  g.dart_alive.assign(darts, 1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    g.next_ccw[order[i]] = order[(i + 1) % order.size()];
    g.prev_ccw[order[(i + 1) % order.size()]] = order[i];
  }
  return g;
}
}  // namespace

TEST_CASE("face tracing distinguishes sphere and torus bouquets") {
  // adjacent pairing: sphere (chi = 1 - 2 + 3 = 2)
  CHECK(bouquet({0, 1, 2, 3}).trace_faces().size() == 3);
  // interleaved pairing: torus (chi = 1 - 2 + 1 = 0)
  CHECK(bouquet({0, 2, 1, 3}).trace_faces().size() == 1);
}

TEST_CASE("edge contraction preserves the face structure") {
  // two vertices joined by edge 0, with loop 1 at vertex 0 and loop 2 at vertex 1
  RibbonGraph g;
  g.num_vertices = 2;
  g.dart_vertex = {0, 1, 0, 0, 1, 1};
  g.dart_alive.assign(6, 1);
  g.next_ccw.assign(6, 0);
  g.prev_ccw.assign(6, 0);
  auto link = [&](const std::vector<int>& order) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      g.next_ccw[order[i]] = order[(i + 1) % order.size()];
      g.prev_ccw[order[(i + 1) % order.size()]] = order[i];
    }
  };
  link({0, 2, 3});  // vertex 0
  link({1, 4, 5});  // vertex 1
  const auto faces_before = g.trace_faces().size();
  const int chi_before = g.euler_characteristic_with_faces();
  g.contract_edge(0);
  CHECK(g.num_vertices == 1);
  CHECK(g.trace_faces().size() == faces_before);
  CHECK(g.euler_characteristic_with_faces() == chi_before);
}

TEST_CASE("cover homology for hyperelliptic curves") {
  for (int m = 1; m <= 4; ++m) {
    std::vector<unsigned> trans(2 * m, 1u);
    const auto hom = build_cover_homology(2, trans);
    CHECK(hom.genus == m - 1);
    CHECK(hom.rank == 2 * (2 * m) - 2 + 1);
    CHECK(static_cast<int>(hom.a_combo.size()) == m - 1);
    // words compose to closed based loops on sheet 0
    for (const auto& word : hom.words) {
      unsigned sheet = 0;
      for (const auto& mv : word) {
        CHECK(mv.w == (mv.sign > 0 ? sheet : (sheet ^ trans[mv.k])));
        sheet ^= trans[mv.k];
      }
      CHECK(sheet == 0);
    }
  }
}

TEST_CASE("cover homology for the n=2 fiber product") {
  // m = 2: factors alternate around the base point in some order; use a
  // pattern with mixed factors to exercise the generic path.
  std::vector<unsigned> trans{1u, 2u, 1u, 2u, 1u, 2u, 1u, 2u};
  const auto hom = build_cover_homology(4, trans);
  CHECK(hom.genus == 5);
  CHECK(hom.rank == 8 * 4 - 4 + 1);
  std::vector<unsigned> trans2{1u, 1u, 2u, 2u, 2u, 2u, 1u, 1u};
  CHECK(build_cover_homology(4, trans2).genus == 5);
}

TEST_CASE("cover homology rejects unbalanced monodromy") {
  // odd number of flips for factor 1: the loop product around infinity is
  // nontrivial, the face inventory cannot close up
  std::vector<unsigned> trans{1u, 1u, 1u, 2u, 2u, 2u};
  CHECK_THROWS_AS(build_cover_homology(4, trans), Error);
}
