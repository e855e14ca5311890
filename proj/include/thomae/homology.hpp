#pragma once

#include <cstdint>
#include <vector>

#include "thomae/intmat.hpp"

namespace thomae {

/// Ribbon graph (rotation system). Edge e owns darts 2e (tail) and 2e+1 (head);
/// rotations are doubly-linked ccw cyclic lists per vertex.
struct RibbonGraph {
  std::vector<int> dart_vertex;
  std::vector<int> next_ccw, prev_ccw;
  std::vector<char> dart_alive;
  int num_vertices = 0;

  int num_darts() const { return static_cast<int>(dart_vertex.size()); }
  static int opposite(int d) { return d ^ 1; }
  /// Faces as dart orbits of d -> next_ccw[opposite(d)].
  std::vector<std::vector<int>> trace_faces() const;
  /// Contract a non-loop edge, merging head vertex into tail vertex.
  void contract_edge(int e);
  int euler_characteristic_with_faces() const;
};

/// Lifted-loop word entry: loop around angle-sorted branch k starting on sheet
/// w (sign +1), or that path reversed (sign -1).
struct SignedMove {
  int k = 0;
  unsigned w = 0;
  int sign = 1;
};

struct HomologyCombinatorics {
  int genus = 0;
  int rank = 0;  // number of fundamental cycles r
  // fundamental cycle i as a based word of lifted loops
  std::vector<std::vector<SignedMove>> words;
  IntMat omega;             // r x r intersection form on fundamental cycles
  IntMat a_combo, b_combo;  // g x r integer combinations giving a/b cycles
  std::uint64_t fingerprint = 0;
};

/// Homology of the Z_2^n cover from the branch monodromy translations t_k
/// (angle-sorted). Validates the cell structure (face inventory, Euler
/// characteristic) and produces an exact canonical symplectic basis.
HomologyCombinatorics build_cover_homology(int sheets, const std::vector<unsigned>& trans);

}  // namespace thomae
