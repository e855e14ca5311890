#include "thomae/homology.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>

namespace thomae {

std::vector<std::vector<int>> RibbonGraph::trace_faces() const {
  std::vector<char> seen(dart_vertex.size(), 0);
  std::vector<std::vector<int>> faces;
  for (int d0 = 0; d0 < num_darts(); ++d0) {
    if (!dart_alive[d0] || seen[d0]) continue;
    std::vector<int> face;
    int d = d0;
    do {
      seen[d] = 1;
      face.push_back(d);
      d = next_ccw[opposite(d)];
    } while (d != d0);
    faces.push_back(std::move(face));
  }
  return faces;
}

int RibbonGraph::euler_characteristic_with_faces() const {
  int e = 0;
  for (int d = 0; d < num_darts(); d += 2)
    if (dart_alive[d]) ++e;
  return num_vertices - e + static_cast<int>(trace_faces().size());
}

void RibbonGraph::contract_edge(int e) {
  const int d = 2 * e, db = 2 * e + 1;
  const int u = dart_vertex[d], v = dart_vertex[db];
  if (u == v) throw Error(errc::rank_deficiency, "cannot contract a loop edge");
  const bool d_single = next_ccw[d] == d;
  const bool db_single = next_ccw[db] == db;
  if (d_single && db_single) {
    // isolated edge; merged vertex keeps an empty rotation, unused here
  } else if (d_single) {
    next_ccw[prev_ccw[db]] = next_ccw[db];
    prev_ccw[next_ccw[db]] = prev_ccw[db];
  } else if (db_single) {
    next_ccw[prev_ccw[d]] = next_ccw[d];
    prev_ccw[next_ccw[d]] = prev_ccw[d];
  } else {
    const int pd = prev_ccw[d], nd = next_ccw[d];
    const int pdb = prev_ccw[db], ndb = next_ccw[db];
    next_ccw[pd] = ndb;
    prev_ccw[ndb] = pd;
    next_ccw[pdb] = nd;
    prev_ccw[nd] = pdb;
  }
  dart_alive[d] = dart_alive[db] = 0;
  for (int t = 0; t < num_darts(); ++t)
    if (dart_alive[t] && dart_vertex[t] == v) dart_vertex[t] = u;
  --num_vertices;
}

namespace {

std::uint64_t fnv1a_step(std::uint64_t h, std::uint64_t x) {
  h ^= x;
  return h * 1099511628211ULL;
}

}  // namespace

HomologyCombinatorics build_cover_homology(int sheets, const std::vector<unsigned>& trans) {
  const int d_count = sheets;
  const int N = static_cast<int>(trans.size());
  const int E = N * d_count;

  auto edge_id = [&](int k, unsigned w) { return k * d_count + static_cast<int>(w); };
  auto edge_tail = [&](int e) { return static_cast<unsigned>(e % d_count); };
  auto edge_k = [&](int e) { return e / d_count; };
  auto edge_head = [&](int e) { return edge_tail(e) ^ trans[edge_k(e)]; };

  RibbonGraph g;
  g.num_vertices = d_count;
  g.dart_vertex.assign(2 * E, 0);
  g.next_ccw.assign(2 * E, 0);
  g.prev_ccw.assign(2 * E, 0);
  g.dart_alive.assign(2 * E, 1);
  for (int e = 0; e < E; ++e) {
    g.dart_vertex[2 * e] = static_cast<int>(edge_tail(e));
    g.dart_vertex[2 * e + 1] = static_cast<int>(edge_head(e));
  }
  // ccw rotation at sheet w: out_0, in_0, out_1, in_1, ... where out_k belongs
  // to the loop leaving on sheet w and in_k to the loop arriving from w^t_k.
  for (unsigned w = 0; w < static_cast<unsigned>(d_count); ++w) {
    std::vector<int> order;
    for (int k = 0; k < N; ++k) {
      order.push_back(2 * edge_id(k, w));
      order.push_back(2 * edge_id(k, w ^ trans[k]) + 1);
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      g.next_ccw[order[i]] = order[(i + 1) % order.size()];
      g.prev_ccw[order[(i + 1) % order.size()]] = order[i];
    }
  }

  // Validate the cell structure before trusting anything downstream.
  {
    const auto faces = g.trace_faces();
    int branch_faces = 0, infinity_faces = 0;
    for (const auto& f : faces) {
      const bool all_in = std::all_of(f.begin(), f.end(), [](int dd) { return dd & 1; });
      const bool all_out = std::all_of(f.begin(), f.end(), [](int dd) { return !(dd & 1); });
      if (f.size() == 2 && all_in && edge_k(f[0] / 2) == edge_k(f[1] / 2)) {
        ++branch_faces;
      } else if (static_cast<int>(f.size()) == N && all_out) {
        ++infinity_faces;
      } else {
        throw Error(errc::rank_deficiency, "unexpected face in the cover cell structure");
      }
    }
    if (branch_faces != N * d_count / 2 || infinity_faces != d_count)
      throw Error(errc::rank_deficiency, "face inventory mismatch");
  }
  const int chi = d_count - E + N * d_count / 2 + d_count;
  if ((2 - chi) % 2 != 0) throw Error(errc::rank_deficiency, "odd Euler defect");
  const int genus = (2 - chi) / 2;

  // Spanning tree (BFS from sheet 0, scanning branch loops in angle order).
  std::vector<int> parent_edge(d_count, -1);
  std::vector<char> visited(d_count, 0);
  std::vector<char> in_tree(E, 0);
  std::deque<unsigned> queue{0u};
  visited[0] = 1;
  while (!queue.empty()) {
    const unsigned u = queue.front();
    queue.pop_front();
    for (int k = 0; k < N; ++k) {
      const unsigned v = u ^ trans[k];
      if (!visited[v]) {
        visited[v] = 1;
        parent_edge[v] = edge_id(k, u);
        in_tree[edge_id(k, u)] = 1;
        queue.push_back(v);
      }
    }
  }
  if (std::count(visited.begin(), visited.end(), 1) != d_count)
    throw Error(errc::rank_deficiency, "cover graph is not connected");

  // Based word for the tree path root -> w.
  auto path_to = [&](unsigned w) {
    std::vector<SignedMove> word;
    unsigned cur = w;
    while (cur != 0u) {
      const int pe = parent_edge[cur];
      const unsigned tail = edge_tail(pe);
      word.push_back({edge_k(pe), tail, +1});
      cur = tail;
    }
    std::reverse(word.begin(), word.end());
    return word;
  };

  std::vector<int> nontree;
  for (int e = 0; e < E; ++e)
    if (!in_tree[e]) nontree.push_back(e);
  const int r = static_cast<int>(nontree.size());
  if (r != E - d_count + 1) throw Error(errc::rank_deficiency, "tree size mismatch");

  HomologyCombinatorics out;
  out.genus = genus;
  out.rank = r;
  out.words.resize(r);
  for (int i = 0; i < r; ++i) {
    const int e = nontree[i];
    auto w1 = path_to(edge_tail(e));
    auto w2 = path_to(edge_head(e));
    std::vector<SignedMove> word = w1;
    word.push_back({edge_k(e), edge_tail(e), +1});
    for (auto it = w2.rbegin(); it != w2.rend(); ++it) word.push_back({it->k, it->w, -1});
    out.words[i] = std::move(word);
  }

  // Contract the tree to a one-vertex ribbon graph.
  for (int e = 0; e < E; ++e)
    if (in_tree[e]) g.contract_edge(e);
  if (g.num_vertices != 1) throw Error(errc::rank_deficiency, "contraction left several vertices");

  // ccw positions of the surviving darts around the single vertex.
  std::vector<int> pos(2 * E, -1);
  {
    int start = -1;
    for (int dd = 0; dd < 2 * E; ++dd)
      if (g.dart_alive[dd]) {
        start = dd;
        break;
      }
    int p = 0, dd = start;
    do {
      pos[dd] = p++;
      dd = g.next_ccw[dd];
    } while (dd != start);
    if (p != 2 * r) throw Error(errc::rank_deficiency, "bouquet dart count mismatch");
  }

  const int L = 2 * r;
  auto ccw_before = [&](int from, int x, int to) {
    return ((x - from) % L + L) % L < ((to - from) % L + L) % L;
  };
  out.omega.assign(r, std::vector<long long>(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      const int a1 = pos[2 * nontree[i] + 1], b1 = pos[2 * nontree[i]];
      const int a2 = pos[2 * nontree[j] + 1], b2 = pos[2 * nontree[j]];
      const bool cin = ccw_before(a1, a2, b1);
      const bool cout = ccw_before(a1, b2, b1);
      out.omega[i][j] = (cin == cout) ? 0 : (cin ? 1 : -1);
    }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (out.omega[i][j] != -out.omega[j][i])
        throw Error(errc::rank_deficiency, "intersection form is not skew");

  // Radical = integer kernel; must contain every face relation.
  const IntMat radical = integer_kernel(out.omega);
  if (static_cast<int>(radical.size()) != r - 2 * genus)
    throw Error(errc::rank_deficiency, "radical rank disagrees with the genus");
  {
    std::map<int, int> nontree_pos;
    for (int i = 0; i < r; ++i) nontree_pos[nontree[i]] = i;
    for (const auto& f : g.trace_faces()) {
      std::vector<long long> rel(r, 0);
      for (int dd : f) {
        const int e = dd / 2;
        auto it = nontree_pos.find(e);
        if (it != nontree_pos.end()) rel[it->second] += (dd & 1) ? -1 : 1;
      }
      if (!in_row_span(radical, rel))
        throw Error(errc::rank_deficiency, "face boundary escapes the radical");
    }
  }

  const IntMat quot = saturated_complement(radical, r);  // 2g x r representatives
  IntMat omega_q = int_mul(int_mul(quot, out.omega), int_transpose(quot));
  const IntMat c = symplectic_reduce(omega_q);
  const IntMat basis = int_mul(c, quot);  // 2g x r, rows a_1..a_g, b_1..b_g
  // Exact canonical-form check.
  IntMat J = int_mul(int_mul(basis, out.omega), int_transpose(basis));
  for (int i = 0; i < 2 * genus; ++i)
    for (int j = 0; j < 2 * genus; ++j) {
      long long want = 0;
      if (j == i + genus) want = 1;
      if (i == j + genus) want = -1;
      if (J[i][j] != want)
        throw Error(errc::rank_deficiency, "symplectic reduction failed the exact check");
    }
  out.a_combo.assign(basis.begin(), basis.begin() + genus);
  out.b_combo.assign(basis.begin() + genus, basis.end());

  std::uint64_t h = 1469598103934665603ULL;
  h = fnv1a_step(h, static_cast<std::uint64_t>(sheets));
  for (unsigned t : trans) h = fnv1a_step(h, t);
  for (const auto& row : basis)
    for (long long x : row) h = fnv1a_step(h, static_cast<std::uint64_t>(x + (1LL << 32)));
  out.fingerprint = h;
  return out;
}

}  // namespace thomae
