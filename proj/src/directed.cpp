#include "tangles/directed.hpp"

#include <algorithm>

#include "tangles/errors.hpp"

namespace tangles {

std::vector<std::vector<int>> DirectedTreeDecomposition::children() const {
  std::vector<std::vector<int>> out(size());
  for (int v = 0; v < size(); ++v)
    if (parent[v] >= 0) out[parent[v]].push_back(v);
  return out;
}

std::vector<Subset> DirectedTreeDecomposition::bags() const {
  std::vector<Subset> out(cone);
  for (int v = 0; v < size(); ++v)
    if (parent[v] >= 0) out[parent[v]] -= cone[v];
  return out;
}

bool DirectedTreeDecomposition::below(int t, int u) const {
  for (int v = u; v >= 0; v = parent[v])
    if (v == t) return true;
  return false;
}

std::optional<Subset> leftmost_minimum_member(const TangleContext& ctx, const TangleView& t, Subset within) {
  for (int bound = 0; bound < t.order; ++bound)
    if (auto x = minimal_member_in_box(ctx, t.contains, Subset(), within, bound)) return x;
  return std::nullopt;
}

DirectedTreeDecomposition directed_decomposition(const TangleTreeDecomposition& ttd, int root_tangle,
                                                 DirectedStats* stats) {
  auto pos = std::find(ttd.tangles.begin(), ttd.tangles.end(), root_tangle);
  if (pos == ttd.tangles.end())
    throw DomainError("directed_decomposition: tangle " + std::to_string(root_tangle) + " is not " +
                      std::to_string(ttd.order) + "-maximal");
  const auto& ds = *ttd.ds;
  const TangleContext& ctx = *ds.context();
  const TreeDecomposition& td = ttd.tree;

  DirectedTreeDecomposition out;
  out.n = td.n;
  out.order = ttd.order;
  out.ds = ttd.ds;
  if (ttd.tangles.size() == 1) {
    out.parent = {-1};
    out.cone = {td.universe()};
    out.tangle = {root_tangle};
    return out;
  }

  // Root the undirected tree at τ(root).
  const int r = ttd.node_of[pos - ttd.tangles.begin()];
  auto adj = td.adjacency();
  std::vector<int> up(td.size(), -1), bfs{r};
  std::vector<char> seen(td.size(), 0);
  seen[r] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (int w : adj[bfs[i]])
      if (!seen[w]) {
        seen[w] = 1;
        up[w] = bfs[i];
        bfs.push_back(w);
      }

  // Tangle nodes become the nodes of the directed tree, in BFS order so
  // that the root comes first.
  std::vector<int> id(td.size(), -1);
  std::vector<int> tree_node;
  for (int v : bfs)
    if (ttd.tangle_at(v) != 0) {
      id[v] = static_cast<int>(tree_node.size());
      tree_node.push_back(v);
    }
  const int m = static_cast<int>(tree_node.size());
  out.root = 0;
  out.parent.assign(m, -1);
  out.cone.assign(m, Subset());
  out.tangle.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    const int v = tree_node[i];
    out.tangle[i] = ttd.tangle_at(v);
    int a = up[v];
    while (a >= 0 && id[a] < 0) a = up[a];
    out.parent[i] = a < 0 ? -1 : id[a];
    if (i == 0) {
      out.cone[i] = td.universe();
      continue;
    }
    const Subset outer = td.side(up[v], v);
    auto g = leftmost_minimum_member(ctx, ds.view(out.tangle[i]), outer);
    if (!g) throw IntegrityError("directed_decomposition: incoming side is not in the tangle at its node");
    out.cone[i] = *g;
  }

  // Move the deepest bad nodes up to their last ancestor whose cone
  // contains theirs, all at once, until no node is bad.
  for (int round = 0;; ++round) {
    if (round > m * m + 1) throw IntegrityError("directed_decomposition: restructuring does not terminate");
    std::vector<char> bad(m, 0);
    for (int v = 1; v < m; ++v) bad[v] = !out.cone[v].subset_of(out.cone[out.parent[v]]);
    std::vector<int> moving;
    for (int v = 1; v < m; ++v) {
      if (!bad[v]) continue;
      bool deepest = true;
      for (int w = 1; w < m && deepest; ++w)
        if (w != v && bad[w] && out.below(v, w)) deepest = false;
      if (deepest) moving.push_back(v);
    }
    if (moving.empty()) {
      if (stats) stats->rounds = round;
      break;
    }
    std::vector<int> target;
    for (int v : moving) {
      int s = -1;
      for (int a = out.parent[v]; a >= 0; a = out.parent[a])
        if (out.cone[v].subset_of(out.cone[a])) {
          s = a;
          break;
        }
      target.push_back(s);
    }
    for (std::size_t i = 0; i < moving.size(); ++i) out.parent[moving[i]] = target[i];
    if (stats) stats->moved += static_cast<int>(moving.size());
  }
  return out;
}

DirectedTreeDecomposition directed_decomposition(TangleDataStructure::Ptr ds, int l, int root_tangle,
                                                 DirectedStats* stats) {
  return directed_decomposition(canonical_decomposition(std::move(ds), l), root_tangle, stats);
}

Report verify_directed(const DirectedTreeDecomposition& dtd) {
  Report rep;
  const int m = dtd.size();
  const Subset u = Subset::full(dtd.n);
  if (m == 0 || static_cast<int>(dtd.parent.size()) != m || static_cast<int>(dtd.tangle.size()) != m) {
    rep.fail("malformed decomposition");
    return rep;
  }
  int roots = 0;
  for (int v = 0; v < m; ++v) {
    if (dtd.parent[v] < 0) {
      ++roots;
      if (v != dtd.root) rep.fail("node " + std::to_string(v) + " has no parent but is not the root");
    } else if (dtd.parent[v] >= m) {
      rep.fail("bad parent");
      return rep;
    }
    int steps = 0;
    for (int a = v; a >= 0 && steps <= m; a = dtd.parent[a]) ++steps;
    if (steps > m) {
      rep.fail("parent pointers contain a cycle");
      return rep;
    }
  }
  if (roots != 1) rep.fail("expected exactly one root");
  if (dtd.cone[dtd.root] != u) rep.fail("root cone is not the ground set");
  for (int v = 0; v < m; ++v)
    if (dtd.parent[v] >= 0 && !dtd.cone[v].subset_of(dtd.cone[dtd.parent[v]]))
      rep.fail("cone of node " + std::to_string(v) + " is not inside its parent's cone");
  auto kids = dtd.children();
  for (const auto& k : kids)
    for (std::size_t i = 0; i < k.size(); ++i)
      for (std::size_t j = i + 1; j < k.size(); ++j)
        if (dtd.cone[k[i]].intersects(dtd.cone[k[j]]))
          rep.fail("sibling cones of nodes " + std::to_string(k[i]) + " and " + std::to_string(k[j]) + " intersect");
  Subset all;
  for (Subset b : dtd.bags()) {
    if (b.intersects(all)) rep.fail("bags overlap");
    all |= b;
  }
  if (all != u) rep.fail("bags do not cover the ground set");

  const auto& ds = *dtd.ds;
  std::vector<int> sorted(dtd.tangle);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) rep.fail("tau is not injective");
  if (sorted != maximal_tangles(ds, dtd.order)) rep.fail("tau is not onto the maximal tangles");
  if (!rep.ok()) return rep;

  // Z[t][u]: leftmost minimum (T_t, T_u)-separation. The largest minimum
  // (T_u, T_t)-separation is its complement.
  std::vector<std::vector<Subset>> z(m, std::vector<Subset>(m));
  for (int t = 0; t < m; ++t)
    for (int w = 0; w < m; ++w)
      if (t != w) {
        auto s = ds.separation(dtd.tangle[t], dtd.tangle[w]);
        if (!s) {
          rep.fail("maximal tangles are comparable");
          return rep;
        }
        z[t][w] = *s;
      }
  // DTD1
  for (int t = 0; t < m; ++t)
    for (int w = 0; w < m; ++w)
      if (t != w && !dtd.below(w, t) && dtd.cone[w].intersects(z[t][w]))
        rep.fail("DTD1: cone of node " + std::to_string(w) + " is in no minimum separation from node " +
                 std::to_string(t));
  // DTD2
  for (int t = 0; t < m; ++t) {
    if (t == dtd.root) continue;
    bool found = false;
    for (int w = 0; w < m && !found; ++w)
      found = w != t && !dtd.below(t, w) && z[t][w] == dtd.cone[t];
    if (!found) rep.fail("DTD2: cone of node " + std::to_string(t) + " is not a leftmost minimum separation");
  }
  return rep;
}

}  // namespace tangles
