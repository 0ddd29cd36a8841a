#include "tangles/partial_decomposition.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <tuple>

#include "tangles/errors.hpp"

namespace tangles {

Subset PartialDecomposition::label(int e, int from) const {
  const Edge& ed = edges[e];
  return from == ed.a ? ed.toward_b : complement(ed.toward_b, n);
}

std::vector<std::vector<int>> PartialDecomposition::incident_edges() const {
  std::vector<std::vector<int>> inc(nodes);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    inc[edges[e].a].push_back(e);
    inc[edges[e].b].push_back(e);
  }
  return inc;
}

std::vector<int> PartialDecomposition::leaves() const {
  auto inc = incident_edges();
  std::vector<int> out;
  for (int v = 0; v < nodes; ++v)
    if (inc[v].size() <= 1) out.push_back(v);
  return out;
}

Subset PartialDecomposition::leaf_set(int leaf) const {
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (edges[e].b == leaf) return edges[e].toward_b;
    if (edges[e].a == leaf) return complement(edges[e].toward_b, n);
  }
  return universe();  // single-node tree
}

bool PartialDecomposition::valid(std::string* why) const {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (nodes < 1) return fail("empty tree");
  if (static_cast<int>(edges.size()) != nodes - 1) return fail("edge count is not nodes - 1");
  std::vector<int> parent(nodes);
  for (int v = 0; v < nodes; ++v) parent[v] = v;
  std::function<int(int)> root = [&](int v) { return parent[v] == v ? v : parent[v] = root(parent[v]); };
  for (const Edge& e : edges) {
    if (e.a < 0 || e.b < 0 || e.a >= nodes || e.b >= nodes || e.a == e.b) return fail("bad endpoint");
    if (!e.toward_b.subset_of(universe())) return fail("label outside the ground set");
    int ra = root(e.a), rb = root(e.b);
    if (ra == rb) return fail("cycle");
    parent[ra] = rb;
  }
  auto inc = incident_edges();
  for (int v = 0; v < nodes; ++v) {
    if (inc[v].size() == 1 || (inc[v].empty() && nodes == 1)) continue;
    if (inc[v].size() != 3) return fail("node " + std::to_string(v) + " has degree " + std::to_string(inc[v].size()));
    Subset cover;
    for (int e : inc[v]) cover |= label(e, v);
    if (cover != universe()) return fail("outgoing sets at node " + std::to_string(v) + " do not cover");
  }
  return true;
}

bool PartialDecomposition::exact() const {
  auto inc = incident_edges();
  for (int v = 0; v < nodes; ++v) {
    if (inc[v].size() != 3) continue;
    Subset seen;
    for (int e : inc[v]) {
      Subset s = label(e, v);
      if (s.intersects(seen)) return false;
      seen |= s;
    }
  }
  return true;
}

int width(const ConnectivityOracle& kappa, const PartialDecomposition& pd) {
  int w = 0;
  for (const auto& e : pd.edges) w = std::max(w, kappa(e.toward_b));
  return w;
}

namespace {

struct BinaryView {
  std::vector<int> parent;
  std::vector<std::array<int, 2>> children;  // {-1,-1} at leaves
  std::vector<Subset> xi;
  std::vector<int> edge_of;  // original edge entering the node, -1 for the root
};

}  // namespace

PartialDecomposition exactify(const ConnectivityOracle& kappa, const PartialDecomposition& pd) {
  std::string why;
  if (!pd.valid(&why)) throw DomainError("exactify: " + why);
  if (pd.n != kappa.n()) throw DomainError("exactify: ground set mismatch");
  if (pd.edges.empty()) return pd;

  // Subdivide edge 0 with a fresh root and push the labels onto the nodes.
  const int root = pd.nodes;
  BinaryView bv;
  bv.parent.assign(pd.nodes + 1, -1);
  bv.children.assign(pd.nodes + 1, {-1, -1});
  bv.xi.assign(pd.nodes + 1, Subset());
  bv.edge_of.assign(pd.nodes + 1, -1);
  auto inc = pd.incident_edges();
  const auto& e0 = pd.edges[0];
  bv.xi[root] = pd.universe();
  bv.children[root] = {e0.a, e0.b};
  std::vector<std::pair<int, int>> stack;  // (node, parent in the cubic tree)
  for (int side = 0; side < 2; ++side) {
    int v = side == 0 ? e0.a : e0.b;
    int other = side == 0 ? e0.b : e0.a;
    bv.parent[v] = root;
    bv.edge_of[v] = 0;
    bv.xi[v] = pd.label(0, other);
    stack.emplace_back(v, other);
  }
  while (!stack.empty()) {
    auto [v, from] = stack.back();
    stack.pop_back();
    int c = 0;
    for (int e : inc[v]) {
      int w = pd.edges[e].a == v ? pd.edges[e].b : pd.edges[e].a;
      if (w == from) continue;
      bv.parent[w] = v;
      bv.edge_of[w] = e;
      bv.xi[w] = pd.label(e, v);
      bv.children[v][c++] = w;
      stack.emplace_back(w, v);
    }
  }

  auto exact_at = [&](int s) {
    Subset x = bv.xi[s], y1 = bv.xi[bv.children[s][0]], y2 = bv.xi[bv.children[s][1]];
    return x == (y1 | y2) && !y1.intersects(y2);
  };
  auto measure = [&] {
    long long w = 0, sz = 0;
    for (Subset x : bv.xi) {
      w += kappa(x);
      sz += x.size();
    }
    return std::pair{w, sz};
  };

  auto last = measure();
  while (true) {
    int s = -1;
    for (int v = 0; v <= pd.nodes && s < 0; ++v)
      if (bv.children[v][0] >= 0 && !exact_at(v)) s = v;
    if (s < 0) break;
    const int t1 = bv.children[s][0], t2 = bv.children[s][1];
    const Subset x = bv.xi[s], y1 = bv.xi[t1], y2 = bv.xi[t2];
    if (x != (y1 | y2)) {
      if (kappa(x & y1) <= kappa(y1) && kappa(x & y2) <= kappa(y2)) {
        bv.xi[t1] = x & y1;
        bv.xi[t2] = x & y2;
      } else {
        bv.xi[s] = kappa(x | y1) < kappa(x) ? (x | y1) : (x | y2);
      }
    } else if (kappa(y1 - y2) <= kappa(y1)) {
      bv.xi[t1] = y1 - y2;
    } else {
      bv.xi[t2] = y2 - y1;
    }
    auto now = measure();
    if (now >= last) throw IntegrityError("exactify: termination measure did not decrease (oracle not submodular?)");
    last = now;
  }

  PartialDecomposition out = pd;
  for (int v = 0; v < pd.nodes; ++v) {
    int e = bv.edge_of[v];
    if (e < 0) continue;
    if (e == 0) {
      if (v == e0.b) out.edges[0].toward_b = bv.xi[v];
      continue;
    }
    auto& ed = out.edges[e];
    ed.toward_b = ed.b == v ? bv.xi[v] : complement(bv.xi[v], pd.n);
  }
  return out;
}

PartialDecomposition branch_decomposition(int n, const std::vector<std::pair<int, int>>& tree_edges,
                                          const std::vector<int>& leaf_element) {
  PartialDecomposition pd;
  pd.n = n;
  pd.nodes = static_cast<int>(leaf_element.size());
  std::vector<std::vector<int>> adj(pd.nodes);
  for (auto [a, b] : tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // Elements on the side of b when the edge a-b is removed.
  std::function<Subset(int, int)> side = [&](int v, int from) {
    Subset s = leaf_element[v] >= 0 ? Subset::singleton(leaf_element[v]) : Subset();
    for (int w : adj[v])
      if (w != from) s |= side(w, v);
    return s;
  };
  for (auto [a, b] : tree_edges) pd.edges.push_back({a, b, side(b, a)});
  return pd;
}

}  // namespace tangles
