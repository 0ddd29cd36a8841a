#include "tangles/tree_decomposition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "tangles/errors.hpp"

namespace tangles {

// ---------------------------------------------------------------------------
// Tree decompositions

std::vector<std::vector<int>> TreeDecomposition::adjacency() const {
  std::vector<std::vector<int>> adj(bags.size());
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

Subset TreeDecomposition::side(int s, int t) const {
  auto adj = adjacency();
  Subset out;
  std::vector<std::pair<int, int>> stack{{t, s}};
  while (!stack.empty()) {
    auto [v, from] = stack.back();
    stack.pop_back();
    out |= bags[v];
    for (int w : adj[v])
      if (w != from) stack.emplace_back(w, v);
  }
  return out;
}

std::vector<Subset> TreeDecomposition::separations() const {
  std::vector<Subset> out;
  for (auto [a, b] : edges) {
    out.push_back(side(a, b));
    out.push_back(side(b, a));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> TreeDecomposition::path(int a, int b) const {
  auto adj = adjacency();
  std::vector<int> prev(bags.size(), -1);
  std::vector<int> queue{a};
  prev[a] = a;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (int w : adj[queue[i]])
      if (prev[w] < 0) {
        prev[w] = queue[i];
        queue.push_back(w);
      }
  std::vector<int> out;
  for (int v = b; v != a; v = prev[v]) out.push_back(v);
  out.push_back(a);
  std::reverse(out.begin(), out.end());
  return out;
}

int TreeDecomposition::adhesion(const ConnectivityOracle& kappa) const {
  int a = 0;
  for (auto [s, t] : edges) a = std::max(a, kappa(side(s, t)));
  return a;
}

bool TreeDecomposition::valid(std::string* why) const {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (bags.empty()) return fail("no nodes");
  if (edges.size() + 1 != bags.size()) return fail("edge count is not nodes - 1");
  Subset seen;
  for (Subset b : bags) {
    if (b.intersects(seen)) return fail("bags overlap");
    seen |= b;
  }
  if (seen != universe()) return fail("bags do not cover the ground set");
  std::vector<int> parent(bags.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int v) { return parent[v] == v ? v : parent[v] = root(parent[v]); };
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= size() || b >= size() || a == b) return fail("bad endpoint");
    int ra = root(a), rb = root(b);
    if (ra == rb) return fail("cycle");
    parent[ra] = rb;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Nested families

bool nested(Subset x, Subset y, int n) {
  Subset u = Subset::full(n);
  return (x & y).empty() || (x - y).empty() || (y - x).empty() || (u - (x | y)).empty();
}

bool check_nested(const std::vector<Subset>& family, int n) {
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (!nested(family[i], family[j], n)) return false;
  return true;
}

std::vector<Subset> complement_closure(std::vector<Subset> family, int n) {
  const std::size_t m = family.size();
  for (std::size_t i = 0; i < m; ++i) family.push_back(complement(family[i], n));
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

std::vector<Subset> inclusion_minimal(const std::vector<Subset>& family) {
  std::vector<Subset> out;
  for (Subset x : family) {
    bool minimal = true;
    for (Subset y : family)
      if (y.proper_subset_of(x)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TreeDecomposition nested_to_tree(int n, const std::vector<Subset>& family) {
  std::vector<Subset> all(family);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  const Subset u = Subset::full(n);
  for (Subset x : all) {
    if (!x.subset_of(u)) throw DomainError("nested_to_tree: set outside the ground set");
    if (!std::binary_search(all.begin(), all.end(), u - x))
      throw DomainError("nested_to_tree: family is not closed under complementation");
  }
  if (!check_nested(all, n)) throw DomainError("nested_to_tree: family is not nested");

  // Peel inclusion-minimal antichains; the last layer is the base.
  std::vector<std::vector<Subset>> layers;
  std::set<Subset> remaining(all.begin(), all.end());
  while (!remaining.empty()) {
    auto layer = inclusion_minimal(std::vector<Subset>(remaining.begin(), remaining.end()));
    for (Subset x : layer) {
      remaining.erase(x);
      remaining.erase(u - x);
    }
    layers.push_back(std::move(layer));
  }

  TreeDecomposition td;
  td.n = n;
  td.bags = {u};
  std::vector<int> parent{-1};
  for (auto layer = layers.rbegin(); layer != layers.rend(); ++layer) {
    if (td.size() == 1 && layer->size() == 2 && (*layer)[1] == u - (*layer)[0]) {
      // {X, X̄}: one edge between the two sides.
      td.bags = {(*layer)[1], (*layer)[0]};
      td.edges = {{0, 1}};
      parent = {-1, 0};
      continue;
    }
    // Incoming side of every non-root node, accumulated bottom-up.
    std::vector<Subset> incoming(td.bags);
    std::vector<int> depth(td.size(), 0);
    std::vector<int> order(td.size());
    std::iota(order.begin(), order.end(), 0);
    for (int v : order)
      if (parent[v] >= 0) depth[v] = depth[parent[v]] + 1;  // parents precede children
    std::sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] > depth[b]; });
    for (int v : order)
      if (parent[v] >= 0) incoming[parent[v]] |= incoming[v];

    std::vector<int> attach;
    for (Subset x : *layer) {
      if (x.empty()) {
        attach.push_back(0);
        continue;
      }
      int best = 0, best_depth = 0, ties = 0;
      for (int v = 1; v < td.size(); ++v) {
        if (!x.subset_of(incoming[v])) continue;
        if (depth[v] > best_depth) {
          best = v;
          best_depth = depth[v];
          ties = 1;
        } else if (depth[v] == best_depth) {
          ++ties;
        }
      }
      if (ties > 1) throw IntegrityError("nested_to_tree: attachment node is not unique");
      attach.push_back(best);
    }
    Subset taken;
    for (Subset x : *layer) taken |= x;
    for (auto& b : td.bags) b -= taken;
    for (std::size_t i = 0; i < layer->size(); ++i) {
      int leaf = td.size();
      td.bags.push_back((*layer)[i]);
      td.edges.emplace_back(attach[i], leaf);
      parent.push_back(attach[i]);
    }
  }
  if (td.separations() != all) throw IntegrityError("nested_to_tree: separations do not reproduce the family");
  return td;
}

// ---------------------------------------------------------------------------
// Tangle nodes

std::vector<int> maximal_tangles(const TangleDataStructure& ds, int l) {
  const int count = ds.size(l);
  std::vector<char> extended(count + 1, 0);
  for (int j = 1; j <= count; ++j) {
    const int o = ds.order_of(j);
    if (o >= 1) extended[ds.truncation(j, o - 1)] = 1;
  }
  std::vector<int> out;
  for (int i = 1; i <= count; ++i)
    if (!extended[i]) out.push_back(i);
  return out;
}

Assignment assign_tangle_nodes(const ConnectivityOracle& kappa, const TreeDecomposition& td,
                               const std::vector<TangleView>& tangles) {
  Assignment out;
  out.node_of.assign(tangles.size(), -1);
  const int nodes = td.size();
  std::vector<Subset> fwd;  // side(a, b) per edge
  std::vector<int> order;
  for (auto [a, b] : td.edges) {
    fwd.push_back(td.side(a, b));
    order.push_back(kappa(fwd.back()));
  }
  for (std::size_t i = 0; i < tangles.size(); ++i) {
    const TangleView& t = tangles[i];
    std::vector<int> comp(nodes);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> root = [&](int v) { return comp[v] == v ? v : comp[v] = root(comp[v]); };
    for (std::size_t e = 0; e < td.edges.size(); ++e)
      if (order[e] >= t.order) comp[root(td.edges[e].first)] = root(td.edges[e].second);
    std::vector<char> has_out(nodes, 0);
    for (std::size_t e = 0; e < td.edges.size(); ++e) {
      if (order[e] >= t.order) continue;
      auto [a, b] = td.edges[e];
      // The edge points towards b when the side of b is in the tangle.
      has_out[root(t.contains(fwd[e]) ? a : b)] = 1;
    }
    std::vector<int> sinks;
    for (int v = 0; v < nodes; ++v)
      if (root(v) == v && !has_out[v]) sinks.push_back(v);
    if (sinks.size() != 1) {
      out.problems.push_back("tangle " + std::to_string(i) + ": " + std::to_string(sinks.size()) +
                             " sink components");
      continue;
    }
    int members = 0, node = -1;
    for (int v = 0; v < nodes; ++v)
      if (root(v) == sinks[0]) {
        ++members;
        node = v;
      }
    if (members != 1) {
      out.problems.push_back("tangle " + std::to_string(i) + ": sink component has " + std::to_string(members) +
                             " nodes");
      continue;
    }
    out.node_of[i] = node;
  }
  for (std::size_t i = 0; i < tangles.size(); ++i)
    for (std::size_t j = i + 1; j < tangles.size(); ++j)
      if (out.node_of[i] >= 0 && out.node_of[i] == out.node_of[j])
        out.problems.push_back("tangles " + std::to_string(i) + " and " + std::to_string(j) + " share a node");
  return out;
}

int TangleTreeDecomposition::tangle_at(int node) const {
  for (std::size_t i = 0; i < tangles.size(); ++i)
    if (node_of[i] == node) return tangles[i];
  return 0;
}

Report verify_tangle_decomposition(const TangleTreeDecomposition& ttd) {
  Report rep;
  const TreeDecomposition& td = ttd.tree;
  std::string why;
  if (!td.valid(&why)) {
    rep.fail("tree decomposition: " + why);
    return rep;
  }
  const auto& ds = *ttd.ds;
  const ConnectivityOracle& kappa = ds.context()->kappa();
  if (ttd.tangles != maximal_tangles(ds, ttd.order)) rep.fail("tau does not cover exactly the maximal tangles");
  if (ttd.node_of.size() != ttd.tangles.size()) {
    rep.fail("tau has the wrong length");
    return rep;
  }
  for (std::size_t i = 0; i < ttd.tangles.size(); ++i) {
    if (ttd.node_of[i] < 0 || ttd.node_of[i] >= td.size()) {
      rep.fail("tau(" + std::to_string(ttd.tangles[i]) + ") is not a node");
      return rep;
    }
    for (std::size_t j = 0; j < i; ++j)
      if (ttd.node_of[i] == ttd.node_of[j]) rep.fail("tau is not injective");
  }

  const auto m = ttd.tangles.size();
  std::vector<TangleView> views;
  for (int i : ttd.tangles) views.push_back(ds.view(i));
  auto member = [&](std::size_t i, Subset x) { return kappa(x) < views[i].order && views[i].contains(x); };
  // Is side(t', t) a minimum (T_i, T_j)-separation? Minimum orders come from
  // the leftmost separations stored in the DS.
  std::vector<std::vector<int>> min_order(m, std::vector<int>(m, -1));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      auto z = ds.separation(ttd.tangles[i], ttd.tangles[j]);
      if (!z) {
        rep.fail("maximal tangles " + std::to_string(ttd.tangles[i]) + " and " + std::to_string(ttd.tangles[j]) +
                 " are comparable");
        return rep;
      }
      min_order[i][j] = kappa(*z);
    }
  auto min_sep = [&](Subset x, std::size_t i, std::size_t j) {
    return kappa(x) == min_order[i][j] && member(i, x) && member(j, td.universe() - x);
  };

  // TD1
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      auto p = td.path(ttd.node_of[i], ttd.node_of[j]);
      bool found = false;
      for (std::size_t s = 0; s + 1 < p.size() && !found; ++s) found = min_sep(td.side(p[s + 1], p[s]), i, j);
      if (!found)
        rep.fail("TD1: no edge on the path separates tangles " + std::to_string(ttd.tangles[i]) + " and " +
                 std::to_string(ttd.tangles[j]) + " minimally");
    }
  // TD2: (t,t') lies on the path from τ(T) to τ(T') iff τ(T) is on the side
  // of t and τ(T') on the side of t'.
  for (auto [a, b] : td.edges)
    for (int dir = 0; dir < 2; ++dir) {
      const int t = dir ? b : a, tp = dir ? a : b;
      const Subset back = td.side(tp, t);
      bool found = false;
      for (std::size_t i = 0; i < m && !found; ++i)
        for (std::size_t j = 0; j < m && !found; ++j) {
          if (i == j) continue;
          auto p = td.path(ttd.node_of[i], ttd.node_of[j]);
          bool on_path = false;
          for (std::size_t s = 0; s + 1 < p.size(); ++s)
            if (p[s] == t && p[s + 1] == tp) on_path = true;
          found = on_path && min_sep(back, i, j);
        }
      if (!found)
        rep.fail("TD2: oriented edge (" + std::to_string(t) + "," + std::to_string(tp) +
                 ") is not a minimum separation of any tangle pair across it");
    }
  // TD3
  auto adj = td.adjacency();
  for (std::size_t i = 0; i < m; ++i) {
    const int t = ttd.node_of[i];
    for (int tp : adj[t])
      if (!member(i, td.side(tp, t)))
        rep.fail("TD3: side of node " + std::to_string(t) + " towards " + std::to_string(tp) + " is not in tangle " +
                 std::to_string(ttd.tangles[i]));
  }
  // Consequences.
  if (td.edges.empty() != (m <= 1)) rep.fail("E(T) is empty iff there is at most one tangle: violated");
  if (m > 0)
    for (int v = 0; v < td.size(); ++v)
      if (adj[v].size() == 1 && ttd.tangle_at(v) == 0) rep.fail("leaf " + std::to_string(v) + " is a hub node");
  auto again = assign_tangle_nodes(kappa, td, views);
  if (!again.ok() || again.node_of != ttd.node_of) rep.fail("tau differs from the sink assignment");
  return rep;
}

// ---------------------------------------------------------------------------
// Coherent families

std::vector<Subset> coherent_nested_family(const TangleDataStructure& ds, const std::vector<int>& family) {
  const std::size_t m = family.size();
  if (m <= 1) return {};
  const int top = ds.order_of(family[0]);
  for (int i : family) {
    if (ds.order_of(i) != top || top < 1)
      throw DomainError("coherent_nested_family: tangles of different orders");
    if (ds.truncation(i, top - 1) != ds.truncation(family[0], top - 1))
      throw DomainError("coherent_nested_family: truncations differ");
  }
  std::vector<std::vector<Subset>> z(m, std::vector<Subset>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b) {
        auto s = ds.separation(family[a], family[b]);
        if (!s) throw DomainError("coherent_nested_family: repeated tangle");
        z[a][b] = *s;
      }

  std::vector<Subset> result;
  std::vector<char> done(m, 0);
  while (true) {
    std::vector<Subset> current;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (a != b && !done[a] && !done[b]) current.push_back(z[a][b]);
    if (current.empty()) break;
    for (Subset x : inclusion_minimal(current)) result.push_back(x);
    std::sort(result.begin(), result.end());
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (a != b && std::binary_search(result.begin(), result.end(), z[a][b])) done[a] = 1;
  }
  return complement_closure(std::move(result), ds.context()->n());
}

// ---------------------------------------------------------------------------
// Contractions

bool Contraction::identity() const {
  for (std::size_t i = 0; i < expansion_of.size(); ++i)
    if (expansion_of[i] != Subset::singleton(static_cast<int>(i))) return false;
  return true;
}

Subset Contraction::expand(Subset x) const {
  Subset out;
  x.for_each([&](int i) { out |= expansion_of[i]; });
  return out;
}

Contraction contract_at(const OraclePtr& kappa, const TreeDecomposition& td, int t) {
  if (t < 0 || t >= td.size()) throw DomainError("contract_at: no such node");
  Contraction c;
  c.node = t;
  c.bag = td.bags[t];
  std::vector<std::string> labels;
  c.bag.for_each([&](int e) {
    c.expansion_of.push_back(Subset::singleton(e));
    labels.push_back(kappa->ground().label(e));
  });
  std::vector<Subset> far;
  const auto adj = td.adjacency();
  for (int w : adj[t]) far.push_back(td.side(t, w));
  std::sort(far.begin(), far.end());
  for (std::size_t i = 0; i < far.size(); ++i) {
    c.expansion_of.push_back(far[i]);
    labels.push_back("c" + std::to_string(i + 1));
  }
  if (c.size() > kMaxElements) throw SizeGuardError("contraction has more than 64 elements");
  auto expansion = c.expansion_of;
  c.kappa = make_oracle(GroundSet(c.size(), labels),
                        [kappa, expansion](Subset x) {
                          Subset out;
                          x.for_each([&](int i) { out |= expansion[i]; });
                          return kappa->evaluate(out);
                        },
                        {}, kappa->name + "^t");
  return c;
}

std::optional<TangleView> project_tangle(const ConnectivityOracle& kappa, const TangleView& t,
                                         const Contraction& c) {
  for (std::size_t i = c.bag.size(); i < c.expansion_of.size(); ++i) {
    const Subset x = c.expansion_of[i];
    if (kappa(x) < t.order && t.contains(x)) return std::nullopt;
  }
  auto expansion = c.expansion_of;
  MembershipFn inner = t.contains;
  return TangleView{t.order, [expansion, inner](Subset x) {
                      Subset out;
                      x.for_each([&](int i) { out |= expansion[i]; });
                      return inner(out);
                    }};
}

// ---------------------------------------------------------------------------
// Canonical decomposition

namespace {

TangleTreeDecomposition single_node(const TangleDataStructure::Ptr& ds, int l) {
  TangleTreeDecomposition ttd;
  ttd.tree.n = ds->context()->n();
  ttd.tree.bags = {ttd.tree.universe()};
  ttd.order = l;
  ttd.ds = ds;
  ttd.tangles = maximal_tangles(*ds, l);
  ttd.node_of.assign(ttd.tangles.size(), 0);
  return ttd;
}

TangleTreeDecomposition with_tangles(const TangleDataStructure::Ptr& ds, TreeDecomposition td, int l) {
  TangleTreeDecomposition ttd;
  ttd.tree = std::move(td);
  ttd.order = l;
  ttd.ds = ds;
  ttd.tangles = maximal_tangles(*ds, l);
  std::vector<TangleView> views;
  for (int i : ttd.tangles) views.push_back(ds->view(i));
  auto a = assign_tangle_nodes(ds->context()->kappa(), ttd.tree, views);
  if (!a.ok()) throw IntegrityError("canonical decomposition: " + a.problems.front());
  ttd.node_of = std::move(a.node_of);
  return ttd;
}

}  // namespace

TangleTreeDecomposition canonical_decomposition(TangleDataStructure::Ptr ds, int l) {
  if (l < 0 || l > ds->k()) throw DomainError("canonical_decomposition: order outside the data structure");
  const auto& kappa = ds->context()->oracle();
  const int n = kappa->n();
  TangleTreeDecomposition cur = single_node(ds, 0);
  std::vector<Subset> family;
  for (int k = 0; k < l; ++k) {
    // Extensions of order k+1 grouped by their truncation.
    std::map<int, std::vector<int>> ext;
    for (int j = ds->size(k) + 1; j <= ds->size(k + 1); ++j) ext[ds->truncation(j, k)].push_back(j);
    for (std::size_t a = 0; a < cur.tangles.size(); ++a) {
      auto it = ext.find(cur.tangles[a]);
      if (it == ext.end() || it->second.size() < 2) continue;
      const Contraction c = contract_at(kappa, cur.tree, cur.node_of[a]);
      TangleDataStructure::Ptr local =
          c.identity() ? ds : TangleDataStructure::build(make_context(c.kappa), k + 1);
      std::vector<int> projected;
      for (int j : it->second) {
        auto p = project_tangle(*kappa, ds->view(j), c);
        if (!p) throw IntegrityError("canonical decomposition: projection undefined at a tangle node");
        projected.push_back(local->find(k + 1, p->contains));
      }
      for (Subset x : coherent_nested_family(*local, projected)) family.push_back(c.expand(x));
    }
    family = complement_closure(std::move(family), n);
    cur = family.empty() ? single_node(ds, k + 1) : with_tangles(ds, nested_to_tree(n, family), k + 1);
  }
  cur.order = l;
  return cur;
}

TangleTreeDecomposition canonical_decomposition(const OraclePtr& kappa, int l) {
  return canonical_decomposition(TangleDataStructure::build(make_context(kappa), l), l);
}

// ---------------------------------------------------------------------------
// Refinement

std::vector<int> local_maximal_counts(const OraclePtr& kappa, const TreeDecomposition& td, int l) {
  std::vector<int> out;
  for (int t = 0; t < td.size(); ++t) {
    Contraction c = contract_at(kappa, td, t);
    auto ds = TangleDataStructure::build(make_context(c.kappa), l);
    out.push_back(static_cast<int>(maximal_tangles(*ds, l).size()));
  }
  return out;
}

namespace {

TreeDecomposition refine(const OraclePtr& kappa, int l, int depth, RefineStats* stats) {
  if (stats) {
    ++stats->recursions;
    stats->max_depth = std::max(stats->max_depth, depth);
  }
  const int n = kappa->n();
  TreeDecomposition t0 = canonical_decomposition(kappa, l).tree;
  // Star whose non-centre nodes hold one element each (or a single node).
  auto adj = t0.adjacency();
  for (int centre = 0; centre < t0.size(); ++centre) {
    bool star = static_cast<int>(adj[centre].size()) == t0.size() - 1;
    for (int v = 0; v < t0.size() && star; ++v)
      if (v != centre && t0.bags[v].size() != 1) star = false;
    if (star) return t0;
  }
  std::vector<Subset> family = t0.separations();
  for (int t = 0; t < t0.size(); ++t) {
    Contraction c = contract_at(kappa, t0, t);
    auto ds = TangleDataStructure::build(make_context(c.kappa), l);
    if (maximal_tangles(*ds, l).size() <= 1) continue;
    if (c.size() >= n)
      throw IntegrityError("refine_single_tangle: contraction at node " + std::to_string(t) +
                           " does not shrink the ground set");
    TreeDecomposition sub = refine(c.kappa, l, depth + 1, stats);
    for (Subset x : sub.separations()) family.push_back(c.expand(x));
  }
  return nested_to_tree(n, complement_closure(std::move(family), n));
}

}  // namespace

TreeDecomposition refine_single_tangle(const OraclePtr& kappa, int l, RefineStats* stats) {
  return refine(kappa, l, 0, stats);
}

TreeDecomposition prune_empty_hubs(const TreeDecomposition& td) {
  TreeDecomposition cur = td;
  while (true) {
    auto adj = cur.adjacency();
    int hub = -1;
    for (int v = 0; v < cur.size() && hub < 0; ++v)
      if (cur.bags[v].empty() && !adj[v].empty()) hub = v;
    if (hub < 0) return cur;
    const int keep = adj[hub].front();
    TreeDecomposition next;
    next.n = cur.n;
    auto renum = [&](int v) { return v == hub ? (keep > hub ? keep - 1 : keep) : (v > hub ? v - 1 : v); };
    for (int v = 0; v < cur.size(); ++v)
      if (v != hub) next.bags.push_back(cur.bags[v]);
    for (auto [a, b] : cur.edges) {
      if ((a == hub && b == keep) || (a == keep && b == hub)) continue;
      next.edges.emplace_back(renum(a), renum(b));
    }
    cur = std::move(next);
  }
}

}  // namespace tangles
