#include "tangles/oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "tangles/errors.hpp"

namespace tangles::oracles {

// ---------------------------------------------------------------------------
// Tangles by backtracking over complementary pairs

namespace {

class TangleSearch {
 public:
  TangleSearch(const ConnectivityOracle& kappa, int k, const BruteForceLimits& limits)
      : kappa_(kappa), k_(k), limits_(limits), u_(kappa.universe()), state_(std::size_t{1} << kappa.n(), 0) {
    for (std::uint64_t x = 0; x < state_.size(); ++x) {
      Subset s(x);
      if (s < kappa.complement(s) && kappa(s) < k) pairs_.push_back(s);
    }
    std::stable_sort(pairs_.begin(), pairs_.end(), [&](Subset a, Subset b) { return kappa(a) < kappa(b); });
  }

  std::vector<ExplicitTangle> run() {
    dfs(0);
    std::sort(found_.begin(), found_.end(),
              [](const ExplicitTangle& a, const ExplicitTangle& b) { return a.members < b.members; });
    return std::move(found_);
  }

 private:
  static constexpr std::uint8_t kIn = 1, kOut = 2;

  bool small(Subset x) const { return kappa_(x) < k_; }

  // Adds x and everything the closure rules force. False on a conflict.
  bool commit(Subset x) {
    std::vector<Subset> todo{x};
    while (!todo.empty()) {
      Subset y = todo.back();
      todo.pop_back();
      if (state_[y.bits] == kIn) continue;
      if (state_[y.bits] == kOut || y.size() <= 1) return false;
      for (Subset m : members_)
        if (!m.intersects(y)) return false;
      state_[y.bits] = kIn;
      state_[(u_ - y).bits] = kOut;
      members_.push_back(y);
      // Supersets of a member are members.
      for_each_submask(u_ - y, [&](Subset s) {
        Subset z = y | s;
        if (!s.empty() && state_[z.bits] != kIn && small(z)) todo.push_back(z);
      });
      // Small meets of members are members.
      for (Subset m : members_) {
        Subset z = m & y;
        if (state_[z.bits] != kIn && small(z)) todo.push_back(z);
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (members_.size() > mark) {
      Subset y = members_.back();
      members_.pop_back();
      state_[y.bits] = 0;
      state_[(u_ - y).bits] = 0;
    }
  }

  bool triples_ok() const {
    std::vector<char> seen(state_.size(), 0);
    for (std::size_t i = 0; i < members_.size(); ++i)
      for (std::size_t j = i; j < members_.size(); ++j) {
        Subset m = members_[i] & members_[j];
        if (seen[m.bits]) continue;
        seen[m.bits] = 1;
        for (Subset c : members_)
          if (!m.intersects(c)) return false;
      }
    return true;
  }

  void dfs(std::size_t i) {
    if (++nodes_ > limits_.max_nodes) throw SizeGuardError("brute_force_tangles: search node limit exceeded");
    while (i < pairs_.size() && state_[pairs_[i].bits] != 0) ++i;
    if (i == pairs_.size()) {
      if (!triples_ok()) return;
      ExplicitTangle t{k_, members_};
      std::sort(t.members.begin(), t.members.end());
      found_.push_back(std::move(t));
      return;
    }
    for (Subset choice : {pairs_[i], u_ - pairs_[i]}) {
      const std::size_t mark = members_.size();
      if (commit(choice)) dfs(i + 1);
      undo(mark);
    }
  }

  const ConnectivityOracle& kappa_;
  int k_;
  BruteForceLimits limits_;
  Subset u_;
  std::vector<std::uint8_t> state_;
  std::vector<Subset> pairs_;
  std::vector<Subset> members_;
  std::vector<ExplicitTangle> found_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::vector<ExplicitTangle> brute_force_tangles(const ConnectivityOracle& kappa, int k,
                                                const BruteForceLimits& limits) {
  if (kappa.n() > limits.max_elements)
    throw SizeGuardError("brute_force_tangles: |U| = " + std::to_string(kappa.n()) + " exceeds " +
                         std::to_string(limits.max_elements));
  if (k <= 0) return {ExplicitTangle{0, {}}};
  return TangleSearch(kappa, k, limits).run();
}

// ---------------------------------------------------------------------------
// Branch width over all cubic trees

int brute_force_branch_width(const ConnectivityOracle& kappa, int max_elements) {
  const int n = kappa.n();
  if (n > max_elements)
    throw SizeGuardError("brute_force_branch_width: |U| = " + std::to_string(n) + " exceeds " +
                         std::to_string(max_elements));
  if (n <= 1) return 0;
  // Nodes 0..n-1 are the leaves (leaf i holds element i); internal nodes follow.
  std::vector<std::pair<int, int>> edges{{0, 1}};
  int best = std::numeric_limits<int>::max();
  int next = n;
  auto width = [&] {
    std::vector<std::vector<int>> adj(next);
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    // Root at leaf 0; every non-root node contributes the leaf set below it.
    int w = 0;
    std::function<Subset(int, int)> below = [&](int v, int from) {
      Subset s = v < n ? Subset::singleton(v) : Subset();
      for (int c : adj[v])
        if (c != from) s |= below(c, v);
      if (from >= 0) w = std::max(w, kappa(s));
      return s;
    };
    below(0, -1);
    return w;
  };
  std::function<void(int)> insert = [&](int leaf) {
    if (leaf == n) {
      best = std::min(best, width());
      return;
    }
    const std::size_t count = edges.size();
    for (std::size_t e = 0; e < count; ++e) {
      auto [a, b] = edges[e];
      const int w = next++;
      edges[e] = {a, w};
      edges.emplace_back(w, b);
      edges.emplace_back(w, leaf);
      insert(leaf + 1);
      edges.pop_back();
      edges.pop_back();
      edges[e] = {a, b};
      --next;
    }
  };
  insert(2);
  return best;
}

// ---------------------------------------------------------------------------
// Leftmost separations by enumeration

LeftmostResult brute_force_leftmost(const ConnectivityOracle& kappa, const std::function<bool(Subset)>& feasible) {
  if (kappa.n() > 20) throw SizeGuardError("brute_force_leftmost: |U| > 20");
  LeftmostResult r;
  int best = std::numeric_limits<int>::max();
  Subset meet;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << kappa.n()); ++x) {
    Subset s(x);
    if (!feasible(s)) continue;
    const int v = kappa(s);
    if (v < best) {
      best = v;
      meet = s;
    } else if (v == best) {
      meet &= s;
    }
  }
  if (best == std::numeric_limits<int>::max()) return r;
  r.set = meet;
  r.value = best;
  if (!feasible(meet) || kappa(meet) != best) {
    r.meet_is_minimizer = false;
    r.report = "intersection " + to_string(meet) + " of all minimizers is not a feasible minimizer";
  }
  return r;
}

LeftmostResult brute_force_leftmost_box(const ConnectivityOracle& kappa, Subset x, Subset y) {
  const Subset upper = kappa.complement(y);
  return brute_force_leftmost(kappa, [&](Subset z) { return x.subset_of(z) && z.subset_of(upper); });
}

LeftmostResult brute_force_leftmost_tangles(const ConnectivityOracle& kappa, const ExplicitTangle& t,
                                            const ExplicitTangle& u) {
  return brute_force_leftmost(kappa, [&](Subset z) { return t.contains(z) && u.contains(kappa.complement(z)); });
}

ExplicitTangle materialize(const ConnectivityOracle& kappa, const TangleView& t) {
  if (kappa.n() > 16) throw SizeGuardError("materialize: |U| > 16");
  ExplicitTangle out{t.order, {}};
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << kappa.n()); ++x)
    if (kappa(Subset(x)) < t.order && t.contains(Subset(x))) out.members.push_back(Subset(x));
  return out;
}

// ---------------------------------------------------------------------------
// Tree isomorphism codes

std::string tree_code(const std::vector<std::vector<int>>& adj, const std::vector<std::string>& labels,
                      std::optional<int> root) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return "()";
  std::function<std::string(int, int)> encode = [&](int v, int from) {
    std::vector<std::string> kids;
    for (int w : adj[v])
      if (w != from) kids.push_back(encode(w, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + labels[v];
    for (auto& k : kids) s += k;
    return s + ")";
  };
  if (root) return encode(*root, -1);
  // Centres by repeated leaf removal.
  std::vector<int> degree(n);
  std::vector<int> layer;
  for (int v = 0; v < n; ++v) {
    degree[v] = static_cast<int>(adj[v].size());
    if (degree[v] <= 1) layer.push_back(v);
  }
  int left = n;
  while (left > 2) {
    left -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer)
      for (int w : adj[v])
        if (--degree[w] == 1) next.push_back(w);
    layer = std::move(next);
  }
  std::string best;
  for (int c : layer) {
    std::string code = encode(c, -1);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

namespace {

std::string ids(Subset x, const std::vector<int>& perm) {
  std::string s = "{";
  for (int e : apply_permutation(x, perm).elements()) s += std::to_string(e) + ",";
  return s + "}";
}

}  // namespace

std::string decomposition_code(const TangleTreeDecomposition& ttd, const std::vector<int>& perm) {
  std::vector<std::string> labels;
  for (int v = 0; v < ttd.tree.size(); ++v) {
    const int t = ttd.tangle_at(v);
    labels.push_back(ids(ttd.tree.bags[v], perm) + (t ? "t" + std::to_string(ttd.ds->order_of(t)) : "h"));
  }
  return tree_code(ttd.tree.adjacency(), labels);
}

std::string directed_code(const DirectedTreeDecomposition& dtd, const std::vector<int>& perm) {
  std::vector<std::vector<int>> adj(dtd.size());
  for (int v = 0; v < dtd.size(); ++v)
    if (dtd.parent[v] >= 0) {
      adj[v].push_back(dtd.parent[v]);
      adj[dtd.parent[v]].push_back(v);
    }
  auto bags = dtd.bags();
  std::vector<std::string> labels;
  for (int v = 0; v < dtd.size(); ++v)
    labels.push_back(ids(dtd.cone[v], perm) + ids(bags[v], perm) + "t" +
                     std::to_string(dtd.ds->order_of(dtd.tangle[v])));
  return tree_code(adj, labels, dtd.root);
}

std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  // Fisher–Yates with explicit draws so the sequence does not depend on the
  // standard library's shuffle.
  for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng() % static_cast<std::uint64_t>(i + 1)]);
  return p;
}

CanonicityReport canonicity_harness(const OraclePtr& kappa, int l, int trials, std::uint64_t seed, bool directed) {
  CanonicityReport rep;
  std::mt19937_64 rng(seed);
  const int n = kappa->n();
  auto ds = TangleDataStructure::build(make_context(kappa), l);
  const auto ttd = canonical_decomposition(ds, l);
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  const std::string base = decomposition_code(ttd, identity);
  std::vector<DirectedTreeDecomposition> base_directed;
  if (directed)
    for (int r : ttd.tangles) base_directed.push_back(directed_decomposition(ttd, r));

  for (int trial = 0; trial < trials; ++trial) {
    const auto perm = random_permutation(n, rng);
    const auto inv = inverse_permutation(perm);
    auto pk = permuted(kappa, perm);
    auto pds = TangleDataStructure::build(make_context(pk), l);
    const auto pttd = canonical_decomposition(pds, l);
    ++rep.trials;
    if (decomposition_code(ttd, perm) != decomposition_code(pttd, identity)) {
      ++rep.failures;
      rep.messages.push_back("trial " + std::to_string(trial) + ": canonical decompositions differ");
    }
    // Index of the image of tangle i in the relabelled structure.
    auto image = [&](int i) {
      TangleView v = ds->view(i);
      return pds->find(ds->order_of(i), [&](Subset x) { return v.contains(apply_permutation(x, inv)); });
    };
    for (int i = 2; i <= ds->size(); ++i)
      if (image(i) != i) ++rep.ds_index_changes;
    if (!directed) continue;
    for (std::size_t r = 0; r < ttd.tangles.size(); ++r) {
      ++rep.directed_trials;
      auto pd = directed_decomposition(pttd, image(ttd.tangles[r]));
      if (directed_code(base_directed[r], perm) != directed_code(pd, identity)) {
        ++rep.directed_failures;
        rep.messages.push_back("trial " + std::to_string(trial) + ": directed decompositions for root " +
                               std::to_string(ttd.tangles[r]) + " differ");
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Random inputs

RandomInstance random_instance(std::uint64_t seed, int max_elements) {
  std::mt19937_64 rng(seed);
  static constexpr double kP[] = {0.3, 0.5, 0.7};
  RandomInstance inst;
  inst.seed = seed;
  auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  auto coin = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };
  const int kind = draw(0, 2);
  if (kind == 2) {
    const int rows = draw(1, 3), cols = draw(2, std::min(6, max_elements));
    Gf2Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m.set(r, c, coin(0.5));
    inst.kappa = matroid_connectivity_fn(m);
    inst.description = "gf2 " + std::to_string(rows) + "x" + std::to_string(cols);
    return inst;
  }
  const double p = kP[draw(0, 2)];
  while (true) {
    const int n = kind == 0 ? draw(3, 6) : draw(2, std::min(6, max_elements));
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (coin(p)) edges.emplace_back(a, b);
    if (kind == 0 && (edges.empty() || static_cast<int>(edges.size()) > max_elements)) continue;
    Graph g(n, edges);
    inst.kappa = kind == 0 ? edge_boundary_fn(g) : cut_rank_fn(g);
    inst.description = std::string(kind == 0 ? "er-edge" : "er-cutrank") + " n=" + std::to_string(n) +
                       " p=" + std::to_string(p).substr(0, 3) + " m=" + std::to_string(edges.size());
    return inst;
  }
}

RandomInstance random_block_instance(std::uint64_t seed, int max_elements) {
  std::mt19937_64 rng(seed);
  auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  while (true) {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
    std::string what;
    const int blocks = draw(2, 4);
    for (int b = 0; b < blocks; ++b) {
      // Block: 0 = triangle, 1 = K4, 2 = 4-cycle.
      const int shape = draw(0, 2);
      const int size = shape == 0 ? 3 : 4;
      std::vector<int> vs;
      int glue = -1;
      if (b > 0 && draw(0, 2) > 0) glue = draw(0, vertices - 1);
      for (int i = 0; i < size; ++i) vs.push_back(i == 0 && glue >= 0 ? glue : vertices++);
      if (b > 0 && glue < 0) edges.emplace_back(draw(0, vs[0] - 1), vs[0]);
      for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j)
          if (shape != 2 || j == i + 1 || (i == 0 && j == 3)) edges.emplace_back(vs[i], vs[j]);
      what += shape == 0 ? "K3" : shape == 1 ? "K4" : "C4";
      what += glue >= 0 ? "@" : "-";
    }
    if (static_cast<int>(edges.size()) > max_elements) continue;
    RandomInstance inst;
    inst.seed = seed;
    inst.kappa = edge_boundary_fn(Graph(vertices, edges));
    inst.description = "blocks " + what + " m=" + std::to_string(edges.size());
    return inst;
  }
}

PartialDecomposition random_partial_decomposition(int n, int leaves, std::mt19937_64& rng) {
  // With two leaves there is no internal node, so every labelling is exact.
  if (leaves < 3) throw DomainError("random_partial_decomposition: need at least three leaves");
  const Subset u = Subset::full(n);
  auto coin = [&](int num, int den) { return rng() % static_cast<std::uint64_t>(den) < static_cast<std::uint64_t>(num); };
  while (true) {
    PartialDecomposition pd;
    pd.n = n;
    std::function<int(Subset, int)> grow = [&](Subset x, int budget) {
      const int v = pd.nodes++;
      if (budget == 1) return v;
      Subset y1, y2;
      for (int e = 0; e < n; ++e) {
        if (x.contains(e)) {
          switch (rng() % 4) {
            case 0: y1 = y1.with(e); y2 = y2.with(e); break;
            case 1: case 2: y1 = y1.with(e); break;
            default: y2 = y2.with(e);
          }
        } else {
          if (coin(1, 5)) y1 = y1.with(e);
          if (coin(1, 5)) y2 = y2.with(e);
        }
      }
      const int left = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(budget - 1));
      const int c1 = grow(y1, left);
      pd.edges.push_back({v, c1, y1});
      const int c2 = grow(y2, budget - left);
      pd.edges.push_back({v, c2, y2});
      return v;
    };
    Subset a;
    for (int e = 0; e < n; ++e)
      if (coin(1, 2)) a = a.with(e);
    const int left = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(leaves - 1));
    const int ra = grow(a, left);
    const int rb = grow(u - a, leaves - left);
    pd.edges.insert(pd.edges.begin(), {ra, rb, u - a});
    if (pd.valid() && !pd.exact()) return pd;
  }
}

std::vector<Graph> connected_graphs_up_to_edges(int max_edges) {
  std::vector<Graph> out;
  for (int v = 2; v <= max_edges + 1; ++v) {
    std::vector<std::pair<int, int>> all;
    for (int a = 0; a < v; ++a)
      for (int b = a + 1; b < v; ++b) all.emplace_back(a, b);
    const int p = static_cast<int>(all.size());
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p); ++mask) {
      if (std::popcount(mask) > max_edges || std::popcount(mask) < v - 1) continue;
      std::vector<std::pair<int, int>> edges;
      std::vector<int> comp(v);
      std::iota(comp.begin(), comp.end(), 0);
      std::function<int(int)> root = [&](int x) { return comp[x] == x ? x : comp[x] = root(comp[x]); };
      for (int i = 0; i < p; ++i)
        if ((mask >> i) & 1) {
          edges.push_back(all[i]);
          comp[root(all[i].first)] = root(all[i].second);
        }
      bool connected = true;
      for (int x = 1; x < v; ++x) connected = connected && root(x) == root(0);
      if (connected) out.emplace_back(v, edges);
    }
  }
  return out;
}

std::vector<Graph> graphs_up_to_vertices(int max_vertices) {
  std::vector<Graph> out;
  for (int v = 1; v <= max_vertices; ++v) {
    std::vector<std::pair<int, int>> all;
    for (int a = 0; a < v; ++a)
      for (int b = a + 1; b < v; ++b) all.emplace_back(a, b);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
      std::vector<std::pair<int, int>> edges;
      for (std::size_t i = 0; i < all.size(); ++i)
        if ((mask >> i) & 1) edges.push_back(all[i]);
      out.emplace_back(v, edges);
    }
  }
  return out;
}

}  // namespace tangles::oracles
