#include "tangles/connectivity.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "tangles/errors.hpp"
#include "tangles/kernels.hpp"

namespace tangles {

Graph::Graph(int n_, std::vector<std::pair<int, int>> e) : n(n_), edges(std::move(e)) {
  if (n < 0 || n > kMaxElements) throw DomainError("graph vertex count out of range");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw DomainError("edge endpoint out of range");
    if (u == v) throw DomainError("loops are not supported");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
      throw DomainError("parallel edges are not supported");
  }
}

std::vector<std::uint64_t> Graph::adjacency() const {
  std::vector<std::uint64_t> adj(n, 0);
  for (auto [u, v] : edges) {
    adj[u] |= std::uint64_t{1} << v;
    adj[v] |= std::uint64_t{1} << u;
  }
  return adj;
}

void Gf2Matrix::set(int r, int c, bool v) {
  if (v)
    columns[c] |= std::uint64_t{1} << r;
  else
    columns[c] &= ~(std::uint64_t{1} << r);
}

int gf2_rank(std::vector<std::uint64_t> vectors) {
  int rank = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    std::uint64_t v = vectors[i];
    if (!v) continue;
    ++rank;
    std::uint64_t pivot = v & (~v + 1);
    for (std::size_t j = i + 1; j < vectors.size(); ++j)
      if (vectors[j] & pivot) vectors[j] ^= v;
  }
  return rank;
}

ConnectivityOracle::ConnectivityOracle(GroundSet ground, Fn fn, OracleOptions opts)
    : ground_(std::move(ground)), fn_(std::move(fn)) {
  if (ground_.n < 1 || ground_.n > kMaxElements)
    throw DomainError("ground set size must be between 1 and 64");
  if (ground_.n <= opts.memo_limit) memo_.assign(std::size_t{1} << ground_.n, kUnset);
}

int ConnectivityOracle::raw(Subset x) const {
  int v = fn_(x);
  if (v < 0 || v >= kUnset) throw IntegrityError("connectivity value out of range: " + std::to_string(v));
  return v;
}

int ConnectivityOracle::evaluate(Subset x) const {
  if (!ground_.owns(x)) throw DomainError("subset " + to_string(x) + " is not over the ground set");
  if (memo_.empty()) {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return raw(x);
  }
  std::atomic_ref<std::uint16_t> slot(memo_[x.bits]);
  std::uint16_t v = slot.load(std::memory_order_acquire);
  if (v != kUnset) return v;
  auto fresh = static_cast<std::uint16_t>(raw(x));
  std::uint16_t expected = kUnset;
  if (slot.compare_exchange_strong(expected, fresh, std::memory_order_acq_rel))
    calls_.fetch_add(1, std::memory_order_relaxed);
  return fresh;
}

const std::uint16_t* ConnectivityOracle::table() const {
  if (memo_.empty()) return nullptr;
  if (!full_.load(std::memory_order_acquire)) {
    std::lock_guard lock(fill_mutex_);
    if (!full_.load(std::memory_order_relaxed)) {
      auto stored = kernels::fill_missing(ground_.n, [this](Subset s) { return raw(s); }, memo_.data());
      calls_.fetch_add(stored, std::memory_order_relaxed);
      full_.store(true, std::memory_order_release);
    }
  }
  return memo_.data();
}

int ConnectivityOracle::max_value() const {
  const std::uint16_t* t = table();
  if (!t) throw SizeGuardError("max_value needs a memoized oracle");
  return *std::max_element(t, t + (std::size_t{1} << ground_.n));
}

OraclePtr make_oracle(GroundSet ground, ConnectivityOracle::Fn fn, OracleOptions opts, std::string name) {
  auto p = std::make_shared<ConnectivityOracle>(std::move(ground), std::move(fn), opts);
  p->name = std::move(name);
  return p;
}

OraclePtr vertex_cut_fn(const Graph& g) {
  auto adj = g.adjacency();
  int n = g.n;
  return make_oracle(GroundSet(n), [adj, n](Subset x) {
    Subset rest = complement(x, n);
    int cut = 0;
    x.for_each([&](int u) { cut += std::popcount(adj[u] & rest.bits); });
    return cut;
  }, {}, "vertex-cut");
}

OraclePtr edge_boundary_fn(const Graph& g) {
  int m = static_cast<int>(g.edges.size());
  if (m < 1 || m > kMaxElements) throw DomainError("edge-boundary needs 1..64 edges");
  std::vector<std::uint64_t> incident(g.n, 0);
  for (int e = 0; e < m; ++e) {
    incident[g.edges[e].first] |= std::uint64_t{1} << e;
    incident[g.edges[e].second] |= std::uint64_t{1} << e;
  }
  return make_oracle(GroundSet(m), [incident, m](Subset x) {
    Subset rest = complement(x, m);
    int boundary = 0;
    for (std::uint64_t inc : incident)
      if ((inc & x.bits) && (inc & rest.bits)) ++boundary;
    return boundary;
  }, {}, "edge-boundary");
}

OraclePtr cut_rank_fn(const Graph& g) {
  auto adj = g.adjacency();
  int n = g.n;
  return make_oracle(GroundSet(n), [adj, n](Subset x) {
    Subset rest = complement(x, n);
    std::vector<std::uint64_t> rows;
    rows.reserve(x.size());
    x.for_each([&](int u) { rows.push_back(adj[u] & rest.bits); });
    return gf2_rank(std::move(rows));
  }, {}, "cut-rank");
}

OraclePtr matroid_connectivity_fn(const Gf2Matrix& m) {
  if (m.cols < 1 || m.rows < 1) throw DomainError("matroid matrix must be nonempty");
  if (m.rows > 64) throw DomainError("matroid matrix has more than 64 rows");
  auto cols = m.columns;
  int n = m.cols;
  auto rank_of = [cols](Subset x) {
    std::vector<std::uint64_t> v;
    x.for_each([&](int c) { v.push_back(cols[c]); });
    return gf2_rank(std::move(v));
  };
  int total = rank_of(Subset::full(n));
  return make_oracle(GroundSet(n), [rank_of, n, total](Subset x) {
    return rank_of(x) + rank_of(complement(x, n)) - total;
  }, {}, "matroid");
}

OraclePtr normalize(GroundSet ground, const std::function<int(Subset)>& raw, OracleOptions opts) {
  int shift = raw(Subset());
  return make_oracle(std::move(ground), [raw, shift](Subset x) { return raw(x) - shift; }, opts,
                     "normalized");
}

Subset apply_permutation(Subset x, const std::vector<int>& perm) {
  Subset out;
  x.for_each([&](int i) { out = out.with(perm[i]); });
  return out;
}

std::vector<int> inverse_permutation(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return inv;
}

OraclePtr permuted(const OraclePtr& kappa, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != kappa->n()) throw DomainError("permutation size mismatch");
  auto inv = inverse_permutation(perm);
  GroundSet g(kappa->n());
  if (!kappa->ground().labels.empty()) {
    g.labels.resize(kappa->n());
    for (int i = 0; i < kappa->n(); ++i) g.labels[perm[i]] = kappa->ground().label(i);
  }
  return make_oracle(std::move(g), [kappa, inv](Subset x) { return kappa->evaluate(apply_permutation(x, inv)); },
                     {}, kappa->name);
}

namespace {

std::string describe_pair(const char* what, Subset x, Subset y) {
  return std::string(what) + " fails for X=" + to_string(x) + ", Y=" + to_string(y);
}

AxiomReport check_table(const std::uint16_t* t, int n) {
  AxiomReport rep;
  const std::uint64_t size = std::uint64_t{1} << n;
  const std::uint64_t all = size - 1;
  if (t[0] != 0) {
    rep.ok = false;
    rep.violation = "kappa(empty) = " + std::to_string(t[0]);
    return rep;
  }
  for (std::uint64_t x = 0; x < size; ++x)
    if (t[x] != t[all ^ x]) {
      rep.ok = false;
      rep.violation = "symmetry fails for X=" + to_string(Subset(x));
      return rep;
    }
  if (auto v = kernels::submodularity_violation(t, n)) {
    rep.ok = false;
    rep.violation = describe_pair("submodularity", v->first, v->second);
    return rep;
  }
  if (auto v = kernels::posimodularity_violation(t, n)) {
    rep.ok = false;
    rep.violation = describe_pair("posimodularity", v->first, v->second);
  }
  return rep;
}

}  // namespace

AxiomReport verify_axioms(const ConnectivityOracle& kappa, const AxiomOptions& opts) {
  const int n = kappa.n();
  if (n <= opts.exhaustive_bound) {
    if (const std::uint16_t* t = kappa.table()) return check_table(t, n);
    std::vector<std::uint16_t> local(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < local.size(); ++x) local[x] = static_cast<std::uint16_t>(kappa(Subset(x)));
    return check_table(local.data(), n);
  }
  if (n > opts.sampling_bound)
    throw SizeGuardError("verify_axioms: |U|=" + std::to_string(n) + " exceeds sampling bound " +
                         std::to_string(opts.sampling_bound));
  AxiomReport rep;
  rep.exhaustive = false;
  rep.seed = opts.seed;
  std::mt19937_64 rng(opts.seed);
  const Subset all = kappa.universe();
  if (kappa(Subset()) != 0) {
    rep.ok = false;
    rep.violation = "kappa(empty) = " + std::to_string(kappa(Subset()));
    return rep;
  }
  for (std::uint64_t i = 0; i < opts.samples; ++i) {
    Subset x(rng() & all.bits), y(rng() & all.bits);
    int kx = kappa(x), ky = kappa(y);
    if (kx != kappa(all - x)) {
      rep.ok = false;
      rep.violation = "symmetry fails for X=" + to_string(x);
      return rep;
    }
    if (kx + ky < kappa(x & y) + kappa(x | y)) {
      rep.ok = false;
      rep.violation = describe_pair("submodularity", x, y);
      return rep;
    }
    if (kx + ky < kappa(x - y) + kappa(y - x)) {
      rep.ok = false;
      rep.violation = describe_pair("posimodularity", x, y);
      return rep;
    }
  }
  return rep;
}

}  // namespace tangles
