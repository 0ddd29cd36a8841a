#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tangles/subset.hpp"

namespace tangles {

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  Graph() = default;
  Graph(int n_, std::vector<std::pair<int, int>> e);
  // Adjacency rows as bitmasks; requires n <= 64.
  std::vector<std::uint64_t> adjacency() const;
};

// Matrix over GF(2); columns are stored as bitmasks over rows.
struct Gf2Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint64_t> columns;

  Gf2Matrix() = default;
  Gf2Matrix(int r, int c) : rows(r), cols(c), columns(c, 0) {}
  void set(int r, int c, bool v);
  bool get(int r, int c) const { return (columns[c] >> r) & 1u; }
};

// Rank over GF(2) of a list of bit vectors. Pivot is the lowest set bit.
int gf2_rank(std::vector<std::uint64_t> vectors);

struct OracleOptions {
  int memo_limit = 24;  // memoize the value table when n <= memo_limit
};

// Evaluation access to a connectivity function on a fixed ground set.
// Thread safe: the call counter is atomic and the memo table is written
// with compare-and-swap, so concurrent readers never see torn values.
class ConnectivityOracle {
 public:
  using Fn = std::function<int(Subset)>;
  static constexpr std::uint16_t kUnset = 0xFFFF;

  ConnectivityOracle(GroundSet ground, Fn fn, OracleOptions opts = {});
  ConnectivityOracle(const ConnectivityOracle&) = delete;
  ConnectivityOracle& operator=(const ConnectivityOracle&) = delete;

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.n; }
  Subset universe() const { return ground_.universe(); }
  Subset complement(Subset x) const { return ground_.complement(x); }

  int evaluate(Subset x) const;
  int operator()(Subset x) const { return evaluate(x); }

  // Number of underlying evaluations. With memoization each distinct set is
  // counted once, so counts are reproducible under parallel scans.
  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }
  bool memoized() const { return !memo_.empty(); }

  // Dense value table indexed by subset bits; fills missing entries on first
  // use. Returns nullptr when the oracle is not memoized.
  const std::uint16_t* table() const;

  // Largest value over all subsets (needs the table).
  int max_value() const;

  std::string name;

 private:
  int raw(Subset x) const;

  GroundSet ground_;
  Fn fn_;
  mutable std::vector<std::uint16_t> memo_;
  mutable std::atomic<bool> full_{false};
  mutable std::mutex fill_mutex_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

using OraclePtr = std::shared_ptr<const ConnectivityOracle>;

OraclePtr make_oracle(GroundSet ground, ConnectivityOracle::Fn fn, OracleOptions opts = {},
                      std::string name = {});

OraclePtr vertex_cut_fn(const Graph& g);
OraclePtr edge_boundary_fn(const Graph& g);
OraclePtr cut_rank_fn(const Graph& g);
OraclePtr matroid_connectivity_fn(const Gf2Matrix& m);

// Shift a symmetric submodular function so that the empty set has value 0.
OraclePtr normalize(GroundSet ground, const std::function<int(Subset)>& raw,
                    OracleOptions opts = {});

// perm[i] is the new id of old element i. The returned oracle evaluates
// kappa(perm^{-1}(X)).
OraclePtr permuted(const OraclePtr& kappa, const std::vector<int>& perm);
Subset apply_permutation(Subset x, const std::vector<int>& perm);
std::vector<int> inverse_permutation(const std::vector<int>& perm);

struct AxiomOptions {
  int exhaustive_bound = 12;
  int sampling_bound = 20;
  std::uint64_t samples = 200000;
  std::uint64_t seed = 0x5eed;
};

struct AxiomReport {
  bool ok = true;
  bool exhaustive = true;
  std::optional<std::uint64_t> seed;  // set when sampling was used
  std::string violation;              // first violation, empty when ok
};

// Checks kappa(empty)=0, symmetry, submodularity and posimodularity.
// Throws SizeGuardError above the sampling bound.
AxiomReport verify_axioms(const ConnectivityOracle& kappa, const AxiomOptions& opts = {});

}  // namespace tangles
