#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tangles/tangles.hpp"

namespace tangles {

// Binary tree whose leaves correspond to the tangles of one order. Each
// non-root node stores the separator on the edge from its parent; the two
// children of a node carry complementary separators.
struct DistinctionTree {
  struct Node {
    int parent = -1;
    int child[2] = {-1, -1};
    Subset separator;  // S(parent, this); unused at the root
    int leaf = -1;     // 0-based leaf number, -1 for internal nodes
  };
  std::vector<Node> nodes;  // nodes[0] is the root

  bool is_leaf(int v) const { return nodes[v].child[0] < 0; }
  int leaf_count() const;
  int leaf_node(int leaf) const;
  // Separators on the path from the root to a node.
  std::vector<Subset> path(int v) const;
};

enum class CandidateStrategy {
  kLatticeScan,    // least members of L(B) found among the listed lattice members
  kMinimalMember,  // minimal_member_in_box on each lattice box
};

struct DsOptions {
  int max_order = 4;
  CandidateStrategy strategy = CandidateStrategy::kLatticeScan;
};

// Registry of all tangles of order ≤ k with 1-based indices; indices of a
// lower order precede those of higher orders. Not canonical: indices depend
// on element ids.
class TangleDataStructure {
 public:
  using Ptr = std::shared_ptr<const TangleDataStructure>;

  static Ptr build(ContextPtr ctx, int k, const DsOptions& opts = {});
  // Adds one level on top of an existing structure.
  static Ptr extend(Ptr lower, const DsOptions& opts = {});

  int k() const { return k_; }
  const ContextPtr& context() const { return ctx_; }
  const Ptr& lower() const { return lower_; }
  // Number of tangles of order ≤ l.
  int size(int l) const;
  int size() const { return size(k_); }
  int order_of(int i) const;

  bool contains(int i, Subset x) const;
  int truncation(int i, int l) const;
  std::optional<Subset> separation(int i, int j) const;
  int find(int l, const MembershipFn& oracle) const;

  Tangle tangle(int i) const;
  TangleView view(int i) const;
  // Does some set have order exactly l − 1 (so level l is not a mere copy
  // of level l − 1 as set families)?
  bool level_has_exact_order(int l) const;

  // Tree of level l, or nullptr when there is no tangle of order l.
  const DistinctionTree* tree(int l) const;

  std::string to_json() const;
  static Ptr from_json(ContextPtr ctx, const std::string& text);

 private:
  TangleDataStructure() = default;
  const TangleDataStructure& level(int l) const;
  void finish_level();

  ContextPtr ctx_;
  int k_ = 0;
  Ptr lower_;
  std::optional<DistinctionTree> tree_;
  std::vector<Tangle> leaves_;
};

}  // namespace tangles
