#pragma once

#include <string>
#include <vector>

#include "tangles/connectivity.hpp"

namespace tangles {

// Cubic tree with a set on every oriented edge. Each edge stores the set on
// the side of `b`; the set on the side of `a` is its complement.
struct PartialDecomposition {
  struct Edge {
    int a = 0;
    int b = 0;
    Subset toward_b;
  };

  int n = 0;      // ground set size
  int nodes = 0;
  std::vector<Edge> edges;

  Subset universe() const { return Subset::full(n); }
  // ξ̃(s,t) for the edge with index e, oriented away from `from`.
  Subset label(int e, int from) const;
  std::vector<std::vector<int>> incident_edges() const;
  std::vector<int> leaves() const;
  // ξ(u) for a leaf u.
  Subset leaf_set(int leaf) const;

  // Tree, cubic, labels over the ground set, covering at internal nodes.
  bool valid(std::string* why = nullptr) const;
  // Outgoing sets at every internal node are pairwise disjoint.
  bool exact() const;
};

int width(const ConnectivityOracle& kappa, const PartialDecomposition& pd);

// Exact partial decomposition on the same tree whose edge orders do not
// exceed the input's and whose leaf sets are subsets of the input's. Uses
// the rooted binary rewrite; throws DomainError on invalid input.
PartialDecomposition exactify(const ConnectivityOracle& kappa, const PartialDecomposition& pd);

// Branch decomposition from a cubic tree whose leaves carry single elements:
// leaf_element[v] is the element at node v, or -1 for internal nodes.
PartialDecomposition branch_decomposition(int n, const std::vector<std::pair<int, int>>& tree_edges,
                                          const std::vector<int>& leaf_element);

}  // namespace tangles
