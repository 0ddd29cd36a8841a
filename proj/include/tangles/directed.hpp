#pragma once

#include <vector>

#include "tangles/tree_decomposition.hpp"

namespace tangles {

// Rooted tree with one maximal tangle per node and a cone per node. Bags
// are cones minus the cones of the children.
struct DirectedTreeDecomposition {
  int n = 0;
  int order = 0;
  int root = 0;
  std::vector<int> parent;   // -1 at the root
  std::vector<Subset> cone;
  std::vector<int> tangle;   // DS index per node
  TangleDataStructure::Ptr ds;

  int size() const { return static_cast<int>(cone.size()); }
  std::vector<std::vector<int>> children() const;
  std::vector<Subset> bags() const;
  // Is u a descendant of t (or t itself)?
  bool below(int t, int u) const;
};

struct DirectedStats {
  int rounds = 0;  // restructuring rounds until no node was bad
  int moved = 0;
};

// The root tangle must be one of the maximal tangles of order ≤ l (given by
// the decomposition); DomainError otherwise.
DirectedTreeDecomposition directed_decomposition(const TangleTreeDecomposition& ttd, int root_tangle,
                                                 DirectedStats* stats = nullptr);
DirectedTreeDecomposition directed_decomposition(TangleDataStructure::Ptr ds, int l, int root_tangle,
                                                 DirectedStats* stats = nullptr);

// Least X ∈ T with X ⊆ within and κ(X) minimum, or nullopt.
std::optional<Subset> leftmost_minimum_member(const TangleContext& ctx, const TangleView& t, Subset within);

// Tree and cone conditions, bijectivity of τ onto the maximal tangles,
// DTD1 and DTD2.
Report verify_directed(const DirectedTreeDecomposition& dtd);

}  // namespace tangles
