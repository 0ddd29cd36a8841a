#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tangles/tangle_ds.hpp"

namespace tangles {

// Tree whose nodes carry pairwise disjoint bags covering the ground set.
struct TreeDecomposition {
  int n = 0;
  std::vector<Subset> bags;
  std::vector<std::pair<int, int>> edges;

  int size() const { return static_cast<int>(bags.size()); }
  Subset universe() const { return Subset::full(n); }
  std::vector<std::vector<int>> adjacency() const;
  // Union of the bags on the side of t after removing the edge st.
  Subset side(int s, int t) const;
  // N(T,β): all sides of all oriented edges, ascending by bits.
  std::vector<Subset> separations() const;
  // Nodes on the path from a to b, both included.
  std::vector<int> path(int a, int b) const;
  int adhesion(const ConnectivityOracle& kappa) const;
  bool valid(std::string* why = nullptr) const;
};

bool nested(Subset x, Subset y, int n);
bool check_nested(const std::vector<Subset>& family, int n);
// Family plus complements, ascending by bits, without duplicates.
std::vector<Subset> complement_closure(std::vector<Subset> family, int n);
// Inclusion-minimal members, ascending by bits.
std::vector<Subset> inclusion_minimal(const std::vector<Subset>& family);

// Tree decomposition with N(T,β) = family. The family must be nested and
// closed under complementation (DomainError otherwise). Minimal members are
// peeled off in rounds; each is attached as a leaf at the unique deepest
// node whose incoming side contains it.
TreeDecomposition nested_to_tree(int n, const std::vector<Subset>& family);

// Tangles of order ≤ l not properly extended by a tangle of order ≤ l,
// ascending by index.
std::vector<int> maximal_tangles(const TangleDataStructure& ds, int l);

struct Assignment {
  std::vector<int> node_of;  // per tangle, -1 when unassigned
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// For each tangle, orients all edges of order below the tangle order
// towards it and takes the sink component, which must be a single node.
Assignment assign_tangle_nodes(const ConnectivityOracle& kappa, const TreeDecomposition& td,
                               const std::vector<TangleView>& tangles);

struct TangleTreeDecomposition {
  TreeDecomposition tree;
  int order = 0;
  TangleDataStructure::Ptr ds;
  std::vector<int> tangles;  // maximal tangles of order ≤ order
  std::vector<int> node_of;  // node of tangles[i]

  // DS index of the tangle at a node, 0 for hub nodes.
  int tangle_at(int node) const;
  bool is_hub(int node) const { return tangle_at(node) == 0; }
};

struct Report {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  void fail(std::string what) { violations.push_back(std::move(what)); }
};

// TD1, TD2 and TD3 checked independently, plus: τ covers exactly the
// maximal tangles, leaves are tangle nodes, E(T) = ∅ iff at most one
// tangle, and τ agrees with a fresh sink assignment.
Report verify_tangle_decomposition(const TangleTreeDecomposition& ttd);

// Nested family for a coherent family of DS indices (order k+1, common
// truncation to k); closed under complementation, ascending by bits.
std::vector<Subset> coherent_nested_family(const TangleDataStructure& ds, const std::vector<int>& family);

// Ground set B ∪ {c1..cm} at a node: elements of the bag first (ascending
// id), then one element per neighbour, ordered by the bits of its
// expansion.
struct Contraction {
  int node = -1;
  Subset bag;
  std::vector<Subset> expansion_of;  // per element of the contracted ground set
  OraclePtr kappa;                   // κ(X↑)

  int size() const { return static_cast<int>(expansion_of.size()); }
  bool identity() const;
  Subset expand(Subset x) const;
};

Contraction contract_at(const OraclePtr& kappa, const TreeDecomposition& td, int t);

// {X : X↑ ∈ T}; nullopt when the expansion of some fresh element lies in T.
std::optional<TangleView> project_tangle(const ConnectivityOracle& kappa, const TangleView& t,
                                         const Contraction& c);

TangleTreeDecomposition canonical_decomposition(TangleDataStructure::Ptr ds, int l);
TangleTreeDecomposition canonical_decomposition(const OraclePtr& kappa, int l);

struct RefineStats {
  int recursions = 0;
  int max_depth = 0;
};

// Decomposition of adhesion < l with exactly one l-maximal κ∧t-tangle at
// every node. Throws IntegrityError if a recursive call would not shrink the
// ground set.
TreeDecomposition refine_single_tangle(const OraclePtr& kappa, int l, RefineStats* stats = nullptr);

// Number of l-maximal κ∧t-tangles at every node.
std::vector<int> local_maximal_counts(const OraclePtr& kappa, const TreeDecomposition& td, int l);

// Removes empty-bag hubs by merging each into its neighbour of smallest id.
// Depends on node numbering, so the result is not canonical.
TreeDecomposition prune_empty_hubs(const TreeDecomposition& td);

}  // namespace tangles
