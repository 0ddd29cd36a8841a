#pragma once

// Exponential reference implementations for small instances. They share no
// code with the algorithms they check beyond the oracle and Subset.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tangles/directed.hpp"
#include "tangles/partial_decomposition.hpp"

namespace tangles::oracles {

struct BruteForceLimits {
  int max_elements = 10;
  std::uint64_t max_nodes = 50'000'000;  // search nodes before refusing
};

// All tangles of order exactly k (T0–T3 checked literally), members sorted.
std::vector<ExplicitTangle> brute_force_tangles(const ConnectivityOracle& kappa, int k,
                                                const BruteForceLimits& limits = {});

// Minimum width over all branch decompositions; |U| ≤ max_elements (7).
int brute_force_branch_width(const ConnectivityOracle& kappa, int max_elements = 7);

struct LeftmostResult {
  std::optional<Subset> set;  // nullopt when nothing is feasible
  int value = 0;
  bool meet_is_minimizer = true;
  std::string report;
};

// Intersection of all feasible minimizers of κ; reports when it is not
// itself a feasible minimizer.
LeftmostResult brute_force_leftmost(const ConnectivityOracle& kappa, const std::function<bool(Subset)>& feasible);
// Box x ⊆ Z ⊆ complement(y).
LeftmostResult brute_force_leftmost_box(const ConnectivityOracle& kappa, Subset x, Subset y);
// Z ∈ t and complement(Z) ∈ u.
LeftmostResult brute_force_leftmost_tangles(const ConnectivityOracle& kappa, const ExplicitTangle& t,
                                            const ExplicitTangle& u);

// Members of a tangle given by a view, by scanning all sets of order below
// its order. Requires |U| ≤ 16.
ExplicitTangle materialize(const ConnectivityOracle& kappa, const TangleView& t);

// Canonical string of a node-labelled tree (AHU encoding); unrooted trees
// are encoded from their centre(s).
std::string tree_code(const std::vector<std::vector<int>>& adj, const std::vector<std::string>& labels,
                      std::optional<int> root = std::nullopt);

// Codes under an element relabelling perm (old id → new id).
std::string decomposition_code(const TangleTreeDecomposition& ttd, const std::vector<int>& perm);
std::string directed_code(const DirectedTreeDecomposition& dtd, const std::vector<int>& perm);

struct CanonicityReport {
  int trials = 0;
  int failures = 0;
  int directed_trials = 0;
  int directed_failures = 0;
  int ds_index_changes = 0;  // informational only
  std::vector<std::string> messages;
  bool ok() const { return failures == 0 && directed_failures == 0; }
};

// Relabels the ground set by random permutations and compares decompositions
// up to isomorphism. With `directed`, also compares directed decompositions
// for every root, mapping the root through the permutation.
CanonicityReport canonicity_harness(const OraclePtr& kappa, int l, int trials, std::uint64_t seed,
                                    bool directed = true);

std::vector<int> random_permutation(int n, std::mt19937_64& rng);

struct RandomInstance {
  std::string description;
  std::uint64_t seed = 0;
  OraclePtr kappa;
};

// Erdős–Rényi graphs (edge boundary or cut rank) and GF(2) matroids, chosen
// by the seed, with at most max_elements elements.
RandomInstance random_instance(std::uint64_t seed, int max_elements = 8);

// Edge-boundary instances with several highly connected regions: small
// cliques and cycles glued along single vertices or joined by edges. Used to
// exercise decompositions with many maximal tangles.
RandomInstance random_block_instance(std::uint64_t seed, int max_elements = 14);

// Valid partial decomposition with at least one node that is not exact.
// The first split is exact; every other split covers its parent with
// random overlap or excess. Needs at least three leaves.
PartialDecomposition random_partial_decomposition(int n, int leaves, std::mt19937_64& rng);

// Enumerations used by the duality sweep.
std::vector<Graph> connected_graphs_up_to_edges(int max_edges);
std::vector<Graph> graphs_up_to_vertices(int max_vertices);

}  // namespace tangles::oracles
