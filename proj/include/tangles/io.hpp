#pragma once

// Instance files, decomposition JSON and DOT export.

#include <string>
#include <vector>

#include "tangles/directed.hpp"

namespace tangles::io {

enum class FnKind { kEdgeBoundary, kVertexCut, kCutRank, kMatroid };

FnKind parse_fn(const std::string& name);  // DomainError on unknown names
std::string fn_name(FnKind f);

struct Instance {
  enum class Kind { kGraph, kMatrix } kind = Kind::kGraph;
  Graph graph;
  Gf2Matrix matrix;
};

// `where` prefixes error messages (usually the path).
Instance parse_instance(const std::string& text, const std::string& where = "<input>");
Instance read_instance(const std::string& path);

// Edge-boundary for graphs and the matroid function for matrices.
FnKind default_fn(const Instance& inst);
// Rejects combinations such as a matrix with a graph function (DomainError)
// and ground sets above 64 elements (SizeGuardError).
OraclePtr make_oracle(const Instance& inst, FnKind f);
// Printable name per element: "u-v" for edges, the vertex or column id
// otherwise.
std::vector<std::string> element_labels(const Instance& inst, FnKind f);

struct JsonContext {
  std::string fn;
  std::vector<std::string> labels;
};

// Stable-sorted JSON documents. Node ids follow the sort order, so equal
// inputs give byte-identical output.
std::string decomposition_json(const TangleTreeDecomposition& ttd, const JsonContext& jc);
std::string refined_json(const ConnectivityOracle& kappa, const TreeDecomposition& td, int order,
                         const JsonContext& jc);
std::string directed_json(const DirectedTreeDecomposition& dtd, const JsonContext& jc);

std::string decomposition_dot(const TangleTreeDecomposition& ttd);
std::string directed_dot(const DirectedTreeDecomposition& dtd);

// Checks a document produced by one of the writers against an instance.
// Tangles are re-derived from a tangle data structure of the document's
// order; nothing in the document is trusted.
Report verify_json(const std::string& text, const OraclePtr& kappa);

}  // namespace tangles::io
