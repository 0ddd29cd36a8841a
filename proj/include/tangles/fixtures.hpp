#pragma once

// Small named instances used by tests, the acceptance suite and benchmarks.

#include "tangles/connectivity.hpp"

namespace tangles::fixtures {

// Three triangles sharing vertex 0; edges of triangle i are 3i, 3i+1, 3i+2.
Graph triforce_graph();
Graph path3_graph();
Graph k4_graph();
Graph grid3_graph();
Graph cycle_graph(int n);

OraclePtr triforce();  // edge-boundary, |U| = 9
OraclePtr p3();        // edge-boundary, |U| = 2
OraclePtr k4();        // edge-boundary, |U| = 6
OraclePtr grid3();     // edge-boundary, |U| = 12
OraclePtr c5rank();    // cut-rank on the 5-cycle, |U| = 5

// Edge set of triangle i (0-based) in the triforce instance.
inline Subset triangle(int i) { return Subset(std::uint64_t{7} << (3 * i)); }

}  // namespace tangles::fixtures
