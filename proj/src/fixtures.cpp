#include "tangles/fixtures.hpp"

namespace tangles::fixtures {

Graph triforce_graph() {
  return Graph(7, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}, {0, 5}, {0, 6}, {5, 6}});
}

Graph path3_graph() { return Graph(3, {{0, 1}, {1, 2}}); }

Graph k4_graph() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

Graph grid3_graph() {
  std::vector<std::pair<int, int>> e;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 2; ++c) e.push_back({3 * r + c, 3 * r + c + 1});
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 3; ++c) e.push_back({3 * r + c, 3 * (r + 1) + c});
  return Graph(9, e);
}

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph(n, e);
}

namespace {
OraclePtr named(OraclePtr p, const char* name) {
  const_cast<ConnectivityOracle&>(*p).name = name;
  return p;
}
}  // namespace

OraclePtr triforce() { return named(edge_boundary_fn(triforce_graph()), "triforce"); }
OraclePtr p3() { return named(edge_boundary_fn(path3_graph()), "p3"); }
OraclePtr k4() { return named(edge_boundary_fn(k4_graph()), "k4"); }
OraclePtr grid3() { return named(edge_boundary_fn(grid3_graph()), "grid3"); }
OraclePtr c5rank() { return named(cut_rank_fn(cycle_graph(5)), "c5rank"); }

}  // namespace tangles::fixtures
