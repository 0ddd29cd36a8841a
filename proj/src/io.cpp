#include "tangles/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tangles/errors.hpp"

namespace tangles::io {

using json = nlohmann::ordered_json;

FnKind parse_fn(const std::string& name) {
  static const std::map<std::string, FnKind> kNames{{"edge-boundary", FnKind::kEdgeBoundary},
                                                    {"vertex-cut", FnKind::kVertexCut},
                                                    {"cut-rank", FnKind::kCutRank},
                                                    {"matroid", FnKind::kMatroid}};
  auto it = kNames.find(name);
  if (it == kNames.end()) throw DomainError("unknown connectivity function '" + name + "'");
  return it->second;
}

std::string fn_name(FnKind f) {
  switch (f) {
    case FnKind::kEdgeBoundary: return "edge-boundary";
    case FnKind::kVertexCut: return "vertex-cut";
    case FnKind::kCutRank: return "cut-rank";
    case FnKind::kMatroid: return "matroid";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Instance grammar

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  for (int number = 1; std::getline(in, raw); ++number) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    for (std::string tok; ls >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

int parse_int(const std::string& where, const Line& line, const std::string& tok, const char* what) {
  std::size_t used = 0;
  long v = -1;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || v < 0 || v > 1'000'000)
    throw ParseError(where, line.number, std::string("expected a non-negative integer for ") + what + ", got '" +
                                             tok + "'");
  return static_cast<int>(v);
}

}  // namespace

Instance parse_instance(const std::string& text, const std::string& where) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(where, 1, "empty instance");
  const Line& head = lines[0];
  if (head.tokens.size() != 3 || (head.tokens[0] != "graph" && head.tokens[0] != "matrix"))
    throw ParseError(where, head.number, "expected 'graph <n> <m>' or 'matrix <rows> <cols>'");
  Instance inst;
  const int a = parse_int(where, head, head.tokens[1], head.tokens[0] == "graph" ? "n" : "rows");
  const int b = parse_int(where, head, head.tokens[2], head.tokens[0] == "graph" ? "m" : "cols");
  const int body = static_cast<int>(lines.size()) - 1;
  const int last = lines.back().number;

  if (head.tokens[0] == "graph") {
    inst.kind = Instance::Kind::kGraph;
    if (a > kMaxElements) throw SizeGuardError(where + ": " + std::to_string(a) + " vertices exceed the 64-element limit");
    if (body != b)
      throw ParseError(where, body < b ? last + 1 : lines[b + 1].number,
                       "expected " + std::to_string(b) + " edge lines, found " + std::to_string(body));
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= b; ++i) {
      const Line& l = lines[i];
      if (l.tokens.size() != 2) throw ParseError(where, l.number, "expected '<u> <v>'");
      int u = parse_int(where, l, l.tokens[0], "u"), v = parse_int(where, l, l.tokens[1], "v");
      if (u >= a || v >= a) throw ParseError(where, l.number, "vertex out of range 0.." + std::to_string(a - 1));
      if (u == v) throw ParseError(where, l.number, "loop at vertex " + std::to_string(u));
      if (!seen.insert(std::minmax(u, v)).second) throw ParseError(where, l.number, "repeated edge");
      edges.emplace_back(u, v);
    }
    inst.graph = Graph(a, edges);
  } else {
    inst.kind = Instance::Kind::kMatrix;
    if (a < 1 || b < 1) throw ParseError(where, head.number, "matrix must have at least one row and column");
    if (a > 64 || b > kMaxElements)
      throw SizeGuardError(where + ": matrix " + std::to_string(a) + "x" + std::to_string(b) +
                           " exceeds the 64-element limit");
    if (body != a)
      throw ParseError(where, body < a ? last + 1 : lines[a + 1].number,
                       "expected " + std::to_string(a) + " matrix rows, found " + std::to_string(body));
    inst.matrix = Gf2Matrix(a, b);
    for (int r = 0; r < a; ++r) {
      const Line& l = lines[r + 1];
      // Either one token per entry or a single 0/1 string.
      std::string row;
      if (l.tokens.size() == 1 && static_cast<int>(l.tokens[0].size()) == b) {
        row = l.tokens[0];
      } else if (static_cast<int>(l.tokens.size()) == b) {
        for (const auto& t : l.tokens) row += t.size() == 1 ? t : "?";
      } else {
        throw ParseError(where, l.number, "expected " + std::to_string(b) + " entries");
      }
      for (int c = 0; c < b; ++c) {
        if (row[c] != '0' && row[c] != '1') throw ParseError(where, l.number, "entries must be 0 or 1");
        inst.matrix.set(r, c, row[c] == '1');
      }
    }
  }
  return inst;
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str(), path);
}

FnKind default_fn(const Instance& inst) {
  return inst.kind == Instance::Kind::kGraph ? FnKind::kEdgeBoundary : FnKind::kMatroid;
}

OraclePtr make_oracle(const Instance& inst, FnKind f) {
  if ((inst.kind == Instance::Kind::kMatrix) != (f == FnKind::kMatroid))
    throw DomainError("function " + fn_name(f) + " does not apply to a " +
                      (inst.kind == Instance::Kind::kGraph ? "graph" : "matrix") + " instance");
  OraclePtr o;
  switch (f) {
    case FnKind::kEdgeBoundary:
      if (inst.graph.edges.size() > static_cast<std::size_t>(kMaxElements))
        throw SizeGuardError(std::to_string(inst.graph.edges.size()) + " edges exceed the 64-element limit");
      if (inst.graph.edges.empty()) throw DomainError("edge-boundary needs at least one edge");
      o = edge_boundary_fn(inst.graph);
      break;
    case FnKind::kVertexCut: o = vertex_cut_fn(inst.graph); break;
    case FnKind::kCutRank: o = cut_rank_fn(inst.graph); break;
    case FnKind::kMatroid: o = matroid_connectivity_fn(inst.matrix); break;
  }
  if (o->n() < 1) throw DomainError("the ground set is empty");
  return o;
}

std::vector<std::string> element_labels(const Instance& inst, FnKind f) {
  std::vector<std::string> out;
  if (f == FnKind::kEdgeBoundary) {
    for (auto [u, v] : inst.graph.edges) out.push_back(std::to_string(u) + "-" + std::to_string(v));
  } else {
    const int n = f == FnKind::kMatroid ? inst.matrix.cols : inst.graph.n;
    for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

constexpr int kFormatVersion = 1;

json ids(Subset x) { return json(x.elements()); }

// One array element per line, each compact, so diffs stay readable.
std::string render(const json& doc) {
  std::string out = "{\n";
  bool first = true;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += "  " + json(it.key()).dump() + ": ";
    if (it->is_array() && !it->empty() && it->front().is_object()) {
      out += "[\n";
      for (std::size_t i = 0; i < it->size(); ++i) out += "    " + (*it)[i].dump() + (i + 1 < it->size() ? ",\n" : "\n");
      out += "  ]";
    } else {
      out += it->dump();
    }
  }
  return out + "\n}\n";
}

json header(const char* kind, int n, int order, const JsonContext& jc) {
  json doc = json::object();
  doc["format"] = "tangle-decomposition";
  doc["version"] = kFormatVersion;
  doc["kind"] = kind;
  doc["fn"] = jc.fn;
  doc["n"] = n;
  doc["order"] = order;
  doc["elements"] = jc.labels;
  return doc;
}

// New position of every node: ascending by bag elements, ties by the sorted
// list of outgoing sides.
std::vector<int> stable_order(const TreeDecomposition& td) {
  const auto adj = td.adjacency();
  std::vector<std::pair<std::vector<int>, std::vector<std::vector<int>>>> key(td.size());
  for (int v = 0; v < td.size(); ++v) {
    key[v].first = td.bags[v].elements();
    for (int w : adj[v]) key[v].second.push_back(td.side(v, w).elements());
    std::sort(key[v].second.begin(), key[v].second.end());
  }
  std::vector<int> order(td.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
  std::vector<int> pos(td.size());
  for (int i = 0; i < td.size(); ++i) pos[order[i]] = i;
  return pos;
}

json tree_edges(const ConnectivityOracle& kappa, const TreeDecomposition& td, const std::vector<int>& pos) {
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : td.edges) edges.emplace_back(a, b);
  std::sort(edges.begin(), edges.end(), [&](auto x, auto y) {
    return std::minmax(pos[x.first], pos[x.second]) < std::minmax(pos[y.first], pos[y.second]);
  });
  json out = json::array();
  for (auto [a, b] : edges) {
    if (pos[a] > pos[b]) std::swap(a, b);
    const Subset s = td.side(a, b);
    out.push_back({{"a", pos[a]}, {"b", pos[b]}, {"separation", ids(s)}, {"order", kappa(s)}});
  }
  return out;
}

}  // namespace

std::string decomposition_json(const TangleTreeDecomposition& ttd, const JsonContext& jc) {
  const auto& td = ttd.tree;
  const auto& kappa = ttd.ds->context()->kappa();
  const auto pos = stable_order(td);
  json doc = header("canonical", td.n, ttd.order, jc);
  std::vector<json> nodes(td.size());
  for (int v = 0; v < td.size(); ++v) {
    json node = {{"id", pos[v]}, {"kind", ttd.is_hub(v) ? "hub" : "tangle"}, {"bag", ids(td.bags[v])}};
    if (!ttd.is_hub(v)) node["tangleOrder"] = ttd.ds->order_of(ttd.tangle_at(v));
    nodes[pos[v]] = std::move(node);
  }
  doc["nodes"] = nodes;
  doc["edges"] = tree_edges(kappa, td, pos);
  return render(doc);
}

std::string refined_json(const ConnectivityOracle& kappa, const TreeDecomposition& td, int order,
                         const JsonContext& jc) {
  const auto pos = stable_order(td);
  json doc = header("refined", td.n, order, jc);
  std::vector<json> nodes(td.size());
  for (int v = 0; v < td.size(); ++v) nodes[pos[v]] = {{"id", pos[v]}, {"kind", "node"}, {"bag", ids(td.bags[v])}};
  doc["nodes"] = nodes;
  doc["edges"] = tree_edges(kappa, td, pos);
  return render(doc);
}

std::string directed_json(const DirectedTreeDecomposition& dtd, const JsonContext& jc) {
  const auto& kappa = dtd.ds->context()->kappa();
  const auto bags = dtd.bags();
  const int m = dtd.size();
  std::vector<int> depth(m, 0);
  for (int v = 0; v < m; ++v)
    for (int a = dtd.parent[v]; a >= 0; a = dtd.parent[a]) ++depth[v];
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tuple(depth[a], dtd.cone[a].elements(), bags[a].elements()) <
           std::tuple(depth[b], dtd.cone[b].elements(), bags[b].elements());
  });
  std::vector<int> pos(m);
  for (int i = 0; i < m; ++i) pos[order[i]] = i;

  json doc = header("directed", dtd.n, dtd.order, jc);
  doc["root"] = pos[dtd.root];
  doc["rootTangle"] = dtd.tangle[dtd.root];
  json nodes = json::array();
  for (int v : order)
    nodes.push_back({{"id", pos[v]},
                     {"kind", "tangle"},
                     {"bag", ids(bags[v])},
                     {"tangleOrder", dtd.ds->order_of(dtd.tangle[v])},
                     {"tangleIndex", dtd.tangle[v]},
                     {"parent", dtd.parent[v] < 0 ? -1 : pos[dtd.parent[v]]},
                     {"cone", ids(dtd.cone[v])}});
  doc["nodes"] = nodes;
  json edges = json::array();
  for (int v : order)
    if (dtd.parent[v] >= 0)
      edges.push_back({{"a", pos[dtd.parent[v]]},
                       {"b", pos[v]},
                       {"separation", ids(dtd.cone[v])},
                       {"order", kappa(dtd.cone[v])}});
  doc["edges"] = edges;
  return render(doc);
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string dot_set(Subset x) {
  std::string s = "{";
  bool first = true;
  for (int e : x.elements()) {
    s += (first ? "" : ",") + std::to_string(e);
    first = false;
  }
  return s + "}";
}

}  // namespace

std::string decomposition_dot(const TangleTreeDecomposition& ttd) {
  const auto& td = ttd.tree;
  const auto& kappa = ttd.ds->context()->kappa();
  const auto pos = stable_order(td);
  std::vector<int> order(td.size());
  for (int v = 0; v < td.size(); ++v) order[pos[v]] = v;
  std::ostringstream out;
  out << "graph decomposition {\n  node [shape=box];\n";
  for (int v : order) {
    out << "  n" << pos[v] << " [label=\"" << (ttd.is_hub(v) ? "hub" : "tangle order " +
                                                   std::to_string(ttd.ds->order_of(ttd.tangle_at(v))))
        << "\\n" << dot_set(td.bags[v]) << "\"" << (ttd.is_hub(v) ? ", style=dashed" : "") << "];\n";
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : td.edges) edges.push_back(pos[a] < pos[b] ? std::pair(a, b) : std::pair(b, a));
  std::sort(edges.begin(), edges.end(), [&](auto x, auto y) {
    return std::pair(pos[x.first], pos[x.second]) < std::pair(pos[y.first], pos[y.second]);
  });
  for (auto [a, b] : edges) {
    const Subset s = td.side(a, b);
    out << "  n" << pos[a] << " -- n" << pos[b] << " [label=\"" << dot_set(s) << " : " << kappa(s) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string directed_dot(const DirectedTreeDecomposition& dtd) {
  const auto bags = dtd.bags();
  std::ostringstream out;
  out << "digraph directed {\n  node [shape=box];\n";
  for (int v = 0; v < dtd.size(); ++v)
    out << "  n" << v << " [label=\"tangle " << dtd.tangle[v] << "\\nbag " << dot_set(bags[v]) << "\\ncone "
        << dot_set(dtd.cone[v]) << "\"" << (v == dtd.root ? ", penwidth=2" : "") << "];\n";
  for (int v = 0; v < dtd.size(); ++v)
    if (dtd.parent[v] >= 0) out << "  n" << dtd.parent[v] << " -> n" << v << ";\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Verification of documents

namespace {

Subset read_set(const json& j, int n) {
  Subset s;
  for (const auto& e : j) {
    const int x = e.get<int>();
    if (x < 0 || x >= n) throw DomainError("element " + std::to_string(x) + " outside the ground set");
    s = s.with(x);
  }
  return s;
}

TreeDecomposition read_tree(const json& doc, int n, Report& rep) {
  TreeDecomposition td;
  td.n = n;
  const auto& nodes = doc.at("nodes");
  td.bags.resize(nodes.size());
  for (const auto& node : nodes) {
    const int id = node.at("id").get<int>();
    if (id < 0 || id >= static_cast<int>(nodes.size())) throw DomainError("node id out of range");
    td.bags[id] = read_set(node.at("bag"), n);
  }
  for (const auto& e : doc.at("edges")) {
    const int a = e.at("a").get<int>(), b = e.at("b").get<int>();
    if (a < 0 || b < 0 || a >= td.size() || b >= td.size()) throw DomainError("edge endpoint out of range");
    td.edges.emplace_back(a, b);
  }
  std::string why;
  if (!td.valid(&why)) {
    rep.fail("not a tree decomposition: " + why);
    return td;
  }
  return td;
}

void check_edge_fields(const json& doc, const TreeDecomposition& td, const ConnectivityOracle& kappa, Report& rep) {
  for (const auto& e : doc.at("edges")) {
    const int a = e.at("a").get<int>(), b = e.at("b").get<int>();
    const Subset s = read_set(e.at("separation"), td.n);
    if (s != td.side(a, b))
      rep.fail("edge " + std::to_string(a) + "-" + std::to_string(b) + ": separation does not match the bags");
    if (e.at("order").get<int>() != kappa(s))
      rep.fail("edge " + std::to_string(a) + "-" + std::to_string(b) + ": wrong order");
  }
}

}  // namespace

Report verify_json(const std::string& text, const OraclePtr& kappa) {
  Report rep;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("<decomposition>", 0, e.what());
  }
  try {
    if (doc.value("format", "") != "tangle-decomposition") throw DomainError("not a tangle-decomposition document");
    if (doc.at("version").get<int>() != kFormatVersion) throw DomainError("unsupported version");
    const int n = doc.at("n").get<int>();
    const int order = doc.at("order").get<int>();
    const std::string kind = doc.at("kind").get<std::string>();
    if (n != kappa->n()) {
      rep.fail("document has " + std::to_string(n) + " elements, instance has " + std::to_string(kappa->n()));
      return rep;
    }
    if (order < 0) throw DomainError("negative order");
    auto ds = TangleDataStructure::build(make_context(kappa), order);

    if (kind == "canonical" || kind == "refined") {
      TreeDecomposition td = read_tree(doc, n, rep);
      if (!rep.ok()) return rep;
      check_edge_fields(doc, td, *kappa, rep);
      if (kind == "refined") {
        if (td.size() > 1 && td.adhesion(*kappa) >= order) rep.fail("adhesion is not below the order");
        const auto counts = local_maximal_counts(kappa, td, order);
        for (int v = 0; v < td.size(); ++v)
          if (counts[v] != 1)
            rep.fail("node " + std::to_string(v) + " has " + std::to_string(counts[v]) + " maximal local tangles");
        return rep;
      }
      TangleTreeDecomposition ttd;
      ttd.tree = td;
      ttd.order = order;
      ttd.ds = ds;
      ttd.tangles = maximal_tangles(*ds, order);
      std::vector<TangleView> views;
      for (int i : ttd.tangles) views.push_back(ds->view(i));
      Assignment as = assign_tangle_nodes(*kappa, td, views);
      for (auto& p : as.problems) rep.fail(p);
      if (!rep.ok()) return rep;
      ttd.node_of = as.node_of;
      for (auto& v : verify_tangle_decomposition(ttd).violations) rep.fail(v);
      for (const auto& node : doc.at("nodes")) {
        const int id = node.at("id").get<int>();
        const bool hub = node.at("kind").get<std::string>() == "hub";
        if (hub != ttd.is_hub(id)) rep.fail("node " + std::to_string(id) + ": kind does not match the tangles");
        else if (!hub && node.value("tangleOrder", -1) != ds->order_of(ttd.tangle_at(id)))
          rep.fail("node " + std::to_string(id) + ": wrong tangle order");
      }
      return rep;
    }

    if (kind == "directed") {
      DirectedTreeDecomposition dtd;
      dtd.n = n;
      dtd.order = order;
      dtd.ds = ds;
      dtd.root = doc.at("root").get<int>();
      const auto& nodes = doc.at("nodes");
      const int m = static_cast<int>(nodes.size());
      dtd.parent.assign(m, -1);
      dtd.cone.assign(m, Subset());
      dtd.tangle.assign(m, 0);
      std::vector<Subset> bags(m);
      for (const auto& node : nodes) {
        const int id = node.at("id").get<int>();
        if (id < 0 || id >= m) throw DomainError("node id out of range");
        dtd.parent[id] = node.at("parent").get<int>();
        dtd.cone[id] = read_set(node.at("cone"), n);
        dtd.tangle[id] = node.at("tangleIndex").get<int>();
        bags[id] = read_set(node.at("bag"), n);
        if (dtd.tangle[id] < 1 || dtd.tangle[id] > ds->size()) throw DomainError("tangle index out of range");
      }
      for (auto& v : verify_directed(dtd).violations) rep.fail(v);
      if (!rep.ok()) return rep;
      if (bags != dtd.bags()) rep.fail("bags do not match the cones");
      for (const auto& e : doc.at("edges")) {
        const int a = e.at("a").get<int>(), b = e.at("b").get<int>();
        if (b < 0 || b >= m || dtd.parent[b] != a) rep.fail("edge list does not match the parent pointers");
        else if (read_set(e.at("separation"), n) != dtd.cone[b] || e.at("order").get<int>() != (*kappa)(dtd.cone[b]))
          rep.fail("edge " + std::to_string(a) + "-" + std::to_string(b) + ": separation is not the child cone");
      }
      return rep;
    }
    throw DomainError("unknown document kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("<decomposition>", 0, std::string("malformed document: ") + e.what());
  }
}

}  // namespace tangles::io
