// Command-line front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tangles/errors.hpp"
#include "tangles/io.hpp"
#include "tangles/oracles.hpp"

namespace {

using namespace tangles;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitParse = 3;
constexpr int kExitGuard = 4;

struct Globals {
  std::string fn;
  std::uint64_t seed = 1;
  bool stats = false;
  int max_exhaustive = -1;  // -1: take the environment or the built-in default
};

// Element bound for exhaustive procedures: flag, then TANGLES_MAX_EXHAUSTIVE,
// then the procedure's own default.
int exhaustive_bound(const Globals& g, int fallback) {
  if (g.max_exhaustive >= 0) return g.max_exhaustive;
  if (const char* env = std::getenv("TANGLES_MAX_EXHAUSTIVE")) return std::atoi(env);
  return fallback;
}

struct Loaded {
  io::Instance instance;
  io::FnKind fn;
  OraclePtr kappa;
  io::JsonContext jc;
};

Loaded load(const Globals& g, const std::string& path) {
  Loaded l;
  l.instance = io::read_instance(path);
  l.fn = g.fn.empty() ? io::default_fn(l.instance) : io::parse_fn(g.fn);
  l.kappa = io::make_oracle(l.instance, l.fn);
  l.jc = {io::fn_name(l.fn), io::element_labels(l.instance, l.fn)};
  return l;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

std::string set_str(Subset x) { return to_string(x); }

int cmd_tangles(const Globals& g, const std::string& path, int order) {
  auto l = load(g, path);
  auto ds = TangleDataStructure::build(make_context(l.kappa), order);
  for (int k = 0; k <= order; ++k) {
    const int first = k == 0 ? 1 : ds->size(k - 1) + 1;
    const int last = ds->size(k);
    std::cout << "order " << k << ": " << last - first + 1 << " tangle" << (last - first == 0 ? "" : "s") << "\n";
    for (int i = first; i <= last; ++i) {
      std::cout << "  #" << i << " truncations";
      for (int j = 0; j < k; ++j) std::cout << " " << ds->truncation(i, j);
      std::cout << " signature";
      const Tangle t = ds->tangle(i);
      for (Subset s : t.signature()) std::cout << " " << set_str(s);
      std::cout << "\n";
    }
  }
  if (g.stats) std::cerr << "oracle calls: " << l.kappa->calls() << "\n";
  return kExitOk;
}

int cmd_branchwidth(const Globals& g, const std::string& path, bool brute) {
  auto l = load(g, path);
  const int mto = max_tangle_order(*make_context(l.kappa));
  std::cout << mto << "\n";
  int rc = kExitOk;
  if (brute) {
    const int bw = oracles::brute_force_branch_width(*l.kappa, exhaustive_bound(g, 7));
    std::cout << "brute-force branch width " << bw << (bw == mto ? " (agrees)" : " (MISMATCH)") << "\n";
    if (bw != mto) rc = kExitVerify;
  }
  if (g.stats) std::cerr << "oracle calls: " << l.kappa->calls() << "\n";
  return rc;
}

int cmd_decompose(const Globals& g, const std::string& path, int order, bool refined, const std::string& dot) {
  auto l = load(g, path);
  if (refined) {
    RefineStats st;
    auto td = refine_single_tangle(l.kappa, order, &st);
    std::cout << io::refined_json(*l.kappa, td, order, l.jc);
    if (!dot.empty()) {
      // Refined trees carry no tangle assignment; export them with hub
      // styling switched off by labelling every node as a plain bag.
      std::ostringstream out;
      out << "graph refined {\n  node [shape=box];\n";
      for (int v = 0; v < td.size(); ++v) out << "  n" << v << " [label=\"" << set_str(td.bags[v]) << "\"];\n";
      for (auto [a, b] : td.edges) out << "  n" << a << " -- n" << b << ";\n";
      out << "}\n";
      write_file(dot, out.str());
    }
    if (g.stats) std::cerr << "oracle calls: " << l.kappa->calls() << "\nrecursions: " << st.recursions << "\n";
    return kExitOk;
  }
  auto ttd = canonical_decomposition(l.kappa, order);
  std::cout << io::decomposition_json(ttd, l.jc);
  if (!dot.empty()) write_file(dot, io::decomposition_dot(ttd));
  if (g.stats) std::cerr << "oracle calls: " << l.kappa->calls() << "\n";
  return kExitOk;
}

int cmd_directed(const Globals& g, const std::string& path, int order, int root, const std::string& dot) {
  auto l = load(g, path);
  auto ttd = canonical_decomposition(l.kappa, order);
  DirectedStats st;
  auto dtd = directed_decomposition(ttd, root, &st);
  std::cout << io::directed_json(dtd, l.jc);
  if (!dot.empty()) write_file(dot, io::directed_dot(dtd));
  if (g.stats)
    std::cerr << "oracle calls: " << l.kappa->calls() << "\nrestructuring rounds: " << st.rounds
              << "\nmoved nodes: " << st.moved << "\n";
  return kExitOk;
}

int cmd_verify(const Globals& g, const std::string& doc_path, const std::string& path) {
  auto l = load(g, path);
  std::ifstream in(doc_path);
  if (!in) throw ParseError(doc_path, 0, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  auto rep = io::verify_json(ss.str(), l.kappa);
  if (g.stats) std::cerr << "oracle calls: " << l.kappa->calls() << "\n";
  if (rep.ok()) {
    std::cout << "ok\n";
    return kExitOk;
  }
  for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
  return kExitVerify;
}

int cmd_selfcheck(const Globals& g, const std::string& path, int trials) {
  auto l = load(g, path);
  bool ok = true;
  auto line = [&](const std::string& what, bool pass, const std::string& detail = {}) {
    std::cout << (pass ? "PASS " : "FAIL ") << what << (detail.empty() ? "" : ": " + detail) << "\n";
    ok = ok && pass;
  };

  const auto axioms = verify_axioms(*l.kappa);
  line(std::string("axioms (") + (axioms.exhaustive ? "exhaustive" : "sampled") + ")", axioms.ok, axioms.violation);

  auto ctx = make_context(l.kappa);
  const int mto = max_tangle_order(*ctx);
  const int top = std::min(mto, 3);
  auto ds = TangleDataStructure::build(ctx, top);
  const int n = l.kappa->n();
  if (n <= exhaustive_bound(g, 10)) {
    for (int k = 0; k <= top; ++k) {
      auto brute = oracles::brute_force_tangles(*l.kappa, k);
      const int first = k == 0 ? 1 : ds->size(k - 1) + 1;
      bool same = static_cast<int>(brute.size()) == ds->size(k) - first + 1;
      for (int i = first; same && i <= ds->size(k); ++i) {
        auto m = oracles::materialize(*l.kappa, ds->view(i));
        same = std::find_if(brute.begin(), brute.end(), [&](const ExplicitTangle& t) {
                 return t.members == m.members;
               }) != brute.end();
      }
      line("tangles of order " + std::to_string(k) + " match brute force", same,
           std::to_string(brute.size()) + " found");
    }
  } else {
    std::cout << "SKIP brute-force tangles: |U| = " << n << " exceeds the exhaustive bound\n";
  }
  if (n <= exhaustive_bound(g, 7)) {
    const int bw = oracles::brute_force_branch_width(*l.kappa, exhaustive_bound(g, 7));
    line("branch width equals max tangle order", bw == mto, std::to_string(bw) + " vs " + std::to_string(mto));
  } else {
    std::cout << "SKIP brute-force branch width: |U| = " << n << " exceeds the exhaustive bound\n";
  }
  for (int lv = 1; lv <= top; ++lv) {
    auto ttd = canonical_decomposition(ds, lv);
    auto rep = verify_tangle_decomposition(ttd);
    line("canonical decomposition of order " + std::to_string(lv), rep.ok(),
         rep.ok() ? "" : rep.violations.front());
    for (int r : ttd.tangles) {
      auto drep = verify_directed(directed_decomposition(ttd, r));
      if (!drep.ok()) line("directed decomposition rooted at " + std::to_string(r), false, drep.violations.front());
    }
  }
  auto cr = oracles::canonicity_harness(l.kappa, top, trials, g.seed);
  line("canonicity over " + std::to_string(cr.trials) + " permutations (seed " + std::to_string(g.seed) + ")",
       cr.ok(), cr.ok() ? std::to_string(cr.ds_index_changes) + " index changes in the data structure (allowed)"
                        : cr.messages.front());
  if (g.stats) std::cerr << "oracle calls: " << l.kappa->calls() << "\n";
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tangles of connectivity functions: census, branch width and canonical decompositions"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--fn", g.fn, "edge-boundary | vertex-cut | cut-rank | matroid");
  app.add_option("--seed", g.seed, "seed for randomized checks");
  app.add_flag("--stats", g.stats, "print oracle call counts to stderr");
  app.add_option("--max-exhaustive", g.max_exhaustive, "element bound for brute-force procedures");

  std::string path, doc_path, dot;
  int order = 0, root = 0, trials = 10;
  bool brute = false, refined = false;

  auto* tangles = app.add_subcommand("tangles", "tangle census per order");
  tangles->add_option("--order", order, "largest order")->required();
  tangles->add_option("instance", path)->required();

  auto* bw = app.add_subcommand("branchwidth", "maximum tangle order (= branch width)");
  bw->add_flag("--brute", brute, "cross-check by enumerating branch decompositions");
  bw->add_option("instance", path)->required();

  auto* dec = app.add_subcommand("decompose", "canonical tangle tree decomposition as JSON");
  dec->add_option("--order", order)->required();
  dec->add_flag("--refined", refined, "one maximal local tangle per node");
  dec->add_option("--dot", dot, "also write Graphviz output to this file");
  dec->add_option("instance", path)->required();

  auto* dir = app.add_subcommand("directed", "directed tangle tree decomposition as JSON");
  dir->add_option("--order", order)->required();
  dir->add_option("--root-index", root, "tangle index of the root (see `tangles`)")->required();
  dir->add_option("--dot", dot, "also write Graphviz output to this file");
  dir->add_option("instance", path)->required();

  auto* ver = app.add_subcommand("verify", "check a decomposition document against an instance");
  ver->add_option("decomposition", doc_path)->required();
  ver->add_option("instance", path)->required();

  auto* self = app.add_subcommand("selfcheck", "axioms, oracle agreement and canonicity trials");
  self->add_option("--trials", trials, "permutation trials");
  self->add_option("instance", path)->required();

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*tangles) return cmd_tangles(g, path, order);
    if (*bw) return cmd_branchwidth(g, path, brute);
    if (*dec) return cmd_decompose(g, path, order, refined, dot);
    if (*dir) return cmd_directed(g, path, order, root, dot);
    if (*ver) return cmd_verify(g, doc_path, path);
    if (*self) return cmd_selfcheck(g, path, trials);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SizeGuardError& e) {
    std::cerr << "refused (size guard): " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
