#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "tangles/errors.hpp"
#include "tangles/fixtures.hpp"
#include "tangles/io.hpp"

using namespace tangles;

namespace {

const std::string kData = TANGLES_TEST_DATA;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int parse_error_line(const std::string& text) {
  try {
    io::parse_instance(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(TANGLES_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

io::JsonContext context_for(const io::Instance& inst) {
  const auto fn = io::default_fn(inst);
  return {io::fn_name(fn), io::element_labels(inst, fn)};
}

}  // namespace

TEST_CASE("instance parsing") {
  auto tri = io::read_instance(kData + "/triforce.txt");
  CHECK(tri.kind == io::Instance::Kind::kGraph);
  CHECK(tri.graph.n == 7);
  CHECK(tri.graph.edges.size() == 9);
  auto k = io::make_oracle(tri, io::FnKind::kEdgeBoundary);
  CHECK(k->n() == 9);
  for (std::uint64_t x = 0; x < 512; ++x) CHECK((*k)(Subset(x)) == (*fixtures::triforce())(Subset(x)));
  CHECK(io::element_labels(tri, io::FnKind::kEdgeBoundary)[3] == "0-3");
  CHECK(io::make_oracle(tri, io::FnKind::kCutRank)->n() == 7);

  auto m = io::parse_instance("matrix 2 4\n1 0 1 1\n0110\n");
  CHECK(m.kind == io::Instance::Kind::kMatrix);
  CHECK(io::default_fn(m) == io::FnKind::kMatroid);
  auto mk = io::make_oracle(m, io::FnKind::kMatroid);
  CHECK(mk->n() == 4);
  CHECK_THROWS_AS(io::make_oracle(m, io::FnKind::kEdgeBoundary), DomainError);
  CHECK_THROWS_AS(io::make_oracle(tri, io::FnKind::kMatroid), DomainError);

  auto commented = io::parse_instance("# a path\n\ngraph 3 2\n0 1   # first\n\n1 2\n");
  CHECK(commented.graph.edges.size() == 2);

  CHECK(io::parse_fn("cut-rank") == io::FnKind::kCutRank);
  CHECK(io::fn_name(io::FnKind::kVertexCut) == "vertex-cut");
  CHECK_THROWS_AS(io::parse_fn("rank"), DomainError);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("") == 1);
  CHECK(parse_error_line("# nothing\n") == 1);
  CHECK(parse_error_line("tree 3 2\n") == 1);
  CHECK(parse_error_line("graph 3 2\n0 1\n1 x\n") == 3);
  CHECK(parse_error_line("graph 3 2\n0 1\n1 5\n") == 3);
  CHECK(parse_error_line("graph 3 2\n0 1\n1 1\n") == 3);
  CHECK(parse_error_line("graph 3 2\n0 1\n# gap\n1 0\n") == 4);
  CHECK(parse_error_line("graph 3 2\n0 1\n") == 3);
  CHECK(parse_error_line("graph 3 1\n0 1\n1 2\n") == 3);
  CHECK(parse_error_line("matrix 2 3\n1 0 1\n1 0\n") == 3);
  CHECK(parse_error_line("matrix 2 3\n102\n000\n") == 2);
  CHECK_THROWS_AS(io::read_instance(kData + "/empty.txt"), ParseError);
  CHECK_THROWS_AS(io::read_instance(kData + "/no_such_file.txt"), ParseError);

  std::string big = "graph 12 66\n";
  for (int a = 0; a < 12; ++a)
    for (int b = a + 1; b < 12; ++b) big += std::to_string(a) + " " + std::to_string(b) + "\n";
  auto inst = io::parse_instance(big);
  CHECK_THROWS_AS(io::make_oracle(inst, io::FnKind::kEdgeBoundary), SizeGuardError);
}

TEST_CASE("golden triforce document") {
  auto inst = io::read_instance(kData + "/triforce.txt");
  auto kappa = io::make_oracle(inst, io::FnKind::kEdgeBoundary);
  auto text = io::decomposition_json(canonical_decomposition(kappa, 2), context_for(inst));
  CHECK(text == slurp(kData + "/triforce_decomposition.json"));
  CHECK(io::verify_json(text, kappa).ok());
}

TEST_CASE("documents verify and mutations are caught") {
  for (const char* name : {"triforce.txt", "k4.txt", "grid3.txt", "p3.txt"}) {
    auto inst = io::read_instance(kData + "/" + name);
    auto kappa = io::make_oracle(inst, io::default_fn(inst));
    auto jc = context_for(inst);
    auto ctx = make_context(kappa);
    const int top = std::min(max_tangle_order(*ctx), 2);
    for (int l = 0; l <= top; ++l) {
      auto ttd = canonical_decomposition(kappa, l);
      auto doc = io::decomposition_json(ttd, jc);
      CHECK_MESSAGE(io::verify_json(doc, kappa).ok(), name, " l=", l);
      CHECK(io::decomposition_json(canonical_decomposition(kappa, l), jc) == doc);
      for (int r : ttd.tangles) {
        auto d = io::directed_json(directed_decomposition(ttd, r), jc);
        CHECK_MESSAGE(io::verify_json(d, kappa).ok(), name, " root ", r);
      }
      auto refined = io::refined_json(*kappa, refine_single_tangle(kappa, l), l, jc);
      CHECK(io::verify_json(refined, kappa).ok());
    }
  }

  auto inst = io::read_instance(kData + "/triforce.txt");
  auto kappa = io::make_oracle(inst, io::FnKind::kEdgeBoundary);
  const std::string doc = slurp(kData + "/triforce_decomposition.json");
  auto mutate = [&](const std::string& from, const std::string& to) {
    std::string d = doc;
    const auto at = d.find(from);
    REQUIRE(at != std::string::npos);
    d.replace(at, from.size(), to);
    return io::verify_json(d, kappa);
  };
  CHECK_FALSE(mutate("\"bag\":[0,1,2]", "\"bag\":[0,1]").ok());
  CHECK_FALSE(mutate("\"separation\":[0,1,2],\"order\":1", "\"separation\":[0,1,2],\"order\":2").ok());
  CHECK_FALSE(mutate("\"kind\":\"hub\"", "\"kind\":\"tangle\"").ok());
  CHECK_FALSE(mutate("\"order\": 2", "\"order\": 1").ok());
  CHECK_THROWS_AS(io::verify_json("{\"format\": 3", kappa), ParseError);
}

TEST_CASE("dot export") {
  auto ttd = canonical_decomposition(fixtures::triforce(), 2);
  auto dot = io::decomposition_dot(ttd);
  CHECK(dot.rfind("graph", 0) == 0);
  CHECK(dot.find("--") != std::string::npos);
  auto d = io::directed_dot(directed_decomposition(ttd, ttd.tangles[0]));
  CHECK(d.rfind("digraph", 0) == 0);
  CHECK(d.find("->") != std::string::npos);
}

TEST_CASE("command line") {
  const std::string tri = kData + "/triforce.txt";
  auto dec = cli("decompose --order 2 --fn edge-boundary " + tri);
  CHECK(dec.code == 0);
  CHECK(dec.out == slurp(kData + "/triforce_decomposition.json"));

  auto bw = cli("branchwidth --fn edge-boundary " + kData + "/p3.txt");
  CHECK(bw.code == 0);
  CHECK(bw.out == "1\n");
  CHECK(cli("branchwidth --brute " + kData + "/k4.txt").out.find("3\nbrute-force branch width 3 (agrees)") == 0);
  CHECK(cli("branchwidth --fn cut-rank " + kData + "/c5.txt").out == "2\n");

  auto census = cli("tangles --order 0 " + kData + "/grid3.txt");
  CHECK(census.code == 0);
  CHECK(census.out.find("order 0: 1 tangle\n") == 0);
  CHECK(cli("tangles --order 2 " + tri).out.find("order 2: 3 tangles") != std::string::npos);

  CHECK(cli("verify " + kData + "/triforce_decomposition.json " + tri).code == 0);
  CHECK(cli("verify " + kData + "/triforce_decomposition.json " + kData + "/k4.txt").code == 2);
  CHECK(cli("decompose --order 2 " + kData + "/bad_edge.txt").code == 3);
  CHECK(cli("decompose --order 2 " + kData + "/empty.txt").code == 3);
  CHECK(cli("branchwidth --brute --max-exhaustive 4 " + tri).code == 4);
  CHECK(cli("decompose --order 2 --fn matroid " + tri).code == 1);
  CHECK(cli("frobnicate").code == 1);
  CHECK(cli("directed --order 2 --root-index 3 " + tri).code == 0);
  CHECK(cli("directed --order 2 --root-index 2 " + tri).code == 1);

  // Oracle call counts are reproducible.
  const std::string stats = std::string(TANGLES_CLI) + " --stats tangles --order 2 " + tri + " 2>&1 >/dev/null";
  auto once = [&] {
    FILE* p = popen(stats.c_str(), "r");
    char buf[256];
    std::string s;
    while (fgets(buf, sizeof buf, p)) s += buf;
    pclose(p);
    return s;
  };
  const std::string first = once();
  CHECK(first.find("oracle calls: ") == 0);
  CHECK(once() == first);
}
