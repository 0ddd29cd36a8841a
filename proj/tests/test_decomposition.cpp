#include <doctest.h>

#include <random>

#include "tangles/errors.hpp"
#include "tangles/fixtures.hpp"
#include "tangles/oracles.hpp"

using namespace tangles;
using fixtures::triangle;

namespace {

int hub_of(const TangleTreeDecomposition& ttd) {
  for (int v = 0; v < ttd.tree.size(); ++v)
    if (ttd.is_hub(v)) return v;
  return -1;
}

int node_with_bag(const TreeDecomposition& td, Subset bag) {
  for (int v = 0; v < td.size(); ++v)
    if (td.bags[v] == bag) return v;
  return -1;
}

// Star with centre 0 and leaves 1..3 carrying the given sets.
PartialDecomposition star(int n, Subset a, Subset b, Subset c) {
  PartialDecomposition pd;
  pd.n = n;
  pd.nodes = 4;
  pd.edges = {{0, 1, a}, {0, 2, b}, {0, 3, c}};
  return pd;
}

std::vector<oracles::RandomInstance> random_instances(int count) {
  std::vector<oracles::RandomInstance> out;
  for (int s = 0; s < count; ++s)
    out.push_back(s % 2 ? oracles::random_instance(300 + s) : oracles::random_block_instance(300 + s, 12));
  return out;
}

}  // namespace

TEST_CASE("check_nested") {
  const int n = 9;
  CHECK(check_nested({triangle(0), triangle(1)}, n));
  CHECK(check_nested({}, n));
  CHECK_FALSE(check_nested({Subset::of({0, 1}), Subset::of({1, 2})}, 4));
  CHECK(nested(Subset::of({0}), Subset::of({0, 1}), 4));
}

TEST_CASE("nested_to_tree examples") {
  auto empty = nested_to_tree(9, {});
  CHECK(empty.size() == 1);
  CHECK(empty.bags[0] == Subset::full(9));

  std::vector<Subset> tri;
  for (int i = 0; i < 3; ++i) tri.push_back(triangle(i));
  auto td = nested_to_tree(9, complement_closure(tri, 9));
  REQUIRE(td.size() == 4);
  const int hub = node_with_bag(td, Subset());
  REQUIRE(hub >= 0);
  CHECK(td.adjacency()[hub].size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(node_with_bag(td, triangle(i)) >= 0);

  const Subset x = Subset::of({0, 2});
  auto pair = nested_to_tree(4, {x, Subset::full(4) - x});
  CHECK(pair.size() == 2);
  CHECK(pair.edges.size() == 1);
  CHECK(node_with_bag(pair, x) >= 0);
  CHECK(node_with_bag(pair, Subset::full(4) - x) >= 0);

  CHECK_THROWS_AS(nested_to_tree(4, {Subset::of({0, 1}), Subset::of({2, 3}), Subset::of({1, 2}), Subset::of({0, 3})}),
                  DomainError);
  CHECK_THROWS_AS(nested_to_tree(4, {Subset::of({0})}), DomainError);
}

TEST_CASE("nested_to_tree round trip on random nested families") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const Subset u = Subset::full(n);
    // Greedily collect random nested sets.
    std::vector<Subset> family;
    for (int tries = 0; tries < 12; ++tries) {
      const Subset x = Subset(rng()) & u;
      bool ok = true;
      for (Subset y : family) ok = ok && nested(x, y, n);
      if (ok) family.push_back(x);
    }
    auto closed = complement_closure(family, n);
    auto td = nested_to_tree(n, closed);
    std::string why;
    CHECK_MESSAGE(td.valid(&why), why);
    CHECK(td.separations() == closed);
    // Relabelling the input order changes nothing.
    std::shuffle(closed.begin(), closed.end(), rng);
    auto again = nested_to_tree(n, closed);
    CHECK(again.bags == td.bags);
    CHECK(again.edges == td.edges);
  }
}

TEST_CASE("width and exactify examples") {
  auto p3 = fixtures::p3();
  auto bd = branch_decomposition(2, {{0, 1}}, {0, 1});
  CHECK(width(*p3, bd) == 1);
  CHECK(bd.exact());

  auto tri = fixtures::triforce();
  const Subset u = tri->universe();
  auto exact = star(9, triangle(0), triangle(1), triangle(2));
  REQUIRE(exact.valid());
  REQUIRE(exact.exact());
  auto same = exactify(*tri, exact);
  for (std::size_t e = 0; e < exact.edges.size(); ++e) CHECK(same.edges[e].toward_b == exact.edges[e].toward_b);

  auto grown = star(9, triangle(0) | Subset::of({3}), triangle(1), triangle(2));
  REQUIRE(grown.valid());
  REQUIRE_FALSE(grown.exact());
  auto fixed = exactify(*tri, grown);
  CHECK(fixed.exact());
  CHECK(width(*tri, fixed) <= width(*tri, grown));
  for (int leaf : grown.leaves()) CHECK(fixed.leaf_set(leaf).subset_of(grown.leaf_set(leaf)));

  // Every internal set over-covers.
  auto over = star(9, triangle(0) | triangle(1), triangle(1) | triangle(2), triangle(2) | triangle(0));
  auto cut = exactify(*tri, over);
  CHECK(cut.exact());
  CHECK(width(*tri, cut) <= width(*tri, over));
  (void)u;

  auto k4 = fixtures::k4();
  CHECK(oracles::brute_force_branch_width(*k4) == 3);
}

TEST_CASE("exactify properties on random partial decompositions") {
  std::mt19937_64 rng(12);
  for (const auto& inst : random_instances(40)) {
    const auto& k = *inst.kappa;
    if (k.n() < 2) continue;
    for (int t = 0; t < 4; ++t) {
      auto pd = oracles::random_partial_decomposition(k.n(), 3 + static_cast<int>(rng() % 5), rng);
      REQUIRE(pd.valid());
      auto ex = exactify(k, pd);
      CHECK(ex.valid());
      CHECK(ex.exact());
      CHECK(ex.nodes == pd.nodes);
      for (std::size_t e = 0; e < pd.edges.size(); ++e) CHECK(k(ex.edges[e].toward_b) <= k(pd.edges[e].toward_b));
      for (int leaf : pd.leaves()) CHECK(ex.leaf_set(leaf).subset_of(pd.leaf_set(leaf)));
    }
  }
  CHECK_THROWS_AS(oracles::random_partial_decomposition(4, 2, rng), DomainError);
}

TEST_CASE("assign_tangle_nodes") {
  auto ctx = make_context(fixtures::triforce());
  auto ds = TangleDataStructure::build(ctx, 2);
  std::vector<Subset> tri;
  for (int i = 0; i < 3; ++i) tri.push_back(triangle(i));
  auto td = nested_to_tree(9, complement_closure(tri, 9));
  auto maximal = maximal_tangles(*ds, 2);
  REQUIRE(maximal.size() == 3);
  std::vector<TangleView> views;
  for (int i : maximal) views.push_back(ds->view(i));
  auto a = assign_tangle_nodes(ctx->kappa(), td, views);
  REQUIRE(a.ok());
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    const int v = a.node_of[i];
    CHECK(ds->contains(maximal[i], td.bags[v]));
    CHECK(td.bags[v].size() == 3);
  }

  auto single = nested_to_tree(6, {});
  auto k4 = TangleDataStructure::build(make_context(fixtures::k4()), 3);
  auto top = maximal_tangles(*k4, 3);
  REQUIRE(top.size() == 1);
  auto b = assign_tangle_nodes(*fixtures::k4(), single, {k4->view(top[0])});
  CHECK(b.ok());
  CHECK(b.node_of == std::vector<int>{0});
}

TEST_CASE("coherent nested family") {
  auto ds = TangleDataStructure::build(make_context(fixtures::triforce()), 2);
  auto all = maximal_tangles(*ds, 2);
  auto family = coherent_nested_family(*ds, all);
  std::vector<Subset> expect;
  for (int i = 0; i < 3; ++i) expect.push_back(triangle(i));
  CHECK(family == complement_closure(expect, 9));
  CHECK(coherent_nested_family(*ds, {all[0]}).empty());
  // Both leftmost separations are minimal and neither is the complement of
  // the other, so a pair contributes two sets and their complements.
  auto two = coherent_nested_family(*ds, {all[0], all[1]});
  CHECK(two == complement_closure({*ds->separation(all[0], all[1]), *ds->separation(all[1], all[0])}, 9));
  CHECK(two.size() == 4);
  CHECK_THROWS_AS(coherent_nested_family(*ds, {all[0], 2}), DomainError);
}

TEST_CASE("contractions and projections") {
  auto kappa = fixtures::triforce();
  auto ttd = canonical_decomposition(kappa, 2);
  const int hub = hub_of(ttd);
  REQUIRE(hub >= 0);

  auto c = contract_at(kappa, ttd.tree, hub);
  CHECK(c.bag.empty());
  REQUIRE(c.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK((*c.kappa)(Subset::singleton(i)) == 1);
    CHECK(c.expansion_of[i] == triangle(i));
  }
  CHECK((*c.kappa)(Subset::of({0, 1})) == 1);
  CHECK(c.expand(Subset::of({0, 2})) == (triangle(0) | triangle(2)));

  const int tri1 = ttd.ds->find(2, [](Subset x) { return triangle(0).subset_of(x); });
  // At the hub the far side of the first triangle is the triangle itself,
  // which the first tangle contains.
  CHECK_FALSE(project_tangle(*kappa, ttd.ds->view(tri1), c).has_value());

  const int leaf = node_with_bag(ttd.tree, triangle(0));
  auto cl = contract_at(kappa, ttd.tree, leaf);
  CHECK(cl.size() == 4);
  CHECK(cl.expansion_of[3] == kappa->complement(triangle(0)));
  for (std::uint64_t x = 0; x < 8; ++x) CHECK((*cl.kappa)(Subset(x)) == (*kappa)(Subset(x)));
  auto p = project_tangle(*kappa, ttd.ds->view(tri1), cl);
  REQUIRE(p.has_value());
  CHECK(p->order == 2);
  CHECK(p->contains(Subset::of({0, 1, 2})));
  CHECK_FALSE(p->contains(Subset::of({3})));
  auto local = TangleDataStructure::build(make_context(cl.kappa), 2);
  CHECK(local->find(2, p->contains) > 0);

  const int tri2 = ttd.ds->find(2, [](Subset x) { return triangle(1).subset_of(x); });
  CHECK_FALSE(project_tangle(*kappa, ttd.ds->view(tri2), cl).has_value());
  auto pe = project_tangle(*kappa, ttd.ds->view(1), c);
  REQUIRE(pe.has_value());
  CHECK(pe->order == 0);

  auto whole = contract_at(kappa, nested_to_tree(9, {}), 0);
  CHECK(whole.identity());
  CHECK(whole.size() == 9);
}

TEST_CASE("canonical decomposition examples") {
  auto kappa = fixtures::triforce();
  auto ttd = canonical_decomposition(kappa, 2);
  REQUIRE(ttd.tree.size() == 4);
  const int hub = hub_of(ttd);
  CHECK(ttd.tree.bags[hub].empty());
  CHECK(ttd.tree.adjacency()[hub].size() == 3);
  REQUIRE(ttd.tangles.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const Subset bag = ttd.tree.bags[ttd.node_of[i]];
    CHECK(bag.size() == 3);
    CHECK(ttd.ds->contains(ttd.tangles[i], bag));
  }
  CHECK(verify_tangle_decomposition(ttd).ok());
  CHECK(ttd.tree.adhesion(*kappa) < 2);

  auto zero = canonical_decomposition(kappa, 0);
  CHECK(zero.tree.size() == 1);
  CHECK(zero.tangles == std::vector<int>{1});
  CHECK(verify_tangle_decomposition(zero).ok());

  auto k4 = canonical_decomposition(fixtures::k4(), 3);
  CHECK(k4.tree.size() == 1);
  CHECK(k4.tangles.size() == 1);
  CHECK(k4.ds->order_of(k4.tangles[0]) == 3);
  CHECK(verify_tangle_decomposition(k4).ok());
}

TEST_CASE("verification catches a tangle moved to the hub") {
  auto ttd = canonical_decomposition(fixtures::triforce(), 2);
  ttd.node_of[0] = hub_of(ttd);
  auto rep = verify_tangle_decomposition(ttd);
  REQUIRE_FALSE(rep.ok());
  bool td3 = false;
  for (const auto& v : rep.violations) td3 = td3 || v.rfind("TD3", 0) == 0;
  CHECK(td3);
}

TEST_CASE("canonical decompositions of random instances") {
  for (const auto& inst : random_instances(60)) {
    const auto& kappa = inst.kappa;
    auto ctx = make_context(kappa);
    const int top = std::min(max_tangle_order(*ctx), 3);
    auto ds = TangleDataStructure::build(ctx, top);
    for (int l = 0; l <= top; ++l) {
      auto ttd = canonical_decomposition(ds, l);
      auto rep = verify_tangle_decomposition(ttd);
      CHECK_MESSAGE(rep.ok(), inst.description, " l=", l, ": ", rep.ok() ? "" : rep.violations[0]);
      if (kappa->n() >= 2) CHECK(static_cast<int>(ttd.tangles.size()) <= kappa->n() - 1);
      if (ttd.tree.size() > 1) CHECK(ttd.tree.adhesion(*kappa) < l);
      CHECK(nested_to_tree(kappa->n(), ttd.tree.separations()).bags.size() == ttd.tree.bags.size());
      for (int r : ttd.tangles) {
        auto d = directed_decomposition(ttd, r);
        auto drep = verify_directed(d);
        CHECK_MESSAGE(drep.ok(), inst.description, " root ", r, ": ", drep.ok() ? "" : drep.violations[0]);
        Subset all;
        for (Subset b : d.bags()) {
          CHECK_FALSE(all.intersects(b));
          all |= b;
        }
        CHECK(all == kappa->universe());
      }
    }
  }
}

TEST_CASE("refined decompositions") {
  auto tri = fixtures::triforce();
  RefineStats st;
  auto td = refine_single_tangle(tri, 2, &st);
  CHECK(td.size() == 4);
  for (int c : local_maximal_counts(tri, td, 2)) CHECK(c == 1);

  auto grid = fixtures::grid3();
  auto g = refine_single_tangle(grid, 2);
  CHECK(g.valid());
  for (int c : local_maximal_counts(grid, g, 2)) CHECK(c == 1);
  if (g.size() > 1) CHECK(g.adhesion(*grid) < 2);

  auto k4 = refine_single_tangle(fixtures::k4(), 3);
  CHECK(k4.size() == 1);

  for (const auto& inst : random_instances(30)) {
    const int top = std::min(max_tangle_order(*make_context(inst.kappa)), 3);
    for (int l = 1; l <= top; ++l) {
      auto r = refine_single_tangle(inst.kappa, l);
      CHECK(r.valid());
      for (int c : local_maximal_counts(inst.kappa, r, l)) CHECK(c == 1);
      if (r.size() > 1) CHECK(r.adhesion(*inst.kappa) < l);
    }
  }
}

TEST_CASE("directed decomposition examples") {
  auto ttd = canonical_decomposition(fixtures::triforce(), 2);
  for (std::size_t i = 0; i < 3; ++i) {
    auto d = directed_decomposition(ttd, ttd.tangles[i]);
    REQUIRE(d.size() == 3);
    CHECK(d.cone[d.root] == Subset::full(9));
    const Subset own = ttd.tree.bags[ttd.node_of[i]];
    CHECK(d.bags()[d.root] == own);
    Subset kids;
    const auto children = d.children();
    for (int c : children[d.root]) {
      CHECK(d.cone[c].size() == 3);
      CHECK(d.cone[c] != own);
      kids |= d.cone[c];
    }
    CHECK(kids == Subset::full(9) - own);
    CHECK(verify_directed(d).ok());
  }
  auto k4 = directed_decomposition(canonical_decomposition(fixtures::k4(), 3), maximal_tangles(
      *TangleDataStructure::build(make_context(fixtures::k4()), 3), 3)[0]);
  CHECK(k4.size() == 1);
  CHECK(k4.cone[0] == Subset::full(6));
  CHECK_THROWS_AS(directed_decomposition(ttd, 2), DomainError);
}

TEST_CASE("empty-hub pruning") {
  auto ttd = canonical_decomposition(fixtures::triforce(), 2);
  auto pruned = prune_empty_hubs(ttd.tree);
  CHECK(pruned.size() == 3);
  CHECK(pruned.valid());
}
