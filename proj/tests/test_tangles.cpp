#include <doctest.h>

#include <random>

#include "tangles/errors.hpp"
#include "tangles/fixtures.hpp"
#include "tangles/oracles.hpp"

using namespace tangles;
using fixtures::triangle;

namespace {

// Order-2 tangle of the triforce pointing at triangle i, written out by hand:
// the order-1 sets are the unions of whole triangles.
ExplicitTangle triforce_tangle(int i) {
  ExplicitTangle t{2, {}};
  auto k = fixtures::triforce();
  for (std::uint64_t x = 0; x < 512; ++x)
    if ((*k)(Subset(x)) < 2 && triangle(i).subset_of(Subset(x))) t.members.push_back(Subset(x));
  return t;
}

std::vector<OraclePtr> small_instances(int count) {
  std::vector<OraclePtr> out{fixtures::triforce(), fixtures::p3(), fixtures::k4(), fixtures::c5rank()};
  for (int s = 0; s < count; ++s)
    out.push_back(s % 2 ? oracles::random_instance(2000 + s).kappa : oracles::random_block_instance(2000 + s, 10).kappa);
  return out;
}

bool contains_all(const ExplicitTangle& big, const ExplicitTangle& small) {
  for (Subset x : small.members)
    if (!big.contains(x)) return false;
  return true;
}

}  // namespace

TEST_CASE("check_axioms") {
  auto t = fixtures::triforce();
  CHECK(check_axioms(*t, triforce_tangle(0).members, 2).ok);
  CHECK(check_axioms(*t, {t->universe()}, 1).ok);
  auto bad = check_axioms(*t, {t->universe(), Subset()}, 1);
  CHECK_FALSE(bad.ok);
  CHECK(bad.violation.rfind("T2", 0) == 0);
  CHECK(check_axioms(*t, {t->universe()}, 2).violation.rfind("T1", 0) == 0);
  auto p3 = fixtures::p3();
  CHECK(check_axioms(*p3, {p3->universe(), Subset::of({0})}, 2).violation.rfind("T3", 0) == 0);
}

TEST_CASE("signature-backed tangles on the triforce") {
  auto ctx = make_context(fixtures::triforce());
  auto ds = TangleDataStructure::build(ctx, 2);
  const int i1 = ds->find(2, triforce_tangle(0).view().contains);
  const Tangle tri1 = ds->tangle(i1);
  CHECK(tri1.order() == 2);
  CHECK(tri1.contains(triangle(0)));
  CHECK_FALSE(tri1.contains(triangle(1)));
  CHECK(tri1.contains(ctx->complement(triangle(1))));
  CHECK_THROWS_AS(tri1.contains(Subset::of({0})), OutOfOrderError);
  CHECK(ds->tangle(2).contains(ctx->universe()));

  const Tangle t1 = tri1.truncate(1);
  CHECK(t1.order() == 1);
  CHECK(t1.contains(ctx->universe()));
  CHECK_FALSE(t1.contains(Subset()));
  CHECK(tri1.truncate(2).order() == 2);
  CHECK(tri1.truncate(5).order() == 2);
  CHECK(tri1.truncate(0).order() == 0);
}

TEST_CASE("minimal_member_in_box examples") {
  auto ctx = make_context(fixtures::triforce());
  const auto tri1 = triforce_tangle(0);
  CHECK(minimal_member_in_box(*ctx, tri1.view(), Subset(), ctx->universe()) == triangle(0));
  CHECK_FALSE(minimal_member_in_box(*ctx, tri1.view(), Subset(), triangle(1) | triangle(2)).has_value());
  const ExplicitTangle one{1, {ctx->universe()}};
  CHECK(minimal_member_in_box(*ctx, one.view(), Subset(), ctx->universe()) == ctx->universe());
}

TEST_CASE("minimal_member_in_box returns an inclusion-minimal member") {
  std::mt19937_64 rng(21);
  for (const auto& k : small_instances(30)) {
    auto ctx = make_context(k);
    const int top = std::min(max_tangle_order(*ctx), 3);
    for (int order = 1; order <= top; ++order) {
      auto all = oracles::brute_force_tangles(*k, order);
      // Union of a random nonempty selection of the order-k tangles.
      std::vector<ExplicitTangle> pick;
      for (auto& t : all)
        if (rng() % 2 || pick.empty()) pick.push_back(t);
      auto in_union = [&](Subset x) {
        for (auto& t : pick)
          if (t.contains(x)) return true;
        return false;
      };
      for (int trial = 0; trial < 8; ++trial) {
        Subset y2(rng() | rng());
        y2 &= k->universe();
        Subset y1 = Subset(rng() & rng()) & y2;
        auto got = minimal_member_in_box(*ctx, in_union, y1, y2, order - 1);
        bool any = false;
        for_each_submask(y2 - y1, [&](Subset s) { any = any || ((*k)(y1 | s) < order && in_union(y1 | s)); });
        REQUIRE(got.has_value() == any);
        if (!got) continue;
        CHECK(y1.subset_of(*got));
        CHECK(got->subset_of(y2));
        CHECK((*k)(*got) < order);
        CHECK(in_union(*got));
        for_each_submask(*got - y1, [&](Subset s) {
          const Subset z = y1 | s;
          if (z != *got) CHECK_FALSE(((*k)(z) < order && in_union(z)));
        });
      }
    }
  }
}

TEST_CASE("exists_tangle_avoiding examples") {
  auto ctx = make_context(fixtures::triforce());
  const ExplicitTangle one{1, {ctx->universe()}};
  const auto v = one.view();
  CHECK(exists_tangle_avoiding(*ctx, &v, {ctx->complement(triangle(0))}, 2));
  CHECK_FALSE(exists_tangle_avoiding(*ctx, &v,
                                     {ctx->complement(triangle(0)), ctx->complement(triangle(1)),
                                      ctx->complement(triangle(2))},
                                     2));
  CHECK(exists_tangle_avoiding(*ctx, nullptr, {}, 0));
  CHECK_THROWS_AS(exists_tangle_avoiding(*ctx, &v, {Subset::of({0})}, 2), DomainError);
}

TEST_CASE("exists_tangle_avoiding agrees with enumeration and with the literal variant") {
  std::mt19937_64 rng(8);
  for (const auto& k : small_instances(24)) {
    auto ctx = make_context(k);
    const int top = std::min(max_tangle_order(*ctx) + 1, 3);
    for (int target = 1; target <= top; ++target) {
      const auto above = oracles::brute_force_tangles(*k, target);
      const auto seeds = oracles::brute_force_tangles(*k, target - 1);
      std::vector<Subset> low;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << k->n()); ++x)
        if ((*k)(Subset(x)) <= target - 1) low.push_back(Subset(x));
      for (int trial = 0; trial < 6; ++trial) {
        std::vector<Subset> avoid;
        const int count = static_cast<int>(rng() % 3);
        for (int a = 0; a < count; ++a) avoid.push_back(low[rng() % low.size()]);
        for (const auto& seed : seeds) {
          bool expect = false;
          for (const auto& t : above) {
            bool ok = contains_all(t, seed);
            for (Subset a : avoid) ok = ok && !t.contains(a);
            expect = expect || ok;
          }
          const auto sv = seed.view();
          const bool got = exists_tangle_avoiding(*ctx, target > 1 ? &sv : nullptr, avoid, target);
          CHECK(got == expect);
          if (k->n() <= 7) CHECK(exists_tangle_avoiding_reference(*ctx, target > 1 ? &sv : nullptr, avoid, target) == expect);
          // Adding an avoid set never turns false into true.
          if (!got) {
            auto more = avoid;
            more.push_back(low[rng() % low.size()]);
            CHECK_FALSE(exists_tangle_avoiding(*ctx, target > 1 ? &sv : nullptr, more, target));
          }
        }
      }
    }
  }
}

TEST_CASE("has_tangle_of_order and max_tangle_order") {
  CHECK_FALSE(has_tangle_of_order(*make_context(fixtures::p3()), 2));
  CHECK(has_tangle_of_order(*make_context(fixtures::k4()), 3));
  CHECK(has_tangle_of_order(*make_context(fixtures::c5rank()), 0));
  CHECK(max_tangle_order(*make_context(fixtures::p3())) == 1);
  CHECK(max_tangle_order(*make_context(fixtures::k4())) == 3);
  CHECK(max_tangle_order(*make_context(fixtures::c5rank())) == 2);
  CHECK(max_tangle_order(*make_context(fixtures::triforce())) == 2);
}

TEST_CASE("tangles agree with brute-force enumeration") {
  for (const auto& k : small_instances(40)) {
    auto ctx = make_context(k);
    const int top = std::min(max_tangle_order(*ctx), 3);
    auto ds = TangleDataStructure::build(ctx, top);
    CHECK_FALSE(has_tangle_of_order(*ctx, top + 1 > max_tangle_order(*ctx) ? top + 1 : 99));
    for (int order = 0; order <= top; ++order) {
      auto brute = oracles::brute_force_tangles(*k, order);
      CHECK(static_cast<int>(brute.size()) <= std::max(1, k->n()));
      std::vector<std::vector<Subset>> ours;
      for (int i = order ? ds->size(order - 1) + 1 : 1; i <= ds->size(order); ++i) {
        auto m = oracles::materialize(*k, ds->view(i));
        CHECK(check_axioms(*k, m.members, order).ok);
        for (Subset x : m.members) CHECK_FALSE(m.contains(k->complement(x)));
        ours.push_back(m.members);
      }
      std::vector<std::vector<Subset>> theirs;
      for (auto& t : brute) theirs.push_back(t.members);
      std::sort(ours.begin(), ours.end());
      CHECK(ours == theirs);
    }
  }
}

TEST_CASE("leftmost tangle separations") {
  auto ctx = make_context(fixtures::triforce());
  const auto t1 = triforce_tangle(0), t2 = triforce_tangle(1);
  CHECK(leftmost_tangle_separation(*ctx, t1.view(), t2.view()) == triangle(0));
  CHECK(leftmost_tangle_separation(*ctx, t2.view(), t1.view()) == triangle(1));
  const ExplicitTangle one{1, {ctx->universe()}};
  CHECK_FALSE(leftmost_tangle_separation(*ctx, t1.view(), one.view()).has_value());

  for (const auto& k : small_instances(30)) {
    auto c = make_context(k);
    const int top = std::min(max_tangle_order(*c), 3);
    for (int order = 1; order <= top; ++order) {
      auto all = oracles::brute_force_tangles(*k, order);
      for (auto& a : all)
        for (auto& b : all) {
          if (a.members == b.members) continue;
          auto brute = oracles::brute_force_leftmost_tangles(*k, a, b);
          REQUIRE(brute.meet_is_minimizer);
          CHECK(leftmost_tangle_separation(*c, a.view(), b.view()) == brute.set);
        }
    }
  }
}

TEST_CASE("tangle_lattice_bottom") {
  auto ctx = make_context(fixtures::triforce());
  const auto t1 = triforce_tangle(0);
  CHECK(tangle_lattice_bottom(*ctx, t1.view(), Base{Subset::of({0}), Subset::of({3}), 1}) == triangle(0));
  CHECK_FALSE(tangle_lattice_bottom(*ctx, t1.view(), Base{Subset::of({3}), Subset::of({0}), 1}).has_value());
  const ExplicitTangle one{1, {ctx->universe()}};
  CHECK(tangle_lattice_bottom(*ctx, one.view(), Base{}) == ctx->universe());

  for (const auto& k : small_instances(20)) {
    auto c = make_context(k);
    const int top = std::min(max_tangle_order(*c), 3);
    for (int order = 1; order <= top; ++order)
      for (const auto& t : oracles::brute_force_tangles(*k, order))
        for (const Base& b : enumerate_bases(*k, order - 1)) {
          std::optional<Subset> least;
          for (Subset x : lattice_members(*k, b))
            if (t.contains(x)) least = least ? (*least & x) : x;
          if (least) CHECK(t.contains(*least));
          CHECK(tangle_lattice_bottom(*c, t.view(), b) == least);
        }
  }
}
