#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "tangles/errors.hpp"
#include "tangles/fixtures.hpp"
#include "tangles/oracles.hpp"

using namespace tangles;
using fixtures::triangle;

namespace {

// Tangles of order k by trying every orientation of every pair of order
// < k and testing T1-T3 literally. Only for very small ground sets.
std::vector<std::vector<Subset>> naive_tangles(const ConnectivityOracle& kappa, int k) {
  const int n = kappa.n();
  std::vector<Subset> reps;  // one set per complementary pair
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    const Subset s(x);
    if (kappa(s) < k && s < kappa.complement(s)) reps.push_back(s);
  }
  std::vector<std::vector<Subset>> out;
  if (reps.size() > 14) throw SizeGuardError("too many pairs for the literal sweep");
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << reps.size()); ++pick) {
    std::vector<Subset> t;
    for (std::size_t i = 0; i < reps.size(); ++i) t.push_back((pick >> i) & 1 ? kappa.complement(reps[i]) : reps[i]);
    bool ok = true;
    for (Subset x : t) ok = ok && x.size() != 1;
    for (std::size_t a = 0; ok && a < t.size(); ++a)
      for (std::size_t b = a; ok && b < t.size(); ++b)
        for (std::size_t c = b; ok && c < t.size(); ++c) ok = !(t[a] & t[b] & t[c]).empty();
    if (!ok) continue;
    std::sort(t.begin(), t.end());
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("brute-force tangle examples") {
  CHECK(oracles::brute_force_tangles(*fixtures::triforce(), 2).size() == 3);
  CHECK(oracles::brute_force_tangles(*fixtures::p3(), 2).empty());
  CHECK(oracles::brute_force_tangles(*fixtures::k4(), 0).size() == 1);
  CHECK(oracles::brute_force_tangles(*fixtures::k4(), 0)[0].members.empty());
  CHECK_THROWS_AS(oracles::brute_force_tangles(*fixtures::grid3(), 2), SizeGuardError);
}

TEST_CASE("brute-force tangles agree with a literal axiom sweep") {
  std::vector<OraclePtr> cases{fixtures::p3(), fixtures::c5rank(), fixtures::k4()};
  for (int s = 0; s < 60; ++s) cases.push_back(oracles::random_instance(900 + s, 6).kappa);
  int compared = 0;
  for (const auto& k : cases) {
    for (int order = 1; order <= 3; ++order) {
      std::vector<std::vector<Subset>> naive;
      try {
        naive = naive_tangles(*k, order);
      } catch (const SizeGuardError&) {
        continue;
      }
      ++compared;
      std::vector<std::vector<Subset>> got;
      for (auto& t : oracles::brute_force_tangles(*k, order)) got.push_back(t.members);
      std::sort(got.begin(), got.end());
      CHECK(got == naive);
    }
  }
  CHECK(compared >= 100);
}

TEST_CASE("brute-force branch width examples") {
  CHECK(oracles::brute_force_branch_width(*fixtures::p3()) == 1);
  CHECK(oracles::brute_force_branch_width(*fixtures::k4()) == 3);
  CHECK(oracles::brute_force_branch_width(*fixtures::c5rank()) == 2);
  CHECK_THROWS_AS(oracles::brute_force_branch_width(*fixtures::triforce()), SizeGuardError);
}

TEST_CASE("brute-force leftmost examples") {
  auto t = fixtures::triforce();
  auto all = oracles::brute_force_tangles(*t, 2);
  auto pick = [&](int i) {
    for (auto& x : all)
      if (x.contains(triangle(i))) return x;
    FAIL("missing tangle");
    return all[0];
  };
  auto r = oracles::brute_force_leftmost_tangles(*t, pick(0), pick(1));
  CHECK(r.set == triangle(0));
  CHECK(r.value == 1);
  CHECK(r.meet_is_minimizer);
  const Subset x = Subset::of({1, 4, 7});
  CHECK(oracles::brute_force_leftmost_box(*t, x, t->complement(x)).set == x);
  CHECK(oracles::brute_force_leftmost_box(*t, Subset::of({0}), Subset::of({3})).set == triangle(0));
  CHECK_FALSE(oracles::brute_force_leftmost_box(*t, Subset::of({0}), Subset::of({0})).set.has_value());
}

TEST_CASE("tree codes and permutations") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = oracles::random_permutation(10, rng);
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 10; ++i) CHECK(sorted[i] == i);
  }
  // A path a-b-c labelled x,y,z and the same path listed in another order.
  std::vector<std::vector<int>> path{{1}, {0, 2}, {1}};
  std::vector<std::vector<int>> again{{2}, {2}, {0, 1}};
  CHECK(oracles::tree_code(path, {"x", "y", "z"}) == oracles::tree_code(again, {"z", "x", "y"}));
  CHECK(oracles::tree_code(path, {"x", "y", "z"}) == oracles::tree_code(path, {"z", "y", "x"}));
  CHECK(oracles::tree_code(path, {"x", "y", "z"}) != oracles::tree_code(path, {"y", "x", "z"}));
  std::vector<std::vector<int>> star{{1, 2, 3}, {0}, {0}, {0}};
  std::vector<std::vector<int>> line{{1}, {0, 2}, {1, 3}, {2}};
  CHECK(oracles::tree_code(star, {"", "", "", ""}) != oracles::tree_code(line, {"", "", "", ""}));
  CHECK(oracles::tree_code(path, {"x", "y", "z"}, 0) != oracles::tree_code(path, {"x", "y", "z"}, 2));
}

TEST_CASE("canonicity harness") {
  auto report = oracles::canonicity_harness(fixtures::triforce(), 2, 20, 7);
  CHECK(report.ok());
  CHECK(report.trials == 20);
  CHECK(report.directed_trials == 60);

  auto ttd = canonical_decomposition(fixtures::triforce(), 2);
  std::vector<int> id(9);
  std::iota(id.begin(), id.end(), 0);
  CHECK(oracles::decomposition_code(ttd, id) == oracles::decomposition_code(canonical_decomposition(fixtures::triforce(), 2), id));

  // A relabelling that swaps the first two triangles maps the decomposition
  // onto itself.
  std::vector<int> swap{3, 4, 5, 0, 1, 2, 6, 7, 8};
  CHECK(oracles::decomposition_code(ttd, swap) == oracles::decomposition_code(ttd, id));
  // A relabelling that breaks the triangles does not.
  std::vector<int> mix{0, 3, 2, 1, 4, 5, 6, 7, 8};
  CHECK(oracles::decomposition_code(ttd, mix) != oracles::decomposition_code(ttd, id));

  for (const auto& k : {fixtures::k4(), fixtures::c5rank()}) CHECK(oracles::canonicity_harness(k, 2, 10, 1).ok());
}

TEST_CASE("random generators") {
  std::map<std::string, int> kinds;
  for (int s = 0; s < 120; ++s) {
    auto a = oracles::random_instance(s);
    auto b = oracles::random_instance(s);
    REQUIRE(a.kappa->n() == b.kappa->n());
    CHECK(a.description == b.description);
    CHECK(a.kappa->n() <= 8);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << a.kappa->n()); ++x)
      CHECK((*a.kappa)(Subset(x)) == (*b.kappa)(Subset(x)));
    kinds[a.description.substr(0, a.description.find(' '))]++;
    auto blocks = oracles::random_block_instance(s, 12);
    CHECK(blocks.kappa->n() <= 12);
  }
  CHECK(kinds.size() >= 3);

  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    auto pd = oracles::random_partial_decomposition(6, 3 + t % 5, rng);
    std::string why;
    CHECK_MESSAGE(pd.valid(&why), why);
    CHECK_FALSE(pd.exact());
    CHECK(static_cast<int>(pd.leaves().size()) == 3 + t % 5);
  }
}

TEST_CASE("graph enumerations") {
  CHECK(oracles::graphs_up_to_vertices(3).size() == 11);
  CHECK(oracles::connected_graphs_up_to_edges(2).size() == 4);
  // 1 on two vertices, 3 paths and a triangle on three, 16 trees on four.
  CHECK(oracles::connected_graphs_up_to_edges(3).size() == 21);
}

TEST_CASE("library agrees with the oracles on random instances") {
  int checked = 0;
  for (int s = 0; s < 120; ++s) {
    auto inst = oracles::random_instance(5000 + s);
    const auto& k = inst.kappa;
    auto ctx = make_context(k);
    const int mto = max_tangle_order(*ctx);
    if (k->n() <= 7) CHECK_MESSAGE(mto == oracles::brute_force_branch_width(*k), inst.description);
    const int top = std::min(mto + 1, 3);
    auto ds = TangleDataStructure::build(ctx, std::min(mto, 3));
    for (int order = 0; order <= top; ++order) {
      auto brute = oracles::brute_force_tangles(*k, order);
      CHECK(has_tangle_of_order(*ctx, order) == !brute.empty());
      if (order > ds->k()) continue;
      CHECK(static_cast<int>(brute.size()) == ds->size(order) - (order ? ds->size(order - 1) : 0));
      for (auto& t : brute) CHECK(ds->find(order, t.view().contains) > 0);
    }
    ++checked;
  }
  CHECK(checked >= 100);
}
