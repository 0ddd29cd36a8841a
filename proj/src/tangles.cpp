#include "tangles/tangles.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "tangles/errors.hpp"

namespace tangles {

TangleContext::TangleContext(OraclePtr kappa) : kappa_(std::move(kappa)) {
  if (!kappa_->table())
    throw SizeGuardError("tangle computations need a memoized oracle (|U| <= 24), got |U|=" +
                         std::to_string(kappa_->n()));
}

std::shared_ptr<const BaseCatalog> TangleContext::catalog(int k) const {
  std::lock_guard lock(mutex_);
  auto& slot = catalogs_[k];
  if (!slot) slot = BaseCatalog::build(*kappa_, k);
  return slot;
}

ContextPtr make_context(OraclePtr kappa) { return std::make_shared<TangleContext>(std::move(kappa)); }

// ---------------------------------------------------------------------------
// Tangle

struct Tangle::Memo {
  std::mutex mutex;
  std::unordered_map<Subset, bool> values;
};

Tangle::Tangle(ContextPtr ctx, int order, int signature_order, std::vector<Subset> signature,
               std::shared_ptr<Memo> memo)
    : ctx_(std::move(ctx)),
      order_(order),
      signature_order_(signature_order),
      signature_(std::move(signature)),
      memo_(std::move(memo)) {}

Tangle Tangle::empty(ContextPtr ctx) { return Tangle(std::move(ctx), 0, 0, {}, std::make_shared<Memo>()); }

Tangle Tangle::from_signature(ContextPtr ctx, int order, std::vector<Subset> signature) {
  for (Subset s : signature)
    if (ctx->kappa()(s) >= order) throw DomainError("signature set " + to_string(s) + " has order >= " + std::to_string(order));
  return Tangle(std::move(ctx), order, order, std::move(signature), std::make_shared<Memo>());
}

bool Tangle::contains(Subset x) const {
  const int kx = ctx_->kappa()(x);
  if (kx >= order_)
    throw OutOfOrderError("membership of " + to_string(x) + " (order " + std::to_string(kx) +
                          ") in a tangle of order " + std::to_string(order_));
  {
    std::lock_guard lock(memo_->mutex);
    if (auto it = memo_->values.find(x); it != memo_->values.end()) return it->second;
  }
  std::vector<Subset> avoid;
  avoid.reserve(signature_.size() + 1);
  for (Subset s : signature_) avoid.push_back(ctx_->complement(s));
  avoid.push_back(ctx_->complement(x));
  bool r = exists_tangle_avoiding(*ctx_, nullptr, avoid, signature_order_);
  std::lock_guard lock(memo_->mutex);
  memo_->values.emplace(x, r);
  return r;
}

Tangle Tangle::truncate(int l) const {
  if (l >= order_) return *this;
  if (l <= 0) return empty(ctx_);
  // Membership below l is inherited, so the memo can be shared.
  return Tangle(ctx_, l, signature_order_, signature_, memo_);
}

TangleView Tangle::view() const {
  Tangle self = *this;
  return {order_, [self](Subset x) { return self.contains(x); }};
}

bool ExplicitTangle::contains(Subset x) const { return std::binary_search(members.begin(), members.end(), x); }

TangleView ExplicitTangle::view() const {
  auto self = std::make_shared<ExplicitTangle>(*this);
  return {order, [self](Subset x) { return self->contains(x); }};
}

// ---------------------------------------------------------------------------
// Axioms

AxiomCheck check_axioms(const ConnectivityOracle& kappa, const std::vector<Subset>& family, int k) {
  if (kappa.n() > 12) throw SizeGuardError("check_axioms needs |U| <= 12");
  const std::size_t size = std::size_t{1} << kappa.n();
  std::vector<char> in(size, 0);
  for (Subset x : family) {
    if (!kappa.ground().owns(x)) return {false, "member " + to_string(x) + " is not over the ground set"};
    if (kappa(x) >= k) return {false, "T0: member " + to_string(x) + " has order " + std::to_string(kappa(x))};
    if (x.size() == 1) return {false, "T3: singleton " + to_string(x)};
    in[x.bits] = 1;
  }
  for (std::uint64_t x = 0; x < size; ++x)
    if (kappa(Subset(x)) < k && !in[x] && !in[kappa.complement(Subset(x)).bits])
      return {false, "T1: neither " + to_string(Subset(x)) + " nor its complement is a member"};
  std::vector<char> seen(size, 0);
  std::vector<Subset> meets;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i; j < family.size(); ++j) {
      Subset m = family[i] & family[j];
      if (!seen[m.bits]) {
        seen[m.bits] = 1;
        meets.push_back(m);
      }
    }
  for (Subset m : meets)
    for (Subset c : family)
      if (!m.intersects(c)) return {false, "T2: empty intersection involving " + to_string(c)};
  return {};
}

// ---------------------------------------------------------------------------
// Minimal member in a box

std::optional<Subset> minimal_member_in_box(const TangleContext& ctx, const MembershipFn& s, Subset y1,
                                            Subset y2, int bound) {
  const ConnectivityOracle& kappa = ctx.kappa();
  if (!y1.subset_of(y2)) throw DomainError("minimal_member_in_box: Y1 is not contained in Y2");
  if (bound < 0) return std::nullopt;

  Subset x = y2;
  bool have = kappa(y2) <= bound && s(y2);
  std::unordered_set<Subset> rejected;
  std::optional<RegionMinimum> region;

  while (true) {
    bool shrunk = false;
    for (int out : (x - y1).elements()) {
      const Subset r = x.without(out);
      if (region)
        region->reset(r);
      else
        region.emplace(kappa, r);
      const RegionMinimum& rm = *region;
      if (rm(y1) > bound) continue;
      // Guess a free set Z of the hypothetical smaller member and grow the
      // largest set of order <= bound around Z ∪ Y1 inside r.
      for (Subset z : small_subsets(r - y1, bound)) {
        Subset grown = z | y1;
        if (rm(grown) > bound) continue;
        (r - grown).for_each([&](int e) {
          if (rm(grown.with(e)) <= bound) grown = grown.with(e);
        });
        if (rejected.count(grown)) continue;
        if (s(grown)) {
          x = grown;
          have = true;
          shrunk = true;
          break;
        }
        rejected.insert(grown);
      }
      if (shrunk) break;
    }
    if (!shrunk) break;
  }
  if (!have) return std::nullopt;
  return x;
}

std::optional<Subset> tangle_lattice_bottom(const TangleContext& ctx, const TangleView& t, const Base& b) {
  if (b.order >= t.order) return std::nullopt;
  return minimal_member_in_box(ctx, t.contains, b.b1, ctx.complement(b.b2), b.order);
}

// ---------------------------------------------------------------------------
// Tangle extension

namespace {

void check_avoid(const TangleContext& ctx, const TangleView* t0, const std::vector<Subset>& avoid, int k) {
  for (Subset a : avoid)
    if (ctx.kappa()(a) > k)
      throw DomainError("avoid set " + to_string(a) + " has order above " + std::to_string(k));
  if (t0 && t0->order > k) throw DomainError("seed tangle order exceeds target - 1");
}

// Initial μ: complement of X⊥(T0,(B2,B1)), members of L(B) inside some
// avoid set, and singleton members.
std::vector<Subset> seed_mu(const TangleContext& ctx, const BaseCatalog& cat, const TangleView* t0,
                            const std::vector<Subset>& avoid) {
  const auto& entries = cat.entries();
  std::vector<Subset> mu(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    Subset y;
    if (t0 && t0->order > 0) {
      if (auto bottom = tangle_lattice_bottom(ctx, *t0, e.base.reversed())) y |= ctx.complement(*bottom);
    }
    for (Subset a : avoid)
      if (auto top = cat.top_within(static_cast<int>(i), a)) y |= *top;
    for (Subset m : e.members)
      if (m.size() == 1) y |= m;
    mu[i] = y;
  }
  return mu;
}

}  // namespace

bool exists_tangle_avoiding(const TangleContext& ctx, const TangleView* t0, const std::vector<Subset>& avoid,
                            int target) {
  if (target <= 0) return true;
  const int k = target - 1;
  check_avoid(ctx, t0, avoid, k);
  auto cat = ctx.catalog(k);
  const auto& entries = cat->entries();
  std::vector<Subset> mu = seed_mu(ctx, *cat, t0, avoid);

  const int n = ctx.n();
  const std::uint64_t all = ctx.universe().bits;
  std::vector<char> sup(std::size_t{1} << n);
  std::vector<Subset> values;
  while (true) {
    values.assign(mu.begin(), mu.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (!values.empty() && values.front().empty()) values.erase(values.begin());

    // sup[r]: r is contained in some μ value.
    std::fill(sup.begin(), sup.end(), 0);
    for (Subset v : values) sup[v.bits] = 1;
    for (int b = 0; b < n; ++b) {
      const std::uint64_t bit = std::uint64_t{1} << b;
      for (std::uint64_t r = 0; r <= all; ++r)
        if (!(r & bit) && sup[r | bit]) sup[r] = 1;
    }
    auto covered = [&](Subset m) {
      if (values.empty()) return m.empty();
      for (Subset a : values)
        if (sup[(m - a).bits]) return true;
      return false;
    };
    // μ(B) ∪ μ(C) = U means U is decomposable: no tangle.
    if (covered(ctx.universe())) return false;

    bool changed = false;
    std::vector<Subset> next = mu;
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (Subset m : entries[i].members)
        if (!m.subset_of(next[i]) && covered(m)) {
          next[i] |= m;
          changed = true;
        }
    if (!changed) return true;
    mu.swap(next);
  }
}

bool exists_tangle_avoiding_reference(const TangleContext& ctx, const TangleView* t0,
                                      const std::vector<Subset>& avoid, int target) {
  if (target <= 0) return true;
  const int k = target - 1;
  check_avoid(ctx, t0, avoid, k);
  const ConnectivityOracle& kappa = ctx.kappa();
  std::vector<Base> bases = enumerate_bases(kappa, k, kernels::Exec::kSerial);
  const Subset all = ctx.universe();

  std::vector<Subset> mu(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const Base& b = bases[i];
    Subset y;
    if (t0 && t0->order > 0)
      if (auto bottom = tangle_lattice_bottom(ctx, *t0, b.reversed())) y |= all - *bottom;
    for (Subset a : avoid) {
      if (!b.b1.subset_of(a)) continue;
      if (kappa_min(kappa, b.b1, b.b2 | (all - a)).value == b.order)
        y |= rightmost_min_separation(kappa, b.b1, b.b2 | (all - a));
    }
    (all - b.b1 - b.b2).for_each([&](int u) {
      if (b.b1.subset_of(Subset::singleton(u)) && kappa(Subset::singleton(u)) == b.order) y = y.with(u);
    });
    if (b.b1.size() == 1 && kappa(b.b1) == b.order) y |= b.b1;
    mu[i] = y;
  }

  while (true) {
    for (std::size_t i = 0; i < mu.size(); ++i)
      for (std::size_t j = i; j < mu.size(); ++j)
        if ((mu[i] | mu[j]) == all) return false;
    bool applied = false;
    for (std::size_t bi = 0; bi < bases.size() && !applied; ++bi) {
      const Base& b = bases[bi];
      for (std::size_t c = 0; c < mu.size() && !applied; ++c)
        for (std::size_t d = c; d < mu.size() && !applied; ++d) {
          const Subset w = (mu[c] | mu[d]) - b.b2;
          if (!b.b1.subset_of(w)) continue;
          for (int y : (w - mu[bi]).elements()) {
            Subset lo = b.b1.with(y);
            if (kappa_min(kappa, lo, all - w).value != b.order) continue;
            mu[bi] |= leftmost_min_separation(kappa, lo, all - w);
            applied = true;
            break;
          }
        }
    }
    if (!applied) return true;
  }
}

bool has_tangle_of_order(const TangleContext& ctx, int k) {
  if (k <= 0) return true;
  return exists_tangle_avoiding(ctx, nullptr, {}, k);
}

int max_tangle_order(const TangleContext& ctx) {
  const int cap = ctx.kappa().max_value() + 1;
  int k = 0;
  while (k < cap && has_tangle_of_order(ctx, k + 1)) ++k;
  return k;
}

std::optional<Subset> leftmost_tangle_separation(const TangleContext& ctx, const TangleView& t,
                                                 const TangleView& u) {
  const int top = std::min(t.order, u.order);
  if (top <= 0) return std::nullopt;
  auto cat = ctx.catalog(top - 1);
  for (int j = 0; j < top; ++j) {
    std::optional<Subset> meet;
    for (const auto& e : cat->entries()) {
      if (e.base.order != j) continue;
      auto bottom = tangle_lattice_bottom(ctx, t, e.base);
      if (!bottom || !u.contains(ctx.complement(*bottom))) continue;
      meet = meet ? (*meet & *bottom) : *bottom;
    }
    if (meet) return meet;
  }
  return std::nullopt;
}

}  // namespace tangles
