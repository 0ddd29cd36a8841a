#include "tangles/bases.hpp"

#include <algorithm>
#include <optional>

#include "tangles/errors.hpp"

namespace tangles {

Subset free_subset(const ConnectivityOracle& kappa, Subset x) {
  if (!kappa.ground().owns(x)) throw DomainError("free_subset: set not over the ground set");
  const int target = kappa(x);
  const Subset outside = kappa.complement(x);
  Subset y = x;
  std::vector<int> ids = x.elements();
  for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
    Subset trial = y.without(*it);
    if (kappa_min(kappa, trial, outside).value == target) y = trial;
  }
  return y;
}

bool is_base(const ConnectivityOracle& kappa, Subset b1, Subset b2) {
  int v = kappa_min(kappa, b1, b2).value;
  return v >= std::max(b1.size(), b2.size());
}

std::vector<Base> enumerate_bases(const ConnectivityOracle& kappa, int k, kernels::Exec exec) {
  const Subset all = kappa.universe();
  const std::vector<Subset> small = small_subsets(all, k);
  std::vector<std::vector<Base>> per_b2(small.size());
  const bool tabled = kappa.table() != nullptr;
  const bool parallel = exec == kernels::Exec::kParallel ||
                        (exec == kernels::Exec::kAuto && kappa.n() + 6 >= kernels::kParallelThresholdBits);

  auto work = [&](std::size_t j) {
    const Subset b2 = small[j];
    std::optional<RegionMinimum> region;
    if (tabled) region.emplace(kappa, all - b2);
    for (Subset b1 : small) {
      if (b1.intersects(b2)) continue;
      int v = region ? (*region)(b1) : kappa_min(kappa, b1, b2).value;
      if (v <= k && v >= std::max(b1.size(), b2.size())) per_b2[j].push_back({b1, b2, v});
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(small.size()); ++j) work(static_cast<std::size_t>(j));
  } else {
    for (std::size_t j = 0; j < small.size(); ++j) work(j);
  }

  std::vector<Base> out;
  for (auto& v : per_b2) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end(), [](const Base& a, const Base& b) {
    return a.b1.bits != b.b1.bits ? a.b1.bits < b.b1.bits : a.b2.bits < b.b2.bits;
  });
  return out;
}

Base base_for_set(const ConnectivityOracle& kappa, Subset x) {
  return {free_subset(kappa, x), free_subset(kappa, kappa.complement(x)), kappa(x)};
}

namespace {
void require_base(const ConnectivityOracle& kappa, const Base& b) {
  if (b.b1.intersects(b.b2) || !is_base(kappa, b.b1, b.b2))
    throw DomainError("(" + to_string(b.b1) + "," + to_string(b.b2) + ") is not a base");
}
}  // namespace

Subset lattice_bottom(const ConnectivityOracle& kappa, const Base& b) {
  require_base(kappa, b);
  return leftmost_min_separation(kappa, b.b1, b.b2);
}

Subset lattice_top(const ConnectivityOracle& kappa, const Base& b) {
  require_base(kappa, b);
  return rightmost_min_separation(kappa, b.b1, b.b2);
}

std::vector<Subset> lattice_members(const ConnectivityOracle& kappa, const Base& b) {
  require_base(kappa, b);
  const int order = kappa_min(kappa, b.b1, b.b2).value;
  std::vector<Subset> out;
  for_each_submask(kappa.universe() - b.b1 - b.b2, [&](Subset s) {
    if (kappa(b.b1 | s) == order) out.push_back(b.b1 | s);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::shared_ptr<const BaseCatalog> BaseCatalog::build(const ConnectivityOracle& kappa, int k) {
  auto cat = std::make_shared<BaseCatalog>();
  cat->k_ = k;
  auto bases = enumerate_bases(kappa, k);
  cat->entries_.resize(bases.size());
  const std::uint16_t* table = kappa.table();
  auto fill = [&](std::size_t i) {
    Entry& e = cat->entries_[i];
    e.base = bases[i];
    Subset free = kappa.universe() - e.base.b1 - e.base.b2;
    Subset meet = free | e.base.b1, join;
    for_each_submask(free, [&](Subset s) {
      Subset w = e.base.b1 | s;
      int v = table ? table[w.bits] : kappa(w);
      if (v == e.base.order) {
        e.members.push_back(w);
        meet &= w;
        join |= w;
      }
    });
    std::sort(e.members.begin(), e.members.end());
    e.bottom = meet;
    e.top = join;
  };
#pragma omp parallel for schedule(dynamic, 8) if (kappa.n() >= 14)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(bases.size()); ++i) fill(static_cast<std::size_t>(i));

  return cat;
}

int BaseCatalog::find(Subset b1, Subset b2) const {
  auto key = std::pair{b1.bits, b2.bits};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key, [](const Entry& e, const auto& k) {
    return std::pair{e.base.b1.bits, e.base.b2.bits} < k;
  });
  if (it == entries_.end() || it->base.b1 != b1 || it->base.b2 != b2) return -1;
  return static_cast<int>(it - entries_.begin());
}

std::optional<Subset> BaseCatalog::top_within(int entry, Subset w) const {
  const Entry& e = entries_[entry];
  if (!e.bottom.subset_of(w)) return std::nullopt;
  if (e.top.subset_of(w)) return e.top;
  Subset acc;
  bool any = false;
  for (Subset m : e.members)
    if (m.subset_of(w)) {
      acc |= m;
      any = true;
    }
  if (!any) return std::nullopt;
  return acc;
}

}  // namespace tangles
