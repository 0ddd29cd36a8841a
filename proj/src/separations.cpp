#include "tangles/separations.hpp"

#include <limits>

#include "tangles/errors.hpp"

namespace tangles {

namespace {

ExhaustiveMinimizer& mutable_default() {
  static ExhaustiveMinimizer m;
  return m;
}

void check_box(const ConnectivityOracle& kappa, Subset x, Subset y) {
  if (!kappa.ground().owns(x) || !kappa.ground().owns(y))
    throw DomainError("separation arguments are not over the ground set");
  if (x.intersects(y)) throw DomainError("separation arguments " + to_string(x) + " and " + to_string(y) + " overlap");
}

}  // namespace

const Minimizer& default_minimizer() { return mutable_default(); }

void set_default_max_free(int max_free) { mutable_default() = ExhaustiveMinimizer(max_free); }

kernels::BoxScan ExhaustiveMinimizer::scan(const ConnectivityOracle& kappa, Subset lower, Subset upper) const {
  if (!lower.subset_of(upper)) throw DomainError("empty box");
  int free = (upper - lower).size();
  if (free > max_free_)
    throw SizeGuardError("exhaustive minimization over " + std::to_string(free) +
                         " free positions exceeds --max-exhaustive " + std::to_string(max_free_));
  if (const std::uint16_t* t = kappa.table()) return kernels::scan_box(t, lower, upper, exec_);
  kernels::BoxScan r;
  r.min = std::numeric_limits<int>::max();
  for_each_submask(upper - lower, [&](Subset s) {
    Subset w = lower | s;
    int v = kappa(w);
    if (v < r.min) {
      r = {v, w, w, 1, w};
    } else if (v == r.min) {
      r.meet &= w;
      r.join |= w;
      ++r.minimizers;
      if (w.bits < r.first.bits) r.first = w;
    }
  });
  return r;
}

MinSeparationResult ExhaustiveMinimizer::minimize(const ConnectivityOracle& kappa, Subset lower,
                                                  Subset upper) const {
  auto r = scan(kappa, lower, upper);
  return {r.min, r.first};
}

std::optional<SeparationExtremes> ExhaustiveMinimizer::extremes(const ConnectivityOracle& kappa, Subset lower,
                                                                Subset upper) const {
  auto r = scan(kappa, lower, upper);
  // Minimizers form a lattice, so meet and join are themselves minimizers.
  return SeparationExtremes{r.min, r.meet, r.join};
}

MinSeparationResult kappa_min(const ConnectivityOracle& kappa, Subset x, Subset y, const Minimizer& m) {
  check_box(kappa, x, y);
  return m.minimize(kappa, x, kappa.complement(y));
}

SeparationExtremes min_separation_extremes(const ConnectivityOracle& kappa, Subset x, Subset y,
                                           const Minimizer& m) {
  check_box(kappa, x, y);
  if (auto e = m.extremes(kappa, x, kappa.complement(y))) return *e;
  int v = m.minimize(kappa, x, kappa.complement(y)).value;
  return {v, leftmost_by_pinning(kappa, x, y, m), kappa.complement(leftmost_by_pinning(kappa, y, x, m))};
}

Subset leftmost_min_separation(const ConnectivityOracle& kappa, Subset x, Subset y, const Minimizer& m) {
  return min_separation_extremes(kappa, x, y, m).leftmost;
}

Subset rightmost_min_separation(const ConnectivityOracle& kappa, Subset x, Subset y, const Minimizer& m) {
  return min_separation_extremes(kappa, x, y, m).rightmost;
}

Subset leftmost_by_pinning(const ConnectivityOracle& kappa, Subset x, Subset y, const Minimizer& m) {
  check_box(kappa, x, y);
  const int v = m.minimize(kappa, x, kappa.complement(y)).value;
  Subset pinned = y;
  (kappa.universe() - x - y).for_each([&](int u) {
    Subset trial = pinned.with(u);
    if (m.minimize(kappa, x, kappa.complement(trial)).value == v) pinned = trial;
  });
  return kappa.complement(pinned);
}

RegionMinimum::RegionMinimum(const ConnectivityOracle& kappa, Subset region) : kappa_(&kappa) {
  if (!kappa.table()) throw SizeGuardError("RegionMinimum needs a memoized oracle");
  values_.assign(std::size_t{1} << kappa.n(), 0);
  reset(region);
}

void RegionMinimum::reset(Subset region) {
  region_ = region;
  kernels::superset_min(kappa_->table(), region, values_.data());
}

}  // namespace tangles
