#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tangles/connectivity.hpp"
#include "tangles/kernels.hpp"

namespace tangles {

struct MinSeparationResult {
  int value = 0;
  Subset witness;
};

struct SeparationExtremes {
  int value = 0;
  Subset leftmost;
  Subset rightmost;
};

// Strategy for min { κ(Z) : lower ⊆ Z ⊆ upper }. A strategy may also report
// both extreme minimizers directly; otherwise they are found by pinning.
class Minimizer {
 public:
  virtual ~Minimizer() = default;
  virtual MinSeparationResult minimize(const ConnectivityOracle& kappa, Subset lower,
                                       Subset upper) const = 0;
  virtual std::optional<SeparationExtremes> extremes(const ConnectivityOracle&, Subset, Subset) const {
    return std::nullopt;
  }
};

// Scans the whole box. Uses the oracle's value table when available.
class ExhaustiveMinimizer final : public Minimizer {
 public:
  explicit ExhaustiveMinimizer(int max_free = 22, kernels::Exec exec = kernels::Exec::kAuto)
      : max_free_(max_free), exec_(exec) {}
  MinSeparationResult minimize(const ConnectivityOracle& kappa, Subset lower, Subset upper) const override;
  std::optional<SeparationExtremes> extremes(const ConnectivityOracle& kappa, Subset lower,
                                             Subset upper) const override;
  int max_free() const { return max_free_; }

 private:
  kernels::BoxScan scan(const ConnectivityOracle& kappa, Subset lower, Subset upper) const;
  int max_free_;
  kernels::Exec exec_;
};

const Minimizer& default_minimizer();
// Changes the free-position bound of the default minimizer (not thread-safe).
void set_default_max_free(int max_free);

MinSeparationResult kappa_min(const ConnectivityOracle& kappa, Subset x, Subset y,
                              const Minimizer& m = default_minimizer());

Subset leftmost_min_separation(const ConnectivityOracle& kappa, Subset x, Subset y,
                               const Minimizer& m = default_minimizer());
Subset rightmost_min_separation(const ConnectivityOracle& kappa, Subset x, Subset y,
                                const Minimizer& m = default_minimizer());
SeparationExtremes min_separation_extremes(const ConnectivityOracle& kappa, Subset x, Subset y,
                                           const Minimizer& m = default_minimizer());

// Greedy exclusion: for each free u in ascending order, exclude u whenever
// the minimum value survives. Works with any strategy.
Subset leftmost_by_pinning(const ConnectivityOracle& kappa, Subset x, Subset y,
                           const Minimizer& m = default_minimizer());

// κ_min(A, U∖R) for every A ⊆ R, computed in one pass over the table.
class RegionMinimum {
 public:
  RegionMinimum(const ConnectivityOracle& kappa, Subset region);
  Subset region() const { return region_; }
  int operator()(Subset a) const { return values_[a.bits]; }
  // Re-targets to another region, reusing storage.
  void reset(Subset region);

 private:
  const ConnectivityOracle* kappa_;
  Subset region_;
  std::vector<std::uint16_t> values_;
};

}  // namespace tangles
