#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "tangles/separations.hpp"

namespace tangles {

struct Base {
  Subset b1;
  Subset b2;
  int order = 0;

  bool operator==(const Base&) const = default;
  Base reversed() const { return {b2, b1, order}; }
};

// Y ⊆ X with κ_min(Y, X̄) = κ(X) and |Y| ≤ κ(X). Elements are deleted
// greedily from the highest id down, so the lowest ids are kept.
Subset free_subset(const ConnectivityOracle& kappa, Subset x);

bool is_base(const ConnectivityOracle& kappa, Subset b1, Subset b2);

// All bases of order ≤ k (hence |b1|,|b2| ≤ k), sorted by (b1 bits, b2 bits).
std::vector<Base> enumerate_bases(const ConnectivityOracle& kappa, int k,
                                  kernels::Exec exec = kernels::Exec::kAuto);

Base base_for_set(const ConnectivityOracle& kappa, Subset x);

Subset lattice_bottom(const ConnectivityOracle& kappa, const Base& b);
Subset lattice_top(const ConnectivityOracle& kappa, const Base& b);

// Every member of L(B), ascending by bits.
std::vector<Subset> lattice_members(const ConnectivityOracle& kappa, const Base& b);

// Bases of bounded order with their lattices listed explicitly; shared by
// the tangle algorithms, which query the same lattices many times.
class BaseCatalog {
 public:
  struct Entry {
    Base base;
    Subset bottom;
    Subset top;
    std::vector<Subset> members;  // all of L(B), ascending by bits
  };

  static std::shared_ptr<const BaseCatalog> build(const ConnectivityOracle& kappa, int k);

  int k() const { return k_; }
  const std::vector<Entry>& entries() const { return entries_; }
  // Index of the entry for (b1, b2), or -1.
  int find(Subset b1, Subset b2) const;

  // Union of the members of L(B) contained in w (i.e. the largest such
  // member), or nullopt when none is.
  std::optional<Subset> top_within(int entry, Subset w) const;

 private:
  int k_ = 0;
  std::vector<Entry> entries_;
};

}  // namespace tangles
