#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tangles/bases.hpp"

namespace tangles {

// Shared state for tangle computations over one oracle: the oracle itself
// and lazily built base catalogs. Requires a memoized oracle.
class TangleContext {
 public:
  explicit TangleContext(OraclePtr kappa);

  const ConnectivityOracle& kappa() const { return *kappa_; }
  const OraclePtr& oracle() const { return kappa_; }
  int n() const { return kappa_->n(); }
  Subset universe() const { return kappa_->universe(); }
  Subset complement(Subset x) const { return kappa_->complement(x); }

  std::shared_ptr<const BaseCatalog> catalog(int k) const;

 private:
  OraclePtr kappa_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_ptr<const BaseCatalog>> catalogs_;
};

using ContextPtr = std::shared_ptr<const TangleContext>;
ContextPtr make_context(OraclePtr kappa);

using MembershipFn = std::function<bool(Subset)>;

// Any tangle given by its order and a membership test valid on sets of
// order below it.
struct TangleView {
  int order = 0;
  MembershipFn contains;
};

// A tangle fixed by a list of committed sets: the unique tangle of order
// `signature_order` containing all of them, truncated to `order`.
class Tangle {
 public:
  static Tangle empty(ContextPtr ctx);
  static Tangle from_signature(ContextPtr ctx, int order, std::vector<Subset> signature);

  int order() const { return order_; }
  int signature_order() const { return signature_order_; }
  const std::vector<Subset>& signature() const { return signature_; }
  const ContextPtr& context() const { return ctx_; }

  // Throws OutOfOrderError when κ(x) ≥ order.
  bool contains(Subset x) const;
  Tangle truncate(int l) const;
  TangleView view() const;

 private:
  struct Memo;
  Tangle(ContextPtr ctx, int order, int signature_order, std::vector<Subset> signature,
         std::shared_ptr<Memo> memo);

  ContextPtr ctx_;
  int order_ = 0;
  int signature_order_ = 0;
  std::vector<Subset> signature_;
  std::shared_ptr<Memo> memo_;
};

struct ExplicitTangle {
  int order = 0;
  std::vector<Subset> members;  // ascending by bits

  bool contains(Subset x) const;
  TangleView view() const;
};

struct AxiomCheck {
  bool ok = true;
  std::string violation;
};

// T0–T3 for an explicit family. Requires |U| ≤ 12.
AxiomCheck check_axioms(const ConnectivityOracle& kappa, const std::vector<Subset>& family, int k);

// Inclusion-minimal X with Y1 ⊆ X ⊆ Y2, κ(X) ≤ bound and S(X), where S is a
// union of tangles of order > bound. S is only queried on sets of order ≤
// bound.
std::optional<Subset> minimal_member_in_box(const TangleContext& ctx, const MembershipFn& s, Subset y1,
                                            Subset y2, int bound);
// Same with bound = order − 1 for a union of tangles of the given order.
inline std::optional<Subset> minimal_member_in_box(const TangleContext& ctx, const TangleView& s, Subset y1,
                                                   Subset y2) {
  return minimal_member_in_box(ctx, s.contains, y1, y2, s.order - 1);
}

// Is there a tangle of order `target` extending t0 (nullptr = empty tangle)
// that contains no subset of any avoid set?
bool exists_tangle_avoiding(const TangleContext& ctx, const TangleView* t0, const std::vector<Subset>& avoid,
                            int target);

// Literal variant: violations of the closure rule are searched per element
// with constrained minimization and applied one at a time. Slow; used to
// cross-check the batched version.
bool exists_tangle_avoiding_reference(const TangleContext& ctx, const TangleView* t0,
                                      const std::vector<Subset>& avoid, int target);

bool has_tangle_of_order(const TangleContext& ctx, int k);
int max_tangle_order(const TangleContext& ctx);

std::optional<Subset> leftmost_tangle_separation(const TangleContext& ctx, const TangleView& t,
                                                 const TangleView& u);

// Least member of T ∩ L(B); nullopt when empty or B.order ≥ T.order.
std::optional<Subset> tangle_lattice_bottom(const TangleContext& ctx, const TangleView& t, const Base& b);

}  // namespace tangles
