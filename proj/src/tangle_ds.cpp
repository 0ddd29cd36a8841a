#include "tangles/tangle_ds.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "tangles/errors.hpp"

namespace tangles {

int DistinctionTree::leaf_count() const {
  int c = 0;
  for (const Node& v : nodes) c += v.leaf >= 0;
  return c;
}

int DistinctionTree::leaf_node(int leaf) const {
  for (std::size_t v = 0; v < nodes.size(); ++v)
    if (nodes[v].leaf == leaf) return static_cast<int>(v);
  return -1;
}

std::vector<Subset> DistinctionTree::path(int v) const {
  std::vector<Subset> out;
  for (; nodes[v].parent >= 0; v = nodes[v].parent) out.push_back(nodes[v].separator);
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

// Membership in the union of the order-k tangles compatible with a leaf's
// path separators.
class LeafUnion {
 public:
  LeafUnion(const TangleContext& ctx, int k, const std::vector<Subset>& path) : ctx_(ctx), k_(k) {
    for (Subset s : path) avoid_.push_back(ctx.complement(s));
  }
  bool operator()(Subset x) {
    if (ctx_.kappa()(x) >= k_) return false;
    if (auto it = memo_.find(x); it != memo_.end()) return it->second;
    avoid_.push_back(ctx_.complement(x));
    bool r = exists_tangle_avoiding(ctx_, nullptr, avoid_, k_);
    avoid_.pop_back();
    memo_.emplace(x, r);
    return r;
  }

 private:
  const TangleContext& ctx_;
  int k_;
  std::vector<Subset> avoid_;
  std::unordered_map<Subset, bool> memo_;
};

std::optional<Subset> least_in_lattice(const BaseCatalog::Entry& e, LeafUnion& s) {
  std::vector<Subset> in;
  for (Subset m : e.members)
    if (s(m)) in.push_back(m);
  for (Subset m : in) {
    bool minimal = std::none_of(in.begin(), in.end(), [&](Subset c) { return c.proper_subset_of(m); });
    if (minimal) return m;
  }
  return std::nullopt;
}

// A set X with both X and its complement in some tangle at the leaf, or
// nullopt when the leaf carries a single tangle.
std::optional<Subset> find_split(const TangleContext& ctx, int k, const std::vector<Subset>& path,
                                 CandidateStrategy strategy) {
  LeafUnion s(ctx, k, path);
  auto cat = ctx.catalog(k - 1);
  std::unordered_set<Subset> tested;
  MembershipFn fn = [&s](Subset x) { return s(x); };
  for (const auto& e : cat->entries()) {
    std::optional<Subset> cand;
    if (strategy == CandidateStrategy::kLatticeScan)
      cand = least_in_lattice(e, s);
    else
      cand = minimal_member_in_box(ctx, fn, e.base.b1, ctx.complement(e.base.b2), e.base.order);
    if (!cand || !tested.insert(*cand).second) continue;
    if (s(ctx.complement(*cand))) return cand;
  }
  return std::nullopt;
}

}  // namespace

TangleDataStructure::Ptr TangleDataStructure::build(ContextPtr ctx, int k, const DsOptions& opts) {
  if (k > opts.max_order)
    throw SizeGuardError("tangle data structure of order " + std::to_string(k) + " exceeds max order " +
                         std::to_string(opts.max_order));
  if (k < 0) throw DomainError("negative order");
  Ptr cur;
  {
    auto base = std::shared_ptr<TangleDataStructure>(new TangleDataStructure());
    base->ctx_ = std::move(ctx);
    base->k_ = 0;
    base->tree_.emplace();
    base->tree_->nodes.push_back({});
    base->finish_level();
    cur = base;
  }
  while (cur->k_ < k) cur = extend(cur, opts);
  return cur;
}

TangleDataStructure::Ptr TangleDataStructure::extend(Ptr lower, const DsOptions& opts) {
  const int k = lower->k_ + 1;
  if (k > opts.max_order)
    throw SizeGuardError("tangle data structure of order " + std::to_string(k) + " exceeds max order " +
                         std::to_string(opts.max_order));
  auto ds = std::shared_ptr<TangleDataStructure>(new TangleDataStructure());
  ds->ctx_ = lower->ctx_;
  ds->k_ = k;
  ds->lower_ = lower;
  const TangleContext& ctx = *ds->ctx_;
  // No tangle of order k if the level below is already empty.
  if (lower->tree_ && has_tangle_of_order(ctx, k)) {
    DistinctionTree t;
    t.nodes.push_back({});
    std::deque<int> open{0};
    while (!open.empty()) {
      int u = open.front();
      open.pop_front();
      auto split = find_split(ctx, k, t.path(u), opts.strategy);
      if (!split) continue;
      for (int side = 0; side < 2; ++side) {
        DistinctionTree::Node child;
        child.parent = u;
        child.separator = side == 0 ? *split : ctx.complement(*split);
        t.nodes[u].child[side] = static_cast<int>(t.nodes.size());
        t.nodes.push_back(child);
        open.push_back(t.nodes[u].child[side]);
      }
    }
    ds->tree_ = std::move(t);
  }
  ds->finish_level();
  return ds;
}

void TangleDataStructure::finish_level() {
  leaves_.clear();
  if (!tree_) return;
  // Number leaves in depth-first order, side 0 first.
  int next = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    auto& node = tree_->nodes[v];
    if (node.child[0] < 0) {
      node.leaf = next++;
      continue;
    }
    node.leaf = -1;
    stack.push_back(node.child[1]);
    stack.push_back(node.child[0]);
  }
  leaves_.reserve(next);
  for (int j = 0; j < next; ++j) {
    if (k_ == 0)
      leaves_.push_back(Tangle::empty(ctx_));
    else
      leaves_.push_back(Tangle::from_signature(ctx_, k_, tree_->path(tree_->leaf_node(j))));
  }
}

int TangleDataStructure::size(int l) const {
  if (l < 0) return 0;
  if (l > k_) l = k_;
  const TangleDataStructure& lv = level(l);
  return (lv.lower_ ? lv.lower_->size() : 0) + static_cast<int>(lv.leaves_.size());
}

const TangleDataStructure& TangleDataStructure::level(int l) const {
  if (l < 0 || l > k_) throw DomainError("order " + std::to_string(l) + " outside the data structure");
  const TangleDataStructure* p = this;
  while (p->k_ > l) p = p->lower_.get();
  return *p;
}

int TangleDataStructure::order_of(int i) const {
  if (i < 1 || i > size()) throw DomainError("tangle index " + std::to_string(i) + " out of range");
  if (lower_ && i <= lower_->size()) return lower_->order_of(i);
  return k_;
}

Tangle TangleDataStructure::tangle(int i) const {
  if (i < 1 || i > size()) throw DomainError("tangle index " + std::to_string(i) + " out of range");
  if (lower_ && i <= lower_->size()) return lower_->tangle(i);
  return leaves_[i - 1 - (lower_ ? lower_->size() : 0)];
}

bool TangleDataStructure::contains(int i, Subset x) const { return tangle(i).contains(x); }

TangleView TangleDataStructure::view(int i) const { return tangle(i).view(); }

int TangleDataStructure::find(int l, const MembershipFn& oracle) const {
  const TangleDataStructure& lv = level(l);
  if (!lv.tree_) throw IntegrityError("find: there is no tangle of order " + std::to_string(l));
  const auto& nodes = lv.tree_->nodes;
  int v = 0;
  while (nodes[v].child[0] >= 0) {
    int c0 = nodes[v].child[0], c1 = nodes[v].child[1];
    bool a = oracle(nodes[c0].separator), b = oracle(nodes[c1].separator);
    if (a == b) throw IntegrityError("find: oracle is not a tangle (inconsistent at separator " +
                                     to_string(nodes[c0].separator) + ")");
    v = a ? c0 : c1;
  }
  return (lv.lower_ ? lv.lower_->size() : 0) + nodes[v].leaf + 1;
}

int TangleDataStructure::truncation(int i, int l) const {
  const int o = order_of(i);
  if (l >= o) return i;
  if (l <= 0) return 1;
  Tangle t = tangle(i);
  return find(l, [&t](Subset x) { return t.contains(x); });
}

std::optional<Subset> TangleDataStructure::separation(int i, int j) const {
  if (i == j) throw DomainError("separation of a tangle from itself");
  const int top = std::min(order_of(i), order_of(j));
  int l = 1;
  while (l <= top && truncation(i, l) == truncation(j, l)) ++l;
  if (l > top) return std::nullopt;  // one truncates the other
  // At order l the truncations differ but agree below: every separator
  // between them at this level is a minimum separation.
  const int a = truncation(i, l), b = truncation(j, l);
  const TangleDataStructure& lv = level(l);
  const int offset = lv.lower_ ? lv.lower_->size() : 0;
  const auto& tree = *lv.tree_;
  int va = tree.leaf_node(a - offset - 1), vb = tree.leaf_node(b - offset - 1);
  std::vector<int> up_a;
  for (int v = va; v >= 0; v = tree.nodes[v].parent) up_a.push_back(v);
  std::unordered_set<int> up_b;
  for (int v = vb; v >= 0; v = tree.nodes[v].parent) up_b.insert(v);
  int below = -1;  // child of the lowest common ancestor on a's side
  for (int v : up_a) {
    if (up_b.count(v)) break;
    below = v;
  }
  const Subset x = tree.nodes[below].separator;
  Tangle ta = lv.leaves_[a - offset - 1];
  auto z = minimal_member_in_box(*ctx_, [&ta](Subset y) { return ta.contains(y); }, Subset(), x, l - 1);
  if (!z || ctx_->kappa()(*z) != l - 1)
    throw IntegrityError("separation: least member below the distinguishing separator is not minimum");
  return z;
}

bool TangleDataStructure::level_has_exact_order(int l) const {
  if (l <= 0) return false;
  auto cat = ctx_->catalog(l - 1);
  return std::any_of(cat->entries().begin(), cat->entries().end(),
                     [l](const auto& e) { return e.base.order == l - 1; });
}

const DistinctionTree* TangleDataStructure::tree(int l) const {
  const TangleDataStructure& lv = level(l);
  return lv.tree_ ? &*lv.tree_ : nullptr;
}

std::string TangleDataStructure::to_json() const {
  nlohmann::json levels = nlohmann::json::array();
  for (int l = 0; l <= k_; ++l) {
    const DistinctionTree* t = tree(l);
    nlohmann::json lvl{{"order", l}};
    if (!t) {
      lvl["tree"] = nullptr;
    } else {
      nlohmann::json nodes = nlohmann::json::array();
      for (const auto& v : t->nodes)
        nodes.push_back({{"parent", v.parent}, {"separator", v.separator.elements()}});
      lvl["tree"] = {{"nodes", nodes}};
    }
    levels.push_back(lvl);
  }
  nlohmann::json doc{{"format", "tangle-ds"}, {"version", 1}, {"n", ctx_->n()}, {"k", k_}, {"levels", levels}};
  return doc.dump(2);
}

TangleDataStructure::Ptr TangleDataStructure::from_json(ContextPtr ctx, const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("tangle-ds", 0, e.what());
  }
  if (doc.value("format", "") != "tangle-ds" || doc.value("version", 0) != 1)
    throw ParseError("tangle-ds", 0, "unsupported document format or version");
  if (doc.at("n").get<int>() != ctx->n()) throw DomainError("tangle-ds: ground set size mismatch");
  Ptr cur;
  for (const auto& lvl : doc.at("levels")) {
    auto ds = std::shared_ptr<TangleDataStructure>(new TangleDataStructure());
    ds->ctx_ = ctx;
    ds->k_ = lvl.at("order").get<int>();
    ds->lower_ = cur;
    if (!lvl.at("tree").is_null()) {
      DistinctionTree t;
      for (const auto& v : lvl.at("tree").at("nodes")) {
        DistinctionTree::Node node;
        node.parent = v.at("parent").get<int>();
        node.separator = Subset::of(v.at("separator").get<std::vector<int>>());
        t.nodes.push_back(node);
      }
      for (std::size_t v = 1; v < t.nodes.size(); ++v) {
        auto& p = t.nodes[t.nodes[v].parent];
        p.child[p.child[0] < 0 ? 0 : 1] = static_cast<int>(v);
      }
      ds->tree_ = std::move(t);
    }
    ds->finish_level();
    cur = ds;
  }
  return cur;
}

}  // namespace tangles
