#include "tangles/subset.hpp"

#include <algorithm>

namespace tangles {

bool element_order_less(Subset a, Subset b) {
  // Compare sorted element lists lexicographically; a proper prefix is smaller.
  std::uint64_t x = a.bits, y = b.bits;
  while (x && y) {
    int i = std::countr_zero(x), j = std::countr_zero(y);
    if (i != j) return i < j;
    x &= x - 1;
    y &= y - 1;
  }
  return x == 0 && y != 0;
}

std::string to_string(Subset x) {
  std::string s = "{";
  bool first = true;
  x.for_each([&](int i) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  });
  return s + "}";
}

std::vector<Subset> small_subsets(Subset mask, int k) {
  std::vector<int> ids = mask.elements();
  std::vector<Subset> out;
  out.push_back(Subset());
  std::vector<Subset> layer{Subset()};
  std::vector<int> last{-1};
  for (int size = 1; size <= k && size <= static_cast<int>(ids.size()); ++size) {
    std::vector<Subset> next;
    std::vector<int> next_last;
    for (std::size_t a = 0; a < layer.size(); ++a) {
      for (int p = last[a] + 1; p < static_cast<int>(ids.size()); ++p) {
        next.push_back(layer[a].with(ids[p]));
        next_last.push_back(p);
      }
    }
    std::vector<std::size_t> order(next.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t u, std::size_t v) { return next[u].bits < next[v].bits; });
    layer.clear();
    last.clear();
    for (std::size_t i : order) {
      layer.push_back(next[i]);
      last.push_back(next_last[i]);
      out.push_back(next[i]);
    }
  }
  return out;
}

GroundSet::GroundSet(int n_, std::vector<std::string> labels_) : n(n_), labels(std::move(labels_)) {}

std::string GroundSet::label(int id) const {
  if (id >= 0 && id < static_cast<int>(labels.size()) && !labels[id].empty()) return labels[id];
  return std::to_string(id);
}

}  // namespace tangles
