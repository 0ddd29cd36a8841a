#include <algorithm>
#include <atomic>
#include <limits>

#include "tangles/kernels.hpp"

namespace tangles::kernels::serial {

BoxScan scan_box(const std::uint16_t* table, Subset lo, Subset hi) {
  BoxScan r;
  r.min = std::numeric_limits<int>::max();
  r.meet = hi;
  for_each_submask(hi - lo, [&](Subset s) {
    Subset w = lo | s;
    int v = table[w.bits];
    if (v < r.min) {
      r.min = v;
      r.meet = w;
      r.join = w;
      r.minimizers = 1;
      r.first = w;
    } else if (v == r.min) {
      r.meet &= w;
      r.join |= w;
      ++r.minimizers;
      if (w.bits < r.first.bits) r.first = w;
    }
  });
  return r;
}

void superset_min(const std::uint16_t* table, Subset region, std::uint16_t* out) {
  for_each_submask(region, [&](Subset a) { out[a.bits] = table[a.bits]; });
  region.for_each([&](int b) {
    Subset rest = region.without(b);
    std::uint64_t bit = std::uint64_t{1} << b;
    for_each_submask(rest, [&](Subset a) {
      out[a.bits] = std::min(out[a.bits], out[a.bits | bit]);
    });
  });
}

std::uint64_t fill_missing(int n, const std::function<int(Subset)>& eval, std::uint16_t* table) {
  std::uint64_t stored = 0;
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < size; ++i) {
    std::atomic_ref<std::uint16_t> slot(table[i]);
    if (slot.load(std::memory_order_acquire) != 0xFFFF) continue;
    auto v = static_cast<std::uint16_t>(eval(Subset(i)));
    std::uint16_t expected = 0xFFFF;
    if (slot.compare_exchange_strong(expected, v, std::memory_order_acq_rel)) ++stored;
  }
  return stored;
}

std::optional<std::pair<Subset, Subset>> submodularity_violation(const std::uint16_t* table, int n) {
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < size; ++x)
    for (std::uint64_t y = 0; y < size; ++y)
      if (table[x] + table[y] < table[x & y] + table[x | y]) return std::pair{Subset(x), Subset(y)};
  return std::nullopt;
}

std::optional<std::pair<Subset, Subset>> posimodularity_violation(const std::uint16_t* table, int n) {
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < size; ++x)
    for (std::uint64_t y = 0; y < size; ++y)
      if (table[x] + table[y] < table[x & ~y] + table[y & ~x]) return std::pair{Subset(x), Subset(y)};
  return std::nullopt;
}

}  // namespace tangles::kernels::serial
