#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>

#include "tangles/kernels.hpp"

namespace tangles::kernels {
namespace {

// Splits `mask` into a high part of up to `chunk_bits` bits enumerated by
// index (so OpenMP can distribute it) and a low part walked serially.
struct Split {
  std::vector<int> high;
  Subset low;
};

Split split_mask(Subset mask, int chunk_bits) {
  Split s;
  std::vector<int> ids = mask.elements();
  int t = std::min<int>(chunk_bits, static_cast<int>(ids.size()));
  s.high.assign(ids.end() - t, ids.end());
  s.low = mask;
  for (int b : s.high) s.low = s.low.without(b);
  return s;
}

Subset deposit(std::uint64_t index, const std::vector<int>& bits) {
  Subset out;
  for (std::size_t j = 0; j < bits.size(); ++j)
    if ((index >> j) & 1u) out = out.with(bits[j]);
  return out;
}

}  // namespace

namespace omp {

BoxScan scan_box(const std::uint16_t* table, Subset lo, Subset hi) {
  Split sp = split_mask(hi - lo, 10);
  const std::int64_t chunks = std::int64_t{1} << sp.high.size();
  std::vector<BoxScan> partial(chunks);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < chunks; ++c) {
    Subset base = lo | deposit(static_cast<std::uint64_t>(c), sp.high);
    partial[c] = serial::scan_box(table, base, base | sp.low);
  }
  BoxScan r = partial[0];
  for (std::int64_t c = 1; c < chunks; ++c) {
    const BoxScan& p = partial[c];
    if (p.min < r.min) {
      r = p;
    } else if (p.min == r.min) {
      r.meet &= p.meet;
      r.join |= p.join;
      r.minimizers += p.minimizers;
      if (p.first.bits < r.first.bits) r.first = p.first;
    }
  }
  return r;
}

void superset_min(const std::uint16_t* table, Subset region, std::uint16_t* out) {
  Split init = split_mask(region, 10);
  const std::int64_t init_chunks = std::int64_t{1} << init.high.size();
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < init_chunks; ++c) {
    Subset base = deposit(static_cast<std::uint64_t>(c), init.high);
    for_each_submask(init.low, [&](Subset a) { out[(base | a).bits] = table[(base | a).bits]; });
  }
  for (int b : region.elements()) {
    Split sp = split_mask(region.without(b), 10);
    const std::int64_t chunks = std::int64_t{1} << sp.high.size();
    const std::uint64_t bit = std::uint64_t{1} << b;
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
      Subset base = deposit(static_cast<std::uint64_t>(c), sp.high);
      for_each_submask(sp.low, [&](Subset a) {
        std::uint64_t i = (base | a).bits;
        out[i] = std::min(out[i], out[i | bit]);
      });
    }
  }
}

std::uint64_t fill_missing(int n, const std::function<int(Subset)>& eval, std::uint16_t* table) {
  const std::int64_t size = std::int64_t{1} << n;
  std::uint64_t stored = 0;
#pragma omp parallel for schedule(dynamic, 1024) reduction(+ : stored)
  for (std::int64_t i = 0; i < size; ++i) {
    std::atomic_ref<std::uint16_t> slot(table[i]);
    if (slot.load(std::memory_order_acquire) != 0xFFFF) continue;
    auto v = static_cast<std::uint16_t>(eval(Subset(static_cast<std::uint64_t>(i))));
    std::uint16_t expected = 0xFFFF;
    if (slot.compare_exchange_strong(expected, v, std::memory_order_acq_rel)) ++stored;
  }
  return stored;
}

namespace {
template <class Bad>
std::optional<std::pair<Subset, Subset>> first_violation(int n, Bad bad) {
  const std::int64_t size = std::int64_t{1} << n;
  std::int64_t best = size;
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best)
  for (std::int64_t x = 0; x < size; ++x) {
    if (x >= best) continue;
    for (std::int64_t y = 0; y < size; ++y)
      if (bad(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y))) {
        best = std::min(best, x);
        break;
      }
  }
  if (best == size) return std::nullopt;
  for (std::int64_t y = 0; y < size; ++y)
    if (bad(static_cast<std::uint64_t>(best), static_cast<std::uint64_t>(y)))
      return std::pair{Subset(static_cast<std::uint64_t>(best)), Subset(static_cast<std::uint64_t>(y))};
  return std::nullopt;
}
}  // namespace

std::optional<std::pair<Subset, Subset>> submodularity_violation(const std::uint16_t* t, int n) {
  return first_violation(n, [t](std::uint64_t x, std::uint64_t y) {
    return t[x] + t[y] < t[x & y] + t[x | y];
  });
}

std::optional<std::pair<Subset, Subset>> posimodularity_violation(const std::uint16_t* t, int n) {
  return first_violation(n, [t](std::uint64_t x, std::uint64_t y) {
    return t[x] + t[y] < t[x & ~y] + t[y & ~x];
  });
}

}  // namespace omp

namespace {
bool use_parallel(Exec exec, int work_bits) {
  if (exec == Exec::kSerial) return false;
  if (exec == Exec::kParallel) return true;
  return work_bits >= kParallelThresholdBits;
}
}  // namespace

BoxScan scan_box(const std::uint16_t* table, Subset lo, Subset hi, Exec exec) {
  return use_parallel(exec, (hi - lo).size()) ? omp::scan_box(table, lo, hi)
                                              : serial::scan_box(table, lo, hi);
}

void superset_min(const std::uint16_t* table, Subset region, std::uint16_t* out, Exec exec) {
  if (use_parallel(exec, region.size() + 4))
    omp::superset_min(table, region, out);
  else
    serial::superset_min(table, region, out);
}

std::uint64_t fill_missing(int n, const std::function<int(Subset)>& eval, std::uint16_t* table,
                           Exec exec) {
  return use_parallel(exec, n + 2) ? omp::fill_missing(n, eval, table)
                                   : serial::fill_missing(n, eval, table);
}

std::optional<std::pair<Subset, Subset>> submodularity_violation(const std::uint16_t* table, int n,
                                                                 Exec exec) {
  return use_parallel(exec, 2 * n) ? omp::submodularity_violation(table, n)
                                   : serial::submodularity_violation(table, n);
}

std::optional<std::pair<Subset, Subset>> posimodularity_violation(const std::uint16_t* table, int n,
                                                                  Exec exec) {
  return use_parallel(exec, 2 * n) ? omp::posimodularity_violation(table, n)
                                   : serial::posimodularity_violation(table, n);
}

}  // namespace tangles::kernels
