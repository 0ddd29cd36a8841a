#pragma once

// Data-parallel scans over a dense value table. Every kernel has a serial
// reference and an OpenMP version; `run_*` dispatches on Exec.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tangles/subset.hpp"

namespace tangles::kernels {

enum class Exec { kAuto, kSerial, kParallel };

// Work size (log2 of the number of visited subsets) from which kAuto
// switches to the OpenMP path.
inline constexpr int kParallelThresholdBits = 16;

struct BoxScan {
  int min = 0;
  Subset meet;  // intersection of all minimizers
  Subset join;  // union of all minimizers
  std::uint64_t minimizers = 0;
  Subset first;  // minimizer with the smallest bit pattern
};

namespace serial {
BoxScan scan_box(const std::uint16_t* table, Subset lo, Subset hi);
void superset_min(const std::uint16_t* table, Subset region, std::uint16_t* out);
std::uint64_t fill_missing(int n, const std::function<int(Subset)>& eval, std::uint16_t* table);
std::optional<std::pair<Subset, Subset>> submodularity_violation(const std::uint16_t* table, int n);
std::optional<std::pair<Subset, Subset>> posimodularity_violation(const std::uint16_t* table, int n);
}  // namespace serial

namespace omp {
BoxScan scan_box(const std::uint16_t* table, Subset lo, Subset hi);
void superset_min(const std::uint16_t* table, Subset region, std::uint16_t* out);
std::uint64_t fill_missing(int n, const std::function<int(Subset)>& eval, std::uint16_t* table);
std::optional<std::pair<Subset, Subset>> submodularity_violation(const std::uint16_t* table, int n);
std::optional<std::pair<Subset, Subset>> posimodularity_violation(const std::uint16_t* table, int n);
}  // namespace omp

BoxScan scan_box(const std::uint16_t* table, Subset lo, Subset hi, Exec exec = Exec::kAuto);

// out[A] = min { table[W] : A ⊆ W ⊆ region } for every A ⊆ region. `out` is
// indexed by subset bits and must have room for 2^n entries; entries outside
// the region are left untouched.
void superset_min(const std::uint16_t* table, Subset region, std::uint16_t* out,
                  Exec exec = Exec::kAuto);

std::uint64_t fill_missing(int n, const std::function<int(Subset)>& eval, std::uint16_t* table,
                           Exec exec = Exec::kAuto);

std::optional<std::pair<Subset, Subset>> submodularity_violation(const std::uint16_t* table, int n,
                                                                 Exec exec = Exec::kAuto);
std::optional<std::pair<Subset, Subset>> posimodularity_violation(const std::uint16_t* table, int n,
                                                                  Exec exec = Exec::kAuto);

}  // namespace tangles::kernels
