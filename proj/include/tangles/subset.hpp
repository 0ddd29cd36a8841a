#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tangles {

inline constexpr int kMaxElements = 64;

// Bit vector over dense element ids 0..n-1.
struct Subset {
  std::uint64_t bits = 0;

  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t b) : bits(b) {}

  static constexpr Subset singleton(int id) { return Subset(std::uint64_t{1} << id); }
  static constexpr Subset full(int n) {
    return Subset(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }
  static Subset of(std::initializer_list<int> ids) {
    Subset s;
    for (int i : ids) s.bits |= std::uint64_t{1} << i;
    return s;
  }
  static Subset of(const std::vector<int>& ids) {
    Subset s;
    for (int i : ids) s.bits |= std::uint64_t{1} << i;
    return s;
  }

  constexpr bool empty() const { return bits == 0; }
  constexpr int size() const { return std::popcount(bits); }
  constexpr bool contains(int id) const { return (bits >> id) & 1u; }
  constexpr bool subset_of(Subset o) const { return (bits & ~o.bits) == 0; }
  constexpr bool proper_subset_of(Subset o) const { return subset_of(o) && bits != o.bits; }
  constexpr bool intersects(Subset o) const { return (bits & o.bits) != 0; }
  constexpr int lowest() const { return std::countr_zero(bits); }

  constexpr Subset with(int id) const { return Subset(bits | (std::uint64_t{1} << id)); }
  constexpr Subset without(int id) const { return Subset(bits & ~(std::uint64_t{1} << id)); }

  constexpr Subset operator|(Subset o) const { return Subset(bits | o.bits); }
  constexpr Subset operator&(Subset o) const { return Subset(bits & o.bits); }
  constexpr Subset operator-(Subset o) const { return Subset(bits & ~o.bits); }
  constexpr Subset operator^(Subset o) const { return Subset(bits ^ o.bits); }
  Subset& operator|=(Subset o) { bits |= o.bits; return *this; }
  Subset& operator&=(Subset o) { bits &= o.bits; return *this; }
  Subset& operator-=(Subset o) { bits &= ~o.bits; return *this; }

  constexpr bool operator==(const Subset&) const = default;
  constexpr auto operator<=>(const Subset&) const = default;

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits; b; b &= b - 1) f(std::countr_zero(b));
  }
};

// Complement relative to an n-element ground set.
constexpr Subset complement(Subset x, int n) { return Subset::full(n) - x; }

// Lexicographic order on sorted element lists; used wherever output order
// must not depend on how sets were produced.
bool element_order_less(Subset a, Subset b);

std::string to_string(Subset x);

// Enumerate every subset of `mask` (including empty and mask itself).
template <class F>
void for_each_submask(Subset mask, F&& f) {
  std::uint64_t m = mask.bits, s = 0;
  while (true) {
    f(Subset(s));
    if (s == m) break;
    s = (s - m) & m;
  }
}

// Enumerate all subsets of `mask` with at most `k` elements, by size then
// ascending bit pattern.
std::vector<Subset> small_subsets(Subset mask, int k);

struct GroundSet {
  int n = 0;
  std::vector<std::string> labels;  // optional, empty or size n

  GroundSet() = default;
  explicit GroundSet(int n_, std::vector<std::string> labels_ = {});

  Subset universe() const { return Subset::full(n); }
  Subset complement(Subset x) const { return tangles::complement(x, n); }
  bool owns(Subset x) const { return x.subset_of(universe()); }
  std::string label(int id) const;
};

}  // namespace tangles

template <>
struct std::hash<tangles::Subset> {
  std::size_t operator()(tangles::Subset s) const noexcept {
    std::uint64_t x = s.bits * 0x9E3779B97F4A7C15ull;
    return static_cast<std::size_t>(x ^ (x >> 29));
  }
};
