#pragma once

// Shared test-only utilities. The oracles here are deliberately independent
// of the library code they check: the dense scan uses hardwired integer
// arithmetic in __int128, and the knapsack enumerator is a plain exhaustive
// recursion.

#include <cstdint>
#include <utility>
#include <vector>

#include "uknap/core.hpp"
#include "uknap/rat.hpp"

namespace testutil {

// Deterministic 64-bit stream (splitmix64).
struct Splitmix {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

// Largest root of 12c^3 - 20c^2 + c + 1 (the N = 3 lower-bound polynomial
// with denominators cleared), bracketed to width 1e-6 by a descending sign
// scan over c = k/1e6. Everything fits in __int128: |Q| <= ~2e20.
inline std::pair<long long, long long> dense_scan_cubic_bracket() {
  auto q = [](long long k) -> __int128 {
    __int128 kk = k;
    return 12 * kk * kk * kk - 20 * kk * kk * 1000000 + kk * 1000000000000LL +
           static_cast<__int128>(1000000000000000000LL);
  };
  for (long long k = 1999999; k > 1000000; --k) {
    if (q(k) <= 0) return {k, k + 1};  // q(k+1) > 0, so the root is inside
  }
  return {0, 0};
}

// Exhaustive unbounded-knapsack optimum for tiny instances (capacity 1).
// Recurses over per-item copy counts bounded only by remaining capacity, so
// it is exponential and intended for <= 4 distinct items with small
// multiplicities.
inline uknap::Rat brute_force_optimum(const uknap::Instance& inst) {
  uknap::Rat best = 0;
  auto go = [&](auto&& self, std::size_t idx, const uknap::Rat& room,
                const uknap::Rat& value) -> void {
    if (value > best) best = value;
    if (idx == inst.items.size()) return;
    const uknap::Item& it = inst.items[idx];
    long max_copies = static_cast<long>(uknap::floor_rat(room / it.weight).get_si());
    for (long k = 0; k <= max_copies; ++k) {
      self(self, idx + 1, room - k * it.weight, value + k * it.value);
    }
  };
  go(go, 0, uknap::Rat(1), uknap::Rat(0));
  return best;
}

}  // namespace testutil
