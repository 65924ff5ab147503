#pragma once

#include <optional>
#include <stdexcept>

#include "uknap/core.hpp"

namespace uknap::oracle {

enum class Method { scaled_dp, branch_and_bound };

struct OracleResult {
  Rat optimum;
  Solution witness;  // feasible packing achieving optimum
  Method method = Method::scaled_dp;
};

struct OracleLimits {
  // Largest admissible lcm of weight denominators for the integer DP.
  long long max_dp_capacity = 1000000;
  // Branch-and-bound node budget before giving up with ResourceLimit.
  long long max_nodes = 10000000;
};

struct ResourceLimit : std::runtime_error {
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

// Exact integer dynamic program over capacities 0..D, where D is the lcm of
// the weight denominators: weights scale to integers <= D and values to
// integers over the value-denominator lcm. Applicable when D fits the limit
// and the largest possible scaled gain fits comfortably in 64 bits; returns
// nullopt otherwise. O(D * n) time, O(D) space.
std::optional<OracleResult> scaled_dp_optimal(const Instance& inst,
                                              const OracleLimits& limits = {});

// Exact depth-first search over per-item copy counts, items in decreasing
// density order, pruned by the fractional relaxation bound. All arithmetic
// rational. Throws ResourceLimit when the node budget is exhausted.
OracleResult branch_and_bound_optimal(const Instance& inst, const OracleLimits& limits = {});

// scaled_dp when applicable, branch_and_bound otherwise.
OracleResult optimal(const Instance& inst, const OracleLimits& limits = {});

// optimum / alg_gain. Returns 1 when both are zero; throws std::domain_error
// when alg_gain is zero but the optimum is positive.
Rat competitive_ratio(const Rat& alg_gain, const Instance& inst, const OracleLimits& limits = {});

}  // namespace uknap::oracle
