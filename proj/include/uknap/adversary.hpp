#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "uknap/algorithms.hpp"
#include "uknap/bounds.hpp"
#include "uknap/core.hpp"

namespace uknap::adversary {

// Outcome of one adaptive game against a single algorithm. The optimum is
// always recomputed by the offline oracle on the sequence that was actually
// emitted, never taken on faith from the game logic.
struct AdversaryReport {
  Instance instance_emitted;
  Rat alg_gain;
  Rat opt;
  Rat ratio;  // opt / alg_gain
  std::vector<std::string> branch_log;
  // True when eps is small enough that the closed-form optimum witness of
  // the game analysis packs exactly; the report is oracle-honest either way.
  bool exact_regime = true;
};

// The two fixed proportional sequences behind the coin-flip lower bound.
// Both share the prefix (1/3+2e, 2/3-e) and have optimum exactly 1; the
// first ends with 1/3+e, the second with 2/3-2e, so no single knapsack
// content is right for both. Requires 0 < eps < 1/24.
std::pair<Instance, Instance> averaging_pair(const Rat& eps);

// Adaptive two-item-prefix game: feeds (1/3+2e, 2/3-e), then completes with
// whichever tail the current knapsack is worse for. Any algorithm ends at
// gain <= 2/3 + 4e against optimum 1. Requires 0 < eps < 1/24.
AdversaryReport proportional_det_adversary(std::unique_ptr<OnlineAlgorithm> alg, const Rat& eps);

// Expected performance of a strategy mixture when the two averaging
// sequences arrive with probability 1/2 each. Every deterministic strategy's
// expected gain is at most 5/6 + 2e.
struct YaoReport {
  Instance i1, i2;
  std::vector<std::pair<std::string, Rat>> per_strategy_expected;
  Rat mixture_expected;
  Rat expected_opt;
  Rat bound;  // 5/6 + 2e
};

YaoReport yao_experiment(const algorithms::MixedStrategy& mix, const Rat& eps);

// N items (1/a_i + e, 1/(a_i - 1)) in ascending i order. Every item's
// full-multiplicity value is exactly 1, so the repack rule keeps its first
// item, while the optimum packs one copy of each and reaches the partial sum
// S_N. Requires 0 < eps < 1/(N (a_{N+1} - 1)); throws std::domain_error.
Instance tightness_instance(int N, const Rat& eps);

// Adaptive general-valued game built from the solved lower-bound system:
// descends levels i = N..3 emitting a light item then a heavy near-full
// item, stopping with a slightly lighter replacement the first time the
// algorithm declines the heavy item, and finishing through the two-level
// base gadget otherwise. Values are the solution's value scales rounded to
// denominator 10^12. Requires N >= 3, lbs.N == N, 0 < eps < 1/48.
AdversaryReport general_adversary(std::unique_ptr<OnlineAlgorithm> alg, int N, const Rat& eps,
                                  const bounds::LowerBoundSolution& lbs);

}  // namespace uknap::adversary
