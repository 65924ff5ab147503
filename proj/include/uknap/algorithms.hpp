#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "uknap/core.hpp"

namespace uknap::algorithms {

// Weight classes used by the paired strategies. Any `good` item packed to
// full multiplicity fills at least 3/4 of the knapsack by weight, so on
// proportional instances one such item already secures the target ratio.
// The others partition (1/3, 3/4): small (1/3, 3/8), medium (1/2, 5/8],
// large (5/8, 3/4), and the leftover band [3/8, 1/2] is good again.
enum class SizeCategory { good, small, medium, large };

SizeCategory categorize(const Rat& weight);

// The two deterministic halves of the coin-flip strategy. They differ only
// in which pairs they form and which single item they prefer to hold:
// a1 pairs a small with any fitting big item and keeps improving the pair,
// a2 pairs a small only with a large item and then freezes, preferring to
// hold large > small > medium while single.
enum class PairStrategy { a1, a2 };

// Proportional-only rule: the first item of weight <= 1/2 is packed to full
// multiplicity and kept forever; before that, hold one copy of the heaviest
// big item seen.
std::unique_ptr<OnlineAlgorithm> simple();
// Same decision rule, accepted on general instances (values ignored).
std::unique_ptr<OnlineAlgorithm> simple_general();
// General rule: repack to the arriving item whenever its full-multiplicity
// value strictly beats the current gain.
std::unique_ptr<OnlineAlgorithm> focus();
std::unique_ptr<OnlineAlgorithm> randchoice_strategy(PairStrategy strategy);
// Baselines: pack the first item and stop; hold the strictly heaviest item;
// hold the strictly densest item.
std::unique_ptr<OnlineAlgorithm> keep_first();
std::unique_ptr<OnlineAlgorithm> keep_heaviest();
std::unique_ptr<OnlineAlgorithm> greedy_density();

using AlgorithmFactory = std::function<std::unique_ptr<OnlineAlgorithm>()>;

// A randomized algorithm as an explicit distribution over deterministic ones.
struct MixedStrategy {
  struct Component {
    std::string label;
    Rat probability;
    AlgorithmFactory make;
  };
  std::vector<Component> components;
};

// Uniform coin flip between the two paired strategies.
MixedStrategy randchoice();

// Exact expected gain of a mixture on one instance. Probabilities must be
// nonnegative and sum to one (throws std::invalid_argument otherwise).
Rat expected_gain(const MixedStrategy& mix, const Instance& inst);

// Registry of every deterministic algorithm, keyed by its name() string.
std::vector<std::string> algorithm_ids();
AlgorithmFactory algorithm_factory(const std::string& id);  // throws on unknown id
bool algorithm_is_proportional_only(const std::string& id);

}  // namespace uknap::algorithms
