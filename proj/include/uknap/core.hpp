#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uknap/rat.hpp"

namespace uknap {

// One item type of the online unbounded knapsack (capacity 1, copies allowed).
// Two items are the same item iff both weight and value match exactly.
struct Item {
  Rat weight;  // in (0, 1]
  Rat value;   // >= 0

  Item(Rat w, Rat v);  // validates the ranges, throws std::invalid_argument
};

bool operator==(const Item& a, const Item& b);
bool operator!=(const Item& a, const Item& b);
bool item_less(const Item& a, const Item& b);  // by (weight, value)

// floor(1/w): how many copies of an item of weight w fit in the knapsack.
Int multiplicity(const Rat& weight);
long long multiplicity_ll(const Rat& weight);  // throws std::overflow_error if huge
// v * floor(1/w): gain from packing one item type as often as possible.
Rat cumulative_value(const Item& item);

struct Instance {
  std::vector<Item> items;   // arrival order
  bool proportional = false; // every item has value == weight

  static Instance proportional_of(const std::vector<Rat>& weights);
  static Instance general_of(std::vector<Item> items);
};

// Throws std::invalid_argument if the proportional flag is set but some item
// has value != weight.
void validate_instance(const Instance& inst);

// A feasible knapsack content: item counts with total weight <= 1. The
// constructor sorts, merges duplicates, drops zero counts, and validates
// (negative counts or overweight throw std::invalid_argument).
class Solution {
 public:
  using Entry = std::pair<Item, long long>;

  Solution() = default;
  explicit Solution(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  const Rat& weight() const { return weight_; }
  const Rat& gain() const { return gain_; }
  long long count_of(const Item& item) const;
  // Total number of packed copies across item types.
  long long size() const;

 private:
  std::vector<Entry> entries_;
  Rat weight_ = 0;
  Rat gain_ = 0;
};

bool operator==(const Solution& a, const Solution& b);

// What an algorithm does with one arriving item: first pack `copies` of it,
// then remove the given multiset. Packing copies of any *other* item is not
// expressible, which matches the move legality rules. The intermediate state
// after packing may exceed capacity; only the post-removal knapsack must be
// feasible.
struct StepAction {
  long long copies = 0;
  std::vector<std::pair<Item, long long>> remove;
};

class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;
  // Decide the move for arriving item x given the current knapsack.
  // Implementations are stateful and single-use: one instance per replay.
  virtual StepAction step(const Item& x, const Solution& knapsack) = 0;
  // True for algorithms whose rules are only defined on proportional
  // instances; the session then rejects any item with value != weight.
  virtual bool proportional_only() const { return false; }
  virtual std::string name() const = 0;
};

struct IllegalMove : std::runtime_error {
  std::size_t step_index;
  IllegalMove(std::size_t idx, const std::string& what);
};

struct TraceStep {
  std::size_t item_index;
  long long copies;
  std::vector<std::pair<Item, long long>> removed;  // normalized multiset
  Solution after;
};
using Trace = std::vector<TraceStep>;

// Steppable replay: feed items one at a time and inspect the knapsack in
// between, which is what the adaptive adversaries do. Enforces move legality
// (IllegalMove) and, for proportional-only algorithms, item shape
// (std::invalid_argument).
class Session {
 public:
  explicit Session(std::unique_ptr<OnlineAlgorithm> alg, bool record_trace = true);

  void feed(const Item& x);
  const Solution& knapsack() const { return current_; }
  const Rat& gain() const { return current_.gain(); }
  const Trace& trace() const;
  std::size_t steps_fed() const { return fed_; }
  OnlineAlgorithm& algorithm() { return *alg_; }

 private:
  std::unique_ptr<OnlineAlgorithm> alg_;
  Solution current_;
  Trace trace_;
  bool record_trace_;
  std::size_t fed_ = 0;
};

struct ReplayResult {
  Rat gain;
  Trace trace;
};

ReplayResult replay(std::unique_ptr<OnlineAlgorithm> alg, const Instance& inst);
// Same run without materializing the trace; agrees with replay() exactly.
Rat replay_gain(std::unique_ptr<OnlineAlgorithm> alg, const Instance& inst);

// Instance text format: first content line is "proportional" or "general",
// then one item per line as "<weight>" (proportional only) or
// "<weight> <value>", each rational written as p/q or an integer. '#' starts
// a comment. Round-trips bit-exactly through serialize_instance.
Instance parse_instance(std::istream& in);
Instance parse_instance_string(const std::string& text);
std::string serialize_instance(const Instance& inst);

}  // namespace uknap
