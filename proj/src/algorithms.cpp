#include "uknap/algorithms.hpp"

#include <stdexcept>
#include <utility>

namespace uknap::algorithms {

SizeCategory categorize(const Rat& weight) {
  if (weight <= make_rat(1, 3)) return SizeCategory::good;
  if (weight < make_rat(3, 8)) return SizeCategory::small;
  if (weight <= make_rat(1, 2)) return SizeCategory::good;
  if (weight <= make_rat(5, 8)) return SizeCategory::medium;
  if (weight < make_rat(3, 4)) return SizeCategory::large;
  return SizeCategory::good;
}

namespace {

std::vector<std::pair<Item, long long>> remove_all(const Solution& k) {
  std::vector<std::pair<Item, long long>> out;
  for (const auto& [item, count] : k.entries()) out.emplace_back(item, count);
  return out;
}

// Repack to the arriving item alone, at full multiplicity.
StepAction take_alone(const Item& x, const Solution& k) {
  return {multiplicity_ll(x.weight), remove_all(k)};
}

class SimpleRule final : public OnlineAlgorithm {
 public:
  SimpleRule(bool proportional, std::string name)
      : proportional_(proportional), name_(std::move(name)) {}

  StepAction step(const Item& x, const Solution& k) override {
    if (halted_) return {};
    if (x.weight <= make_rat(1, 2)) {
      halted_ = true;
      return take_alone(x, k);
    }
    if (k.empty()) return {1, {}};
    const Item& held = k.entries().front().first;
    if (x.weight > held.weight) return {1, {{held, 1}}};
    return {};
  }

  bool proportional_only() const override { return proportional_; }
  std::string name() const override { return name_; }

 private:
  bool proportional_;
  std::string name_;
  bool halted_ = false;
};

class FocusRule final : public OnlineAlgorithm {
 public:
  StepAction step(const Item& x, const Solution& k) override {
    if (k.empty()) return {multiplicity_ll(x.weight), {}};
    if (cumulative_value(x) > k.gain()) return take_alone(x, k);
    return {};
  }

  std::string name() const override { return "focus"; }
};

class PairedStrategy final : public OnlineAlgorithm {
 public:
  explicit PairedStrategy(PairStrategy strategy) : strategy_(strategy) {}

  StepAction step(const Item& x, const Solution& k) override {
    if (halted_) return {};
    SizeCategory cx = categorize(x.weight);
    if (cx == SizeCategory::good) {
      // One good item alone is worth at least 3/4; take it and stop.
      halted_ = true;
      return take_alone(x, k);
    }
    if (k.empty()) return {multiplicity_ll(x.weight), {}};
    if (k.entries().size() == 2) {
      // Paired state: a1 keeps improving the pair, a2 is frozen here.
      return strategy_ == PairStrategy::a1 ? pair_step_a1(x, k) : StepAction{};
    }
    const Item& held = k.entries().front().first;
    SizeCategory ch = categorize(held.weight);
    return strategy_ == PairStrategy::a1 ? single_step_a1(x, cx, held, ch, k)
                                         : single_step_a2(x, cx, held, ch, k);
  }

  bool proportional_only() const override { return true; }

  std::string name() const override {
    return strategy_ == PairStrategy::a1 ? "randchoice:a1" : "randchoice:a2";
  }

 private:
  // Join the arriving item with one copy of the held item. When the held
  // item is small it sits in the knapsack twice, so one copy goes.
  static StepAction join_pair(const Solution& k, SizeCategory held_category) {
    if (held_category == SizeCategory::small) {
      return {1, {{k.entries().front().first, 1}}};
    }
    return {1, {}};
  }

  StepAction single_step_a1(const Item& x, SizeCategory cx, const Item& held, SizeCategory ch,
                            const Solution& k) const {
    bool x_small = cx == SizeCategory::small;
    bool held_small = ch == SizeCategory::small;
    if (x_small != held_small && x.weight + held.weight <= 1) {
      return join_pair(k, ch);
    }
    // A fitting pair was not available; improve the single item instead.
    if (x_small && x.weight < held.weight) return take_alone(x, k);
    if (cx == SizeCategory::medium && ch == SizeCategory::medium && x.weight > held.weight) {
      return take_alone(x, k);
    }
    if (ch == SizeCategory::large && x.weight < held.weight) return take_alone(x, k);
    return {};
  }

  StepAction single_step_a2(const Item& x, SizeCategory cx, const Item& held, SizeCategory ch,
                            const Solution& k) const {
    bool small_large_pair = (cx == SizeCategory::small && ch == SizeCategory::large) ||
                            (cx == SizeCategory::large && ch == SizeCategory::small);
    if (small_large_pair && x.weight + held.weight <= 1) {
      return join_pair(k, ch);
    }
    // Preference while single: large over small over medium, smaller within
    // large and small, bigger within medium.
    if (cx == SizeCategory::large &&
        (ch != SizeCategory::large || x.weight < held.weight)) {
      return take_alone(x, k);
    }
    if (cx == SizeCategory::small &&
        (ch == SizeCategory::medium ||
         (ch == SizeCategory::small && x.weight < held.weight))) {
      return take_alone(x, k);
    }
    if (cx == SizeCategory::medium && ch == SizeCategory::medium && x.weight > held.weight) {
      return take_alone(x, k);
    }
    return {};
  }

  StepAction pair_step_a1(const Item& x, const Solution& k) const {
    const Item& small = k.entries().front().first;
    const Item& big = k.entries().back().first;
    if (x.weight < small.weight) return {1, {{small, 1}}};
    if (x.weight > big.weight && x.weight + small.weight <= 1) return {1, {{big, 1}}};
    return {};
  }

  PairStrategy strategy_;
  bool halted_ = false;
};

class KeepFirst final : public OnlineAlgorithm {
 public:
  StepAction step(const Item& x, const Solution& k) override {
    if (k.empty()) return {multiplicity_ll(x.weight), {}};
    return {};
  }

  std::string name() const override { return "keep_first"; }
};

class KeepHeaviest final : public OnlineAlgorithm {
 public:
  StepAction step(const Item& x, const Solution& k) override {
    if (k.empty()) return {multiplicity_ll(x.weight), {}};
    if (x.weight > k.entries().front().first.weight) return take_alone(x, k);
    return {};
  }

  std::string name() const override { return "keep_heaviest"; }
};

class GreedyDensity final : public OnlineAlgorithm {
 public:
  StepAction step(const Item& x, const Solution& k) override {
    if (k.empty()) return {multiplicity_ll(x.weight), {}};
    const Item& held = k.entries().front().first;
    // x.value / x.weight > held.value / held.weight, cross-multiplied.
    if (x.value * held.weight > held.value * x.weight) return take_alone(x, k);
    return {};
  }

  std::string name() const override { return "greedy_density"; }
};

}  // namespace

std::unique_ptr<OnlineAlgorithm> simple() {
  return std::make_unique<SimpleRule>(true, "simple");
}

std::unique_ptr<OnlineAlgorithm> simple_general() {
  return std::make_unique<SimpleRule>(false, "simple_general");
}

std::unique_ptr<OnlineAlgorithm> focus() { return std::make_unique<FocusRule>(); }

std::unique_ptr<OnlineAlgorithm> randchoice_strategy(PairStrategy strategy) {
  return std::make_unique<PairedStrategy>(strategy);
}

std::unique_ptr<OnlineAlgorithm> keep_first() { return std::make_unique<KeepFirst>(); }

std::unique_ptr<OnlineAlgorithm> keep_heaviest() { return std::make_unique<KeepHeaviest>(); }

std::unique_ptr<OnlineAlgorithm> greedy_density() { return std::make_unique<GreedyDensity>(); }

MixedStrategy randchoice() {
  return {{{"randchoice:a1", make_rat(1, 2), [] { return randchoice_strategy(PairStrategy::a1); }},
           {"randchoice:a2", make_rat(1, 2),
            [] { return randchoice_strategy(PairStrategy::a2); }}}};
}

Rat expected_gain(const MixedStrategy& mix, const Instance& inst) {
  Rat total = 0;
  for (const auto& component : mix.components) {
    if (component.probability < 0) {
      throw std::invalid_argument("mixture probability is negative");
    }
    total += component.probability;
  }
  if (total != 1) throw std::invalid_argument("mixture probabilities do not sum to one");
  Rat expected = 0;
  for (const auto& component : mix.components) {
    if (component.probability == 0) continue;
    expected += component.probability * replay_gain(component.make(), inst);
  }
  return expected;
}

std::vector<std::string> algorithm_ids() {
  return {"simple",        "simple_general", "focus",          "randchoice:a1",
          "randchoice:a2", "keep_first",     "keep_heaviest",  "greedy_density"};
}

AlgorithmFactory algorithm_factory(const std::string& id) {
  if (id == "simple") return [] { return simple(); };
  if (id == "simple_general") return [] { return simple_general(); };
  if (id == "focus") return [] { return focus(); };
  if (id == "randchoice:a1") return [] { return randchoice_strategy(PairStrategy::a1); };
  if (id == "randchoice:a2") return [] { return randchoice_strategy(PairStrategy::a2); };
  if (id == "keep_first") return [] { return keep_first(); };
  if (id == "keep_heaviest") return [] { return keep_heaviest(); };
  if (id == "greedy_density") return [] { return greedy_density(); };
  std::string message = "unknown algorithm '" + id + "'; valid ids are:";
  for (const std::string& known : algorithm_ids()) message += " " + known;
  throw std::invalid_argument(message);
}

bool algorithm_is_proportional_only(const std::string& id) {
  return algorithm_factory(id)()->proportional_only();
}

}  // namespace uknap::algorithms
