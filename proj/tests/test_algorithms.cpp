#include "uknap/algorithms.hpp"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "helpers.hpp"
#include "uknap/core.hpp"

using namespace uknap;
using namespace uknap::algorithms;

namespace {

Rat run(std::unique_ptr<OnlineAlgorithm> alg, const std::vector<Rat>& weights) {
  return replay_gain(std::move(alg), Instance::proportional_of(weights));
}

Rat random_weight(testutil::Splitmix& rng) {
  long den = rng.range(2, 360);
  long num = rng.range(1, den);
  return make_rat(num, den);
}

// Test-only deterministic strategies for the mixture accounting check.
class TakeFirst final : public OnlineAlgorithm {
 public:
  StepAction step(const Item& x, const Solution& k) override {
    if (k.empty()) return {multiplicity_ll(x.weight), {}};
    return {};
  }
  std::string name() const override { return "take_first"; }
};

class SkipFirst final : public OnlineAlgorithm {
 public:
  StepAction step(const Item& x, const Solution& k) override {
    ++seen_;
    if (seen_ >= 2 && k.empty()) return {multiplicity_ll(x.weight), {}};
    return {};
  }
  std::string name() const override { return "skip_first"; }

 private:
  int seen_ = 0;
};

}  // namespace

TEST_CASE("weight classes") {
  CHECK(categorize(make_rat(1, 5)) == SizeCategory::good);
  CHECK(categorize(make_rat(1, 3)) == SizeCategory::good);
  CHECK(categorize(make_rat(7, 20)) == SizeCategory::small);
  CHECK(categorize(make_rat(3, 8)) == SizeCategory::good);
  CHECK(categorize(make_rat(2, 5)) == SizeCategory::good);
  CHECK(categorize(make_rat(1, 2)) == SizeCategory::good);
  CHECK(categorize(make_rat(3, 5)) == SizeCategory::medium);
  CHECK(categorize(make_rat(5, 8)) == SizeCategory::medium);
  CHECK(categorize(make_rat(7, 10)) == SizeCategory::large);
  CHECK(categorize(make_rat(749, 1000)) == SizeCategory::large);
  CHECK(categorize(make_rat(3, 4)) == SizeCategory::good);
  CHECK(categorize(make_rat(9, 10)) == SizeCategory::good);
  CHECK(categorize(make_rat(1, 1)) == SizeCategory::good);
}

TEST_CASE("first-small rule") {
  // a small item is taken at full multiplicity and kept forever
  CHECK(run(simple(), {make_rat(2, 5)}) == make_rat(4, 5));
  CHECK(run(simple(), {make_rat(2, 5), make_rat(9, 10)}) == make_rat(4, 5));
  CHECK(run(simple(), {make_rat(2, 5), make_rat(1, 2)}) == make_rat(4, 5));
  // big items: strictly heavier swaps in
  CHECK(run(simple(), {make_rat(3, 4), make_rat(4, 5)}) == make_rat(4, 5));
  CHECK(run(simple(), {make_rat(3, 4), make_rat(7, 10)}) == make_rat(3, 4));
  CHECK(run(simple(), {make_rat(53, 150), make_rat(197, 300), make_rat(103, 300)}) ==
        make_rat(53, 75));

  // the rule is only defined when value == weight
  Session s(simple());
  CHECK_THROWS_AS(s.feed(Item(make_rat(1, 2), make_rat(1, 1))), std::invalid_argument);
  CHECK(simple()->proportional_only());
  CHECK_FALSE(simple_general()->proportional_only());
}

TEST_CASE("general variant matches on proportional input") {
  testutil::Splitmix rng{0x5eedf00d12345678ull};
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Rat> weights;
    long n = rng.range(1, 8);
    for (long i = 0; i < n; ++i) weights.push_back(random_weight(rng));
    Instance inst = Instance::proportional_of(weights);
    Rat a = replay_gain(simple(), inst);
    Rat b = replay_gain(simple_general(), inst);
    CHECK(a == b);
  }
}

TEST_CASE("repack-on-improvement rule") {
  Item coarse(make_rat(3, 5), make_rat(10, 1));   // full multiplicity worth 10
  Item fine(make_rat(3, 10), make_rat(4, 1));     // full multiplicity worth 12
  CHECK(replay_gain(focus(), Instance::general_of({coarse, fine})) == 12);
  CHECK(replay_gain(focus(), Instance::general_of({fine, coarse})) == 12);

  // ties keep the incumbent
  Item first(make_rat(1, 2), make_rat(3, 1));
  Item second(make_rat(1, 3), make_rat(2, 1));  // also worth 6 in total
  ReplayResult r = replay(focus(), Instance::general_of({first, second}));
  CHECK(r.gain == 6);
  CHECK(r.trace.back().after.count_of(first) == 2);
  CHECK(r.trace.back().after.count_of(second) == 0);
}

TEST_CASE("repack rule never trails the first-small rule on proportional input") {
  testutil::Splitmix rng{0xabcdef0123456789ull};
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Rat> weights;
    long n = rng.range(1, 8);
    for (long i = 0; i < n; ++i) weights.push_back(random_weight(rng));
    Instance inst = Instance::proportional_of(weights);
    CHECK(replay_gain(focus(), inst) >= replay_gain(simple(), inst));
  }
}

TEST_CASE("paired strategies on fixed sequences") {
  auto a1 = [] { return randchoice_strategy(PairStrategy::a1); };
  auto a2 = [] { return randchoice_strategy(PairStrategy::a2); };

  // small then fitting large: both pair up
  CHECK(run(a1(), {make_rat(7, 20), make_rat(63, 100)}) == make_rat(49, 50));
  CHECK(run(a2(), {make_rat(7, 20), make_rat(63, 100)}) == make_rat(49, 50));
  // a lone large item
  CHECK(run(a1(), {make_rat(13, 20)}) == make_rat(13, 20));
  CHECK(run(a2(), {make_rat(13, 20)}) == make_rat(13, 20));

  // small, unfitting large, then a smaller small that completes the tiling:
  // the halves diverge, and their average stays within the coin-flip bound
  std::vector<Rat> seq{make_rat(53, 150), make_rat(197, 300), make_rat(103, 300)};
  CHECK(run(a1(), seq) == make_rat(103, 150));
  CHECK(run(a2(), seq) == 1);
  CHECK(expected_gain(randchoice(), Instance::proportional_of(seq)) == make_rat(253, 300));

  // mirror sequence ending in a slightly smaller large item
  std::vector<Rat> seq2{make_rat(53, 150), make_rat(197, 300), make_rat(97, 150)};
  CHECK(run(a1(), seq2) == 1);
  CHECK(run(a2(), seq2) == make_rat(97, 150));
  CHECK(expected_gain(randchoice(), Instance::proportional_of(seq2)) == make_rat(247, 300));

  // single-item preference differs: a1 trades large for medium, a2 does not
  CHECK(run(a1(), {make_rat(37, 50), make_rat(3, 5)}) == make_rat(3, 5));
  CHECK(run(a2(), {make_rat(37, 50), make_rat(3, 5)}) == make_rat(37, 50));
  CHECK(run(a1(), {make_rat(3, 5), make_rat(37, 50)}) == make_rat(3, 5));
  CHECK(run(a2(), {make_rat(3, 5), make_rat(37, 50)}) == make_rat(37, 50));

  // a medium can pair under a1 but not under a2
  CHECK(run(a1(), {make_rat(37, 100), make_rat(5, 8)}) == make_rat(199, 200));
  CHECK(run(a2(), {make_rat(37, 100), make_rat(5, 8)}) == make_rat(37, 50));
}

TEST_CASE("second strategy freezes after pairing") {
  std::vector<Rat> probe{make_rat(17, 50), make_rat(13, 20), make_rat(33, 50)};
  // a1 keeps improving the pair, a2 ignores everything after pairing
  CHECK(run(randchoice_strategy(PairStrategy::a1), probe) == 1);
  CHECK(run(randchoice_strategy(PairStrategy::a2), probe) == make_rat(99, 100));

  // ... but a good item still ends the run for both
  std::vector<Rat> with_good = probe;
  with_good.push_back(make_rat(4, 5));
  CHECK(run(randchoice_strategy(PairStrategy::a1), with_good) == make_rat(4, 5));
  CHECK(run(randchoice_strategy(PairStrategy::a2), with_good) == make_rat(4, 5));
}

TEST_CASE("all-medium sequences keep the heaviest medium") {
  testutil::Splitmix rng{0x0f0f0f0f0f0f0f0full};
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Rat> weights;
    long n = rng.range(1, 6);
    Rat heaviest = 0;
    for (long i = 0; i < n; ++i) {
      // medium band (1/2, 5/8]
      long num = rng.range(401, 500);
      Rat w = make_rat(num, 800);
      weights.push_back(w);
      heaviest = std::max(heaviest, w);
    }
    for (PairStrategy strat : {PairStrategy::a1, PairStrategy::a2}) {
      ReplayResult r = replay(randchoice_strategy(strat), Instance::proportional_of(weights));
      CHECK(r.gain == heaviest);
      CHECK(r.trace.back().after.entries().size() == 1);
    }
  }
}

TEST_CASE("a good item always ends the run at three quarters or better") {
  testutil::Splitmix rng{0x7777777712121212ull};
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Rat> weights;
    long prefix = rng.range(0, 4);
    for (long i = 0; i < prefix; ++i) {
      // non-good bands only: small, medium, large
      switch (rng.range(0, 2)) {
        case 0: weights.push_back(make_rat(rng.range(1001, 1124), 3000)); break;  // small
        case 1: weights.push_back(make_rat(rng.range(401, 500), 800)); break;     // medium
        default: weights.push_back(make_rat(rng.range(501, 599), 800)); break;    // large
      }
    }
    Rat good_weight = make_rat(rng.range(760, 1000), 1000);  // in [3/4, 1]
    weights.push_back(good_weight);
    long tail = rng.range(0, 3);
    for (long i = 0; i < tail; ++i) weights.push_back(random_weight(rng));
    Rat expect = cumulative_value(Item(good_weight, good_weight));
    for (PairStrategy strat : {PairStrategy::a1, PairStrategy::a2}) {
      Rat g = run(randchoice_strategy(strat), weights);
      CHECK(g == expect);
      CHECK(g >= make_rat(3, 4));
    }
  }
}

TEST_CASE("mixture accounting") {
  MixedStrategy mix{{{"take_first", make_rat(1, 2), [] { return std::make_unique<TakeFirst>(); }},
                     {"skip_first", make_rat(1, 2), [] { return std::make_unique<SkipFirst>(); }}}};
  Instance inst = Instance::proportional_of({make_rat(2, 3), make_rat(23, 48)});
  // 1/2 * 2/3 + 1/2 * 23/24
  CHECK(expected_gain(mix, inst) == make_rat(13, 16));

  MixedStrategy bad{{{"a", make_rat(1, 3), [] { return std::make_unique<TakeFirst>(); }},
                     {"b", make_rat(1, 3), [] { return std::make_unique<TakeFirst>(); }}}};
  CHECK_THROWS_AS(expected_gain(bad, inst), std::invalid_argument);
  MixedStrategy negative{
      {{"a", make_rat(3, 2), [] { return std::make_unique<TakeFirst>(); }},
       {"b", make_rat(-1, 2), [] { return std::make_unique<TakeFirst>(); }}}};
  CHECK_THROWS_AS(expected_gain(negative, inst), std::invalid_argument);

  MixedStrategy coin = randchoice();
  REQUIRE(coin.components.size() == 2);
  CHECK(coin.components[0].probability == make_rat(1, 2));
  CHECK(coin.components[0].make()->name() == coin.components[0].label);
  CHECK(coin.components[1].make()->name() == coin.components[1].label);
}

TEST_CASE("baseline rules") {
  Item light(make_rat(1, 4), make_rat(1, 10));
  Item heavy(make_rat(9, 10), make_rat(1, 5));
  Item dense(make_rat(1, 2), make_rat(2, 1));

  CHECK(replay_gain(keep_first(), Instance::general_of({light, heavy, dense})) ==
        make_rat(2, 5));  // 4 copies of the first item
  CHECK(replay_gain(keep_heaviest(), Instance::general_of({light, heavy, dense})) ==
        make_rat(1, 5));
  CHECK(replay_gain(keep_heaviest(), Instance::general_of({heavy, heavy})) == make_rat(1, 5));
  CHECK(replay_gain(greedy_density(), Instance::general_of({light, heavy, dense})) == 4);
  // equal density does not displace
  CHECK(replay_gain(greedy_density(),
                    Instance::general_of({Item(make_rat(1, 2), make_rat(1, 2)),
                                          Item(make_rat(1, 4), make_rat(1, 4))})) == 1);
}

TEST_CASE("registry") {
  std::vector<std::string> ids = algorithm_ids();
  REQUIRE(ids.size() == 8);
  for (const std::string& id : ids) {
    CHECK(algorithm_factory(id)()->name() == id);
  }
  CHECK(algorithm_is_proportional_only("simple"));
  CHECK(algorithm_is_proportional_only("randchoice:a1"));
  CHECK(algorithm_is_proportional_only("randchoice:a2"));
  CHECK_FALSE(algorithm_is_proportional_only("focus"));
  CHECK_FALSE(algorithm_is_proportional_only("simple_general"));
  CHECK_FALSE(algorithm_is_proportional_only("keep_first"));
  CHECK_THROWS_WITH_AS(algorithm_factory("does_not_exist"),
                       doctest::Contains("valid ids"), std::invalid_argument);
}
