#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>
#include <stdexcept>

#include "helpers.hpp"
#include "uknap/core.hpp"

using namespace uknap;

namespace {

// Packs one copy whenever it fits, never removes.
struct KeepFitting : OnlineAlgorithm {
  StepAction step(const Item& x, const Solution& knapsack) override {
    StepAction act;
    if (knapsack.weight() + x.weight <= 1) act.copies = 1;
    return act;
  }
  std::string name() const override { return "keep_fitting"; }
};

// Always swaps to one copy of the newest item: pack first, then drop the old
// content. The intermediate state is deliberately overweight.
struct SwapToLast : OnlineAlgorithm {
  StepAction step(const Item& x, const Solution& knapsack) override {
    StepAction act;
    act.copies = 1;
    act.remove.assign(knapsack.entries().begin(), knapsack.entries().end());
    (void)x;
    return act;
  }
  std::string name() const override { return "swap_to_last"; }
};

struct RemoveGhost : OnlineAlgorithm {
  StepAction step(const Item&, const Solution&) override {
    StepAction act;
    act.remove.push_back({Item(make_rat(1, 99), make_rat(1, 99)), 1});
    return act;
  }
  std::string name() const override { return "remove_ghost"; }
};

struct Overpacker : OnlineAlgorithm {
  StepAction step(const Item&, const Solution&) override { return {5, {}}; }
  std::string name() const override { return "overpacker"; }
};

struct ProportionalOnlyStub : OnlineAlgorithm {
  StepAction step(const Item&, const Solution&) override { return {}; }
  bool proportional_only() const override { return true; }
  std::string name() const override { return "proportional_stub"; }
};

}  // namespace

TEST_CASE("item validation and identity") {
  CHECK_THROWS_AS(Item(Rat(0), Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(Item(make_rat(3, 2), Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(Item(make_rat(1, 2), Rat(-1)), std::invalid_argument);
  Item a(make_rat(1, 2), make_rat(1, 3));
  Item b(make_rat(1, 2), make_rat(1, 3));
  Item c(make_rat(1, 2), make_rat(2, 3));
  CHECK(a == b);
  CHECK(a != c);
  CHECK(item_less(a, c));
}

TEST_CASE("multiplicity and cumulative value") {
  CHECK(multiplicity(make_rat(1, 3)) == 3);
  CHECK(multiplicity(make_rat(2, 5)) == 2);
  CHECK(multiplicity(Rat(1)) == 1);
  CHECK(multiplicity(make_rat(3, 10)) == 3);
  CHECK(cumulative_value(Item(make_rat(2, 5), make_rat(2, 5))) == make_rat(4, 5));
  CHECK(cumulative_value(Item(make_rat(3, 10), Rat(2))) == Rat(6));
}

TEST_CASE("packing a small item as often as possible nearly fills the knapsack") {
  // for 0 < w <= 1/n: w * floor(1/w) >= n/(n+1)
  constexpr int kIterations = 400;
  testutil::Splitmix rng{7};
  for (int i = 0; i < kIterations; ++i) {
    long n = rng.range(1, 20);
    long den = rng.range(1, 400);
    // w uniform-ish in (0, 1/n]: pick num in [1, floor(den/n)] after forcing den >= n
    den = std::max(den, n);
    long num = rng.range(1, den / n);
    Rat w = make_rat(num, den);
    REQUIRE(w <= make_rat(1, n));
    CHECK(w * Rat(multiplicity(w)) >= make_rat(n, n + 1));
  }
}

TEST_CASE("solution normalization and validation") {
  Item half(make_rat(1, 2), make_rat(1, 2));
  Item third(make_rat(1, 3), make_rat(1, 4));
  Solution s({{half, 1}, {third, 0}, {half, 1}});
  REQUIRE(s.entries().size() == 1);
  CHECK(s.entries()[0].second == 2);
  CHECK(s.weight() == Rat(1));
  CHECK(s.gain() == Rat(1));
  CHECK(s.count_of(half) == 2);
  CHECK(s.count_of(third) == 0);
  CHECK(s.size() == 2);
  CHECK_THROWS_AS(Solution({{half, 3}}), std::invalid_argument);   // overweight
  CHECK_THROWS_AS(Solution({{half, -1}}), std::invalid_argument);  // negative count
  CHECK(Solution() == Solution({{half, 0}}));
}

TEST_CASE("session packs then removes, checking only the final state") {
  Instance inst = Instance::proportional_of({make_rat(3, 4), make_rat(4, 5)});
  Session session(std::make_unique<SwapToLast>());
  session.feed(inst.items[0]);
  CHECK(session.gain() == make_rat(3, 4));
  // intermediate state 3/4 + 4/5 > 1 is fine; post-removal state is 4/5
  session.feed(inst.items[1]);
  CHECK(session.gain() == make_rat(4, 5));
  CHECK(session.knapsack().count_of(inst.items[1]) == 1);
  CHECK(session.trace().size() == 2);
  CHECK(session.trace()[1].removed.size() == 1);
  CHECK(session.trace()[1].after == session.knapsack());
}

TEST_CASE("illegal moves are rejected") {
  Item half(make_rat(1, 2), make_rat(1, 2));
  SUBCASE("removing an item that is not held") {
    Session session(std::make_unique<RemoveGhost>());
    CHECK_THROWS_AS(session.feed(half), IllegalMove);
  }
  SUBCASE("final state overweight") {
    Session session(std::make_unique<Overpacker>());
    CHECK_THROWS_AS(session.feed(half), IllegalMove);
  }
  SUBCASE("step index is reported") {
    Session session(std::make_unique<Overpacker>());
    try {
      session.feed(Item(make_rat(1, 10), make_rat(1, 10)));  // 5 copies fit
      session.feed(half);                                    // 5 more do not
      FAIL("expected IllegalMove");
    } catch (const IllegalMove& e) {
      CHECK(e.step_index == 1);
    }
  }
}

TEST_CASE("proportional-only algorithms reject general items") {
  Session session(std::make_unique<ProportionalOnlyStub>());
  CHECK_NOTHROW(session.feed(Item(make_rat(1, 2), make_rat(1, 2))));
  CHECK_THROWS_AS(session.feed(Item(make_rat(1, 2), make_rat(1, 3))), std::invalid_argument);
}

TEST_CASE("traced and untraced replay agree") {
  constexpr int kIterations = 60;
  testutil::Splitmix rng{20250816};
  for (int i = 0; i < kIterations; ++i) {
    std::vector<Rat> weights;
    long n = rng.range(1, 8);
    for (long j = 0; j < n; ++j) weights.push_back(make_rat(rng.range(1, 50), 50));
    Instance inst = Instance::proportional_of(weights);
    ReplayResult traced = replay(std::make_unique<KeepFitting>(), inst);
    Rat untraced = replay_gain(std::make_unique<KeepFitting>(), inst);
    CHECK(traced.gain == untraced);
    REQUIRE(traced.trace.size() == inst.items.size());
    CHECK(traced.trace.back().after.gain() == traced.gain);
  }
}

TEST_CASE("instance text format round-trips") {
  const char* text =
      "# capacity-1 instance\n"
      "proportional\n"
      "1/2\n"
      "2/3 2/3  # explicit value column is allowed when equal\n"
      "1\n";
  Instance inst = parse_instance_string(text);
  CHECK(inst.proportional);
  REQUIRE(inst.items.size() == 3);
  CHECK(inst.items[0].weight == make_rat(1, 2));
  CHECK(inst.items[2].weight == Rat(1));
  std::string serialized = serialize_instance(inst);
  Instance reparsed = parse_instance_string(serialized);
  CHECK(reparsed.proportional == inst.proportional);
  REQUIRE(reparsed.items.size() == inst.items.size());
  for (std::size_t i = 0; i < inst.items.size(); ++i) CHECK(reparsed.items[i] == inst.items[i]);
  CHECK(serialize_instance(reparsed) == serialized);

  Instance general = Instance::general_of({Item(make_rat(1, 3), make_rat(5, 7))});
  Instance back = parse_instance_string(serialize_instance(general));
  CHECK(!back.proportional);
  CHECK(back.items[0] == general.items[0]);
}

TEST_CASE("instance parse errors") {
  CHECK_THROWS_AS(parse_instance_string(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_string("1/2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_string("proportional\n1/2 1/3\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_string("general\n1/2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_string("general\n0 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_string("general\n1/2 1/3 7\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_string("proportional\nx\n"), std::invalid_argument);
}

TEST_CASE("instance validation catches a lying proportional flag") {
  Instance bad;
  bad.proportional = true;
  bad.items.push_back(Item(make_rat(1, 2), make_rat(1, 3)));
  CHECK_THROWS_AS(validate_instance(bad), std::invalid_argument);
  CHECK_NOTHROW(validate_instance(Instance::proportional_of({make_rat(1, 2)})));
}
