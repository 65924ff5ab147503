#include "uknap/adversary.hpp"

#include <stdexcept>
#include <utility>

#include "uknap/oracle.hpp"

namespace uknap::adversary {

namespace {

void require_small_eps(const Rat& eps, long max_den) {
  if (eps <= 0 || eps >= make_rat(1, max_den)) {
    throw std::domain_error("eps must lie strictly between 0 and 1/" + std::to_string(max_den));
  }
}

Rat ratio_of(const Rat& opt, const Rat& gain) {
  if (gain == 0) {
    if (opt == 0) return Rat(1);
    throw std::domain_error("adversary ratio undefined: zero gain against positive optimum");
  }
  return opt / gain;
}

}  // namespace

std::pair<Instance, Instance> averaging_pair(const Rat& eps) {
  require_small_eps(eps, 24);
  Rat small = make_rat(1, 3) + 2 * eps;
  Rat big = make_rat(2, 3) - eps;
  Instance i1 = Instance::proportional_of({small, big, make_rat(1, 3) + eps});
  Instance i2 = Instance::proportional_of({small, big, make_rat(2, 3) - 2 * eps});
  return {std::move(i1), std::move(i2)};
}

AdversaryReport proportional_det_adversary(std::unique_ptr<OnlineAlgorithm> alg, const Rat& eps) {
  require_small_eps(eps, 24);
  Rat small = make_rat(1, 3) + 2 * eps;
  Rat big = make_rat(2, 3) - eps;

  Session session(std::move(alg));
  session.feed(Item(small, small));
  session.feed(Item(big, big));

  AdversaryReport report;
  Rat tail;
  if (session.knapsack().count_of(Item(big, big)) >= 1) {
    // the algorithm holds the big item, so starve it of the matching filler
    tail = make_rat(2, 3) - 2 * eps;
    report.branch_log.push_back("big item held -> tail 2/3-2e");
  } else {
    tail = make_rat(1, 3) + eps;
    report.branch_log.push_back("big item not held -> tail 1/3+e");
  }
  session.feed(Item(tail, tail));

  report.instance_emitted = Instance::proportional_of({small, big, tail});
  report.alg_gain = session.gain();
  report.opt = oracle::optimal(report.instance_emitted).optimum;
  report.ratio = ratio_of(report.opt, report.alg_gain);
  return report;
}

YaoReport yao_experiment(const algorithms::MixedStrategy& mix, const Rat& eps) {
  auto [i1, i2] = averaging_pair(eps);
  YaoReport report;
  report.i1 = i1;
  report.i2 = i2;
  for (const auto& component : mix.components) {
    Rat on_i1 = replay_gain(component.make(), i1);
    Rat on_i2 = replay_gain(component.make(), i2);
    report.per_strategy_expected.emplace_back(component.label, (on_i1 + on_i2) / 2);
  }
  report.mixture_expected =
      (algorithms::expected_gain(mix, i1) + algorithms::expected_gain(mix, i2)) / 2;
  report.expected_opt =
      (oracle::optimal(i1).optimum + oracle::optimal(i2).optimum) / 2;
  report.bound = make_rat(5, 6) + 2 * eps;
  return report;
}

Instance tightness_instance(int N, const Rat& eps) {
  if (N < 1) throw std::invalid_argument("tightness_instance needs N >= 1");
  std::vector<Int> a = bounds::sylvester_table(N + 1);
  Rat limit = make_rat(Int(1), Int(N) * (a[N] - 1));
  if (eps <= 0 || eps >= limit) {
    throw std::domain_error("eps must lie strictly between 0 and 1/(N (a_{N+1} - 1))");
  }
  std::vector<Item> items;
  for (int i = 1; i <= N; ++i) {
    items.emplace_back(make_rat(Int(1), a[i - 1]) + eps, make_rat(Int(1), a[i - 1] - 1));
  }
  return Instance::general_of(std::move(items));
}

namespace {

// Round to the nearest multiple of 1/den (ties upward); the game's values
// only need to be near the solved scales, but they must be modest rationals
// so the oracle's integer grids stay small.
Rat round_to_denominator(const Rat& value, const Int& den) {
  Int num = floor_rat(value * Rat(den) + make_rat(1, 2));
  return make_rat(num, den);
}

}  // namespace

AdversaryReport general_adversary(std::unique_ptr<OnlineAlgorithm> alg, int N, const Rat& eps,
                                  const bounds::LowerBoundSolution& lbs) {
  if (N < 3) throw std::invalid_argument("general_adversary needs N >= 3");
  if (lbs.N != N) {
    throw std::invalid_argument("lower-bound solution was computed for a different depth");
  }
  require_small_eps(eps, 48);

  std::vector<Int> a = bounds::sylvester_table(N + 1);
  Int value_den("1000000000000");
  std::vector<Rat> v(static_cast<std::size_t>(N));  // v[i] is the scale for level i+1
  for (int i = 0; i < N; ++i) {
    v[static_cast<std::size_t>(i)] =
        round_to_denominator(lbs.v[static_cast<std::size_t>(i)], value_den);
    if (v[static_cast<std::size_t>(i)] <= 0) {
      throw std::logic_error("rounded value scale is not positive");
    }
  }

  // Per level i = 3..N: a light item, a heavy item that excludes it, and the
  // slightly lighter stop replacement.
  auto light = [&](int i) {
    return Item(make_rat(Int(1), a[i - 1]) + 2 * eps,
                v[static_cast<std::size_t>(i - 1)] / Rat(a[i - 1] - 1));
  };
  auto heavy = [&](int i) {
    return Item(1 - make_rat(Int(1), a[i - 1]) - eps, v[static_cast<std::size_t>(i - 2)]);
  };
  auto light_stop = [&](int i) {
    return Item(make_rat(Int(1), a[i - 1]) + eps,
                v[static_cast<std::size_t>(i - 1)] / Rat(a[i - 1] - 1));
  };
  Item base_light(make_rat(1, 3) + 2 * eps, v[0] / 2);
  Item base_heavy(make_rat(2, 3) - eps, v[1]);
  Item base_light_stop(make_rat(1, 3) + eps, v[0] / 2);
  Item base_filler(make_rat(1, 2) + eps, v[1]);

  // The game only works because a heavy item never coexists with the light
  // item of its own level or the next one down; check the exclusions exactly.
  for (int i = N; i >= 3; --i) {
    if (heavy(i).weight + light(i).weight <= 1) {
      throw std::logic_error("level items do not exclude each other");
    }
    const Item next = i > 3 ? light(i - 1) : base_light;
    if (heavy(i).weight + next.weight <= 1) {
      throw std::logic_error("adjacent level items do not exclude each other");
    }
  }
  if (base_light.weight + base_heavy.weight <= 1) {
    throw std::logic_error("base items do not exclude each other");
  }

  AdversaryReport report;
  report.exact_regime =
      Rat(static_cast<long>(2 * N - 1)) * eps <= make_rat(Int(1), a[N] - 1);

  Session session(std::move(alg));
  std::vector<Item> emitted;
  auto feed = [&](const Item& item) {
    session.feed(item);
    emitted.push_back(item);
  };

  bool stopped = false;
  for (int i = N; i >= 3 && !stopped; --i) {
    feed(light(i));
    feed(heavy(i));
    if (session.knapsack().count_of(heavy(i)) >= 1) {
      report.branch_log.push_back("level " + std::to_string(i) + ": heavy held, descend");
    } else {
      feed(light_stop(i));
      report.branch_log.push_back("level " + std::to_string(i) + ": heavy declined, stop");
      stopped = true;
    }
  }
  if (!stopped) {
    feed(base_light);
    if (session.knapsack().count_of(base_light) >= 1) {
      report.branch_log.push_back("base: light held, continue");
      feed(base_heavy);
      if (session.knapsack().count_of(base_heavy) >= 1) {
        report.branch_log.push_back("base: heavy held, finish with the half filler");
        feed(base_filler);
      } else {
        report.branch_log.push_back("base: heavy declined, finish with the lighter third");
        feed(base_light_stop);
      }
    } else {
      report.branch_log.push_back("base: light declined, finish with the half filler");
      feed(base_filler);
    }
  }

  report.instance_emitted = Instance::general_of(std::move(emitted));
  report.alg_gain = session.gain();
  report.opt = oracle::optimal(report.instance_emitted).optimum;
  report.ratio = ratio_of(report.opt, report.alg_gain);
  return report;
}

}  // namespace uknap::adversary
