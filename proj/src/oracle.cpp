#include "uknap/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace uknap::oracle {

namespace {

Int lcm_of_denominators(const Instance& inst, bool weights) {
  Int l = 1;
  for (const Item& it : inst.items) {
    const Rat& r = weights ? it.weight : it.value;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den().get_mpz_t());
  }
  return l;
}

Rat max_density(const Instance& inst) {
  Rat best = 0;
  for (const Item& it : inst.items) {
    Rat d = it.value / it.weight;
    if (d > best) best = d;
  }
  return best;
}

OracleResult result_from_counts(const Instance& inst, const std::vector<long long>& counts,
                                Method method) {
  std::vector<Solution::Entry> entries;
  Rat optimum = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    entries.emplace_back(inst.items[i], counts[i]);
    optimum += Rat(static_cast<long>(counts[i])) * inst.items[i].value;
  }
  return {optimum, Solution(std::move(entries)), method};
}

}  // namespace

std::optional<OracleResult> scaled_dp_optimal(const Instance& inst, const OracleLimits& limits) {
  Int capacity_lcm = lcm_of_denominators(inst, /*weights=*/true);
  if (!capacity_lcm.fits_slong_p() || capacity_lcm.get_si() > limits.max_dp_capacity) {
    return std::nullopt;
  }
  long long D = capacity_lcm.get_si();

  Int value_lcm = lcm_of_denominators(inst, /*weights=*/false);
  // Any feasible gain is at most the best density (capacity is 1), so scaled
  // dp cells stay below ceil(max_density * value_lcm); insist it clears
  // 2^62 with room so additions cannot overflow.
  Rat cell_bound = max_density(inst) * Rat(value_lcm);
  Int cell_limit = Int(1) << 62;
  if (floor_rat(cell_bound) >= cell_limit) return std::nullopt;

  std::size_t n = inst.items.size();
  std::vector<long long> sw(n), sv(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat w_scaled = inst.items[i].weight * Rat(capacity_lcm);
    Rat v_scaled = inst.items[i].value * Rat(value_lcm);
    sw[i] = static_cast<long long>(Int(w_scaled.get_num()).get_si());  // exact integers
    sv[i] = static_cast<long long>(Int(v_scaled.get_num()).get_si());
  }

  // dp[c] = best scaled gain within scaled capacity c; choice[c] = item index
  // extending from c - sw[item], or -1 when dp[c] carries over from c - 1.
  std::vector<long long> dp(static_cast<std::size_t>(D) + 1, 0);
  std::vector<int> choice(static_cast<std::size_t>(D) + 1, -1);
  for (long long c = 1; c <= D; ++c) {
    long long best = dp[static_cast<std::size_t>(c - 1)];
    int pick = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (sw[i] <= c) {
        long long cand = dp[static_cast<std::size_t>(c - sw[i])] + sv[i];
        if (cand > best) {
          best = cand;
          pick = static_cast<int>(i);
        }
      }
    }
    dp[static_cast<std::size_t>(c)] = best;
    choice[static_cast<std::size_t>(c)] = pick;
  }

  std::vector<long long> counts(n, 0);
  for (long long c = D; c > 0;) {
    int pick = choice[static_cast<std::size_t>(c)];
    if (pick < 0) {
      --c;
    } else {
      ++counts[static_cast<std::size_t>(pick)];
      c -= sw[static_cast<std::size_t>(pick)];
    }
  }
  return result_from_counts(inst, counts, Method::scaled_dp);
}

namespace {

struct BbItem {
  Rat weight;
  Rat value;
  Rat density;
  std::size_t original_index;
};

class BbSearch {
 public:
  BbSearch(const std::vector<BbItem>& items, long long max_nodes)
      : items_(items), max_nodes_(max_nodes), current_(items_.size(), 0),
        best_counts_(items_.size(), 0) {}

  void run() { descend(0, Rat(1), Rat(0)); }

  const Rat& best_gain() const { return best_gain_; }
  const std::vector<long long>& best_counts() const { return best_counts_; }

 private:
  void tick() {
    if (++nodes_ > max_nodes_) {
      throw ResourceLimit("branch and bound exceeded " + std::to_string(max_nodes_) + " nodes");
    }
  }

  void improve(const Rat& gain) {
    if (gain > best_gain_) {
      best_gain_ = gain;
      best_counts_ = current_;
    }
  }

  void descend(std::size_t idx, Rat room, Rat gain) {
    tick();
    if (idx == items_.size()) {
      improve(gain);
      return;
    }
    const BbItem& it = items_[idx];
    // Everything from idx on has density <= it.density, so this level cannot
    // beat the fractional fill.
    if (gain + room * it.density <= best_gain_) {
      improve(gain);
      return;
    }
    long long kmax = 0;
    {
      Int k = floor_rat(room / it.weight);
      kmax = k.fits_slong_p() ? static_cast<long long>(k.get_si())
                              : throw ResourceLimit("copy count does not fit a machine word");
    }
    if (idx + 1 == items_.size()) {
      // last item: take as many copies as fit
      current_[idx] = kmax;
      improve(gain + Rat(static_cast<long>(kmax)) * it.value);
      current_[idx] = 0;
      return;
    }
    const Rat& next_density = items_[idx + 1].density;
    Rat k_gain = Rat(static_cast<long>(kmax)) * it.value;
    Rat k_room = room - Rat(static_cast<long>(kmax)) * it.weight;
    for (long long k = kmax; k >= 0; --k) {
      tick();
      // The bound gain + k_gain + k_room * next_density decreases as k does
      // (density order), so once it cannot beat the incumbent, no smaller k can.
      if (gain + k_gain + k_room * next_density <= best_gain_) break;
      current_[idx] = k;
      descend(idx + 1, k_room, gain + k_gain);
      k_gain -= it.value;
      k_room += it.weight;
    }
    current_[idx] = 0;
  }

  const std::vector<BbItem>& items_;
  long long max_nodes_;
  long long nodes_ = 0;
  std::vector<long long> current_;
  Rat best_gain_ = 0;
  std::vector<long long> best_counts_;
};

}  // namespace

OracleResult branch_and_bound_optimal(const Instance& inst, const OracleLimits& limits) {
  std::vector<BbItem> items;
  items.reserve(inst.items.size());
  for (std::size_t i = 0; i < inst.items.size(); ++i) {
    const Item& it = inst.items[i];
    items.push_back({it.weight, it.value, it.value / it.weight, i});
  }
  std::sort(items.begin(), items.end(), [](const BbItem& a, const BbItem& b) {
    int c = cmp(a.density, b.density);
    if (c != 0) return c > 0;
    return cmp(a.weight, b.weight) > 0;  // heavier first among equal densities
  });

  BbSearch search(items, limits.max_nodes);
  search.run();

  std::vector<long long> counts(inst.items.size(), 0);
  for (std::size_t i = 0; i < items.size(); ++i) {
    counts[items[i].original_index] += search.best_counts()[i];
  }
  return result_from_counts(inst, counts, Method::branch_and_bound);
}

OracleResult optimal(const Instance& inst, const OracleLimits& limits) {
  if (std::optional<OracleResult> dp = scaled_dp_optimal(inst, limits)) return *std::move(dp);
  return branch_and_bound_optimal(inst, limits);
}

Rat competitive_ratio(const Rat& alg_gain, const Instance& inst, const OracleLimits& limits) {
  Rat opt = optimal(inst, limits).optimum;
  if (alg_gain == 0) {
    if (opt == 0) return Rat(1);
    throw std::domain_error("competitive ratio undefined: zero gain against positive optimum");
  }
  return opt / alg_gain;
}

}  // namespace uknap::oracle
