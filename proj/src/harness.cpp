#include "uknap/harness.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <istream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "uknap/adversary.hpp"
#include "uknap/algorithms.hpp"
#include "uknap/bounds.hpp"

namespace uknap::harness {

namespace alg = uknap::algorithms;

namespace {

// Fixed 64-bit mix; the generated streams are part of the reproducibility
// contract, so no std:: engine whose wording could drift between platforms.
struct SplitMix {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform-ish in [0, n), n > 0; modulo bias is irrelevant here, determinism
  // is what matters
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

SplitMix stream_for(std::uint64_t seed, long long index) {
  return SplitMix{seed ^ (0xd1b54a32d192ed03ull * (static_cast<std::uint64_t>(index) + 1))};
}

Rat draw_uniform_weight(SplitMix& rng, long max_den) {
  long den = rng.range(1, max_den);
  long num = rng.range(1, den);
  return make_rat(num, den);
}

// The weight classes as numerator bands over a fixed grid of 720ths; the
// good class is a union of three bands, picked uniformly.
Rat draw_category_weight(SplitMix& rng, const std::array<unsigned, 4>& weights) {
  unsigned total = weights[0] + weights[1] + weights[2] + weights[3];
  std::uint64_t r = rng.below(total);
  int cat = 3;
  unsigned acc = 0;
  for (int c = 0; c < 4; ++c) {
    acc += weights[c];
    if (r < acc) {
      cat = c;
      break;
    }
  }
  long lo = 0, hi = 0;
  switch (cat) {
    case 0:
      switch (rng.below(3)) {
        case 0: lo = 1; hi = 240; break;     // (0, 1/3]
        case 1: lo = 270; hi = 360; break;   // [3/8, 1/2]
        default: lo = 540; hi = 720; break;  // [3/4, 1]
      }
      break;
    case 1: lo = 241; hi = 269; break;   // small (1/3, 3/8)
    case 2: lo = 361; hi = 450; break;   // medium (1/2, 5/8]
    default: lo = 451; hi = 539; break;  // large (5/8, 3/4)
  }
  return make_rat(rng.range(lo, hi), 720);
}

Rat draw_sylvester_weight(SplitMix& rng, const Rat& eps) {
  static const long breakpoints[5] = {2, 3, 7, 43, 1807};
  long a = breakpoints[rng.below(5)];
  switch (rng.below(3)) {
    case 0: return make_rat(1, a) - eps;
    case 1: return make_rat(1, a) + eps;
    default: return make_rat(1, a) + 2 * eps;
  }
}

Rat draw_value(SplitMix& rng, const SweepConfig& cfg, const Rat& weight) {
  switch (cfg.value_model) {
    case SweepConfig::ValueModel::proportional:
      return weight;
    case SweepConfig::ValueModel::uniform_rational: {
      long den = rng.range(1, cfg.value_max_denominator);
      return make_rat(rng.range(1, 2 * den), den);  // (0, 2]
    }
    default: {  // density_bounded
      long den = rng.range(1, cfg.value_max_denominator);
      return weight * make_rat(rng.range(1, den), den) * cfg.density_max;
    }
  }
}

}  // namespace

void validate_config(const SweepConfig& cfg) {
  if (cfg.count < 1) throw std::invalid_argument("sweep count must be positive");
  if (cfg.items_min < 1 || cfg.items_max < cfg.items_min) {
    throw std::invalid_argument("items range is empty");
  }
  if (cfg.weight_model == SweepConfig::WeightModel::uniform_rational && cfg.max_denominator < 1) {
    throw std::invalid_argument("max_denominator must be positive");
  }
  if (cfg.weight_model == SweepConfig::WeightModel::category_mix) {
    unsigned total = 0;
    for (unsigned w : cfg.category_weights) total += w;
    if (total == 0) throw std::invalid_argument("category weights are all zero");
  }
  if (cfg.weight_model == SweepConfig::WeightModel::sylvester_adjacent) {
    // keeps every offset weight inside (0, 1]
    if (cfg.adjacency_eps <= 0 || cfg.adjacency_eps >= make_rat(1, 7224)) {
      throw std::invalid_argument("adjacency_eps must lie strictly between 0 and 1/7224");
    }
  }
  if (cfg.value_model != SweepConfig::ValueModel::proportional && cfg.value_max_denominator < 1) {
    throw std::invalid_argument("value_max_denominator must be positive");
  }
  if (cfg.value_model == SweepConfig::ValueModel::density_bounded && cfg.density_max <= 0) {
    throw std::invalid_argument("density_max must be positive");
  }
}

Instance generate_random_instance(const SweepConfig& cfg, long long index) {
  validate_config(cfg);
  if (index < 0) throw std::out_of_range("instance index must be nonnegative");
  SplitMix rng = stream_for(cfg.seed, index);
  long n = rng.range(cfg.items_min, cfg.items_max);
  std::vector<Item> items;
  items.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    Rat w;
    switch (cfg.weight_model) {
      case SweepConfig::WeightModel::uniform_rational:
        w = draw_uniform_weight(rng, cfg.max_denominator);
        break;
      case SweepConfig::WeightModel::category_mix:
        w = draw_category_weight(rng, cfg.category_weights);
        break;
      default:
        w = draw_sylvester_weight(rng, cfg.adjacency_eps);
        break;
    }
    Rat v = draw_value(rng, cfg, w);
    items.emplace_back(std::move(w), std::move(v));
  }
  return {std::move(items), cfg.value_model == SweepConfig::ValueModel::proportional};
}

int default_thread_count() {
  if (const char* env = std::getenv("UKNAP_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 64) return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw < 1) hw = 1;
  if (hw > 64) hw = 64;
  return static_cast<int>(hw);
}

namespace {

struct BoundRule {
  bool has = false;
  Rat value;
};

// The proven competitive-ratio bound each rule is measured against. The
// coin-flip halves and the naive baselines always end a proportional run
// holding at least half the knapsack's worth, hence the factor-2 rows; no
// baseline has a bound once values are decoupled from weights.
BoundRule bound_for(const std::string& id, bool proportional, const Rat& t6) {
  if (id == "simple") return {true, make_rat(3, 2)};
  if (id == "randchoice") return {true, make_rat(4, 3)};
  if (id == "randchoice:a1" || id == "randchoice:a2") return {true, Rat(2)};
  if (id == "focus") return {true, proportional ? make_rat(3, 2) : t6};
  if (proportional) return {true, Rat(2)};
  return {};
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg, const std::vector<std::string>& algorithms,
                      int threads) {
  validate_config(cfg);
  bool proportional = cfg.value_model == SweepConfig::ValueModel::proportional;
  for (const std::string& id : algorithms) {
    bool prop_only = id == "randchoice" ? true : alg::algorithm_is_proportional_only(id);
    if (prop_only && !proportional) {
      throw std::invalid_argument("algorithm '" + id +
                                  "' is only defined on proportional instances");
    }
  }
  if (threads <= 0) threads = default_thread_count();
  if (threads > cfg.count) threads = static_cast<int>(cfg.count);

  const Rat t6 = bounds::t_value(6);
  oracle::OracleLimits limits;
  // pathological rows (many tiny equal-density weights defeat the search
  // bound) die quickly and become skipped rows instead of stalling the sweep
  limits.max_nodes = 2000000;

  const std::size_t width = algorithms.size();
  std::vector<ExperimentRow> rows(static_cast<std::size_t>(cfg.count) * width);
  std::atomic<long long> cursor{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  auto work = [&]() {
    try {
      for (;;) {
        long long i = cursor.fetch_add(1, std::memory_order_relaxed);
        if (i >= cfg.count) return;
        Instance inst = generate_random_instance(cfg, i);
        bool have_opt = true;
        Rat opt;
        try {
          opt = oracle::optimal(inst, limits).optimum;
        } catch (const oracle::ResourceLimit&) {
          have_opt = false;
        }
        for (std::size_t j = 0; j < width; ++j) {
          ExperimentRow& row = rows[static_cast<std::size_t>(i) * width + j];
          row.instance_id = i;
          row.algorithm = algorithms[j];
          row.gain = row.algorithm == "randchoice"
                         ? alg::expected_gain(alg::randchoice(), inst)
                         : replay_gain(alg::algorithm_factory(row.algorithm)(), inst);
          if (!have_opt) {
            row.skipped = true;
            continue;
          }
          row.opt = opt;
          if (row.gain == 0) {
            // unreachable for the shipped generators (all values positive)
            throw std::logic_error("zero gain in a sweep row");
          }
          row.ratio = opt / row.gain;
          BoundRule rule = bound_for(row.algorithm, proportional, t6);
          if (rule.has) {
            row.has_bound = true;
            row.bound = rule.value;
            row.margin = rule.value - row.ratio;
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      cursor.store(cfg.count, std::memory_order_relaxed);
    }
  };

  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult result{std::move(rows), {}};
  for (std::size_t j = 0; j < width; ++j) {
    AlgorithmSummary summary;
    summary.algorithm = algorithms[j];
    for (long long i = 0; i < cfg.count; ++i) {
      const ExperimentRow& row = result.rows[static_cast<std::size_t>(i) * width + j];
      ++summary.rows;
      if (row.skipped) {
        ++summary.skipped;
        continue;
      }
      if (!summary.has_max_ratio || row.ratio > summary.max_ratio) {
        summary.max_ratio = row.ratio;
        summary.has_max_ratio = true;
      }
      if (row.has_bound && row.margin < 0) ++summary.margin_violations;
    }
    result.summaries.push_back(std::move(summary));
  }
  return result;
}

namespace {

const char* const kCsvHeader = "instance_id,algorithm,gain,opt,ratio,bound,margin,skipped,ratio_decimal";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string current;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  out.push_back(current);
  return out;
}

}  // namespace

std::string to_csv(const SweepResult& result) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const ExperimentRow& row : result.rows) {
    out += std::to_string(row.instance_id);
    out += ',';
    out += row.algorithm;
    out += ',';
    out += rat_to_string(row.gain);
    out += ',';
    if (!row.skipped) out += rat_to_string(row.opt);
    out += ',';
    if (!row.skipped) out += rat_to_string(row.ratio);
    out += ',';
    if (row.has_bound) out += rat_to_string(row.bound);
    out += ',';
    if (row.has_bound && !row.skipped) out += rat_to_string(row.margin);
    out += ',';
    out += row.skipped ? '1' : '0';
    out += ',';
    if (!row.skipped) out += rat_to_decimal(row.ratio, 20);
    out += '\n';
  }
  return out;
}

std::vector<ExperimentRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("csv: missing or unexpected header");
  }
  std::vector<ExperimentRow> rows;
  long long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f = split_fields(line);
    if (f.size() != 9) {
      throw std::invalid_argument("csv line " + std::to_string(line_no) +
                                  ": expected 9 fields, got " + std::to_string(f.size()));
    }
    try {
      ExperimentRow row;
      row.instance_id = std::stoll(f[0]);
      row.algorithm = f[1];
      row.gain = parse_rat(f[2]);
      if (f[7] == "1") {
        row.skipped = true;
      } else if (f[7] != "0") {
        throw std::invalid_argument("skipped flag must be 0 or 1");
      }
      if (!row.skipped) {
        row.opt = parse_rat(f[3]);
        row.ratio = parse_rat(f[4]);
      } else if (!f[3].empty() || !f[4].empty()) {
        throw std::invalid_argument("skipped row carries an optimum");
      }
      if (!f[5].empty()) {
        row.has_bound = true;
        row.bound = parse_rat(f[5]);
        if (!row.skipped) row.margin = parse_rat(f[6]);
      } else if (!f[6].empty()) {
        throw std::invalid_argument("margin without a bound");
      }
      rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      throw std::invalid_argument("csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (const std::string& piece : split_fields(s)) {
    std::string t = trim(piece);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

struct PlanError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

[[noreturn]] void config_error(long long line_no, const std::string& message) {
  throw PlanError("config line " + std::to_string(line_no) + ": " + message);
}

}  // namespace

SweepPlan parse_sweep_plan(std::istream& in) {
  SweepPlan plan;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) config_error(line_no, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.empty()) config_error(line_no, "empty value for '" + key + "'");
    try {
      if (key == "count") {
        plan.config.count = std::stoll(value);
      } else if (key == "items_min") {
        plan.config.items_min = std::stoi(value);
      } else if (key == "items_max") {
        plan.config.items_max = std::stoi(value);
      } else if (key == "weight_model") {
        if (value == "uniform") plan.config.weight_model = SweepConfig::WeightModel::uniform_rational;
        else if (value == "category") plan.config.weight_model = SweepConfig::WeightModel::category_mix;
        else if (value == "sylvester") plan.config.weight_model = SweepConfig::WeightModel::sylvester_adjacent;
        else config_error(line_no, "weight_model must be uniform, category, or sylvester");
      } else if (key == "max_denominator") {
        plan.config.max_denominator = std::stol(value);
      } else if (key == "category_weights") {
        std::vector<std::string> parts = split_list(value);
        if (parts.size() != 4) config_error(line_no, "category_weights needs 4 entries");
        for (int i = 0; i < 4; ++i) {
          plan.config.category_weights[static_cast<std::size_t>(i)] =
              static_cast<unsigned>(std::stoul(parts[static_cast<std::size_t>(i)]));
        }
      } else if (key == "adjacency_eps") {
        plan.config.adjacency_eps = parse_rat(value);
      } else if (key == "value_model") {
        if (value == "proportional") plan.config.value_model = SweepConfig::ValueModel::proportional;
        else if (value == "uniform") plan.config.value_model = SweepConfig::ValueModel::uniform_rational;
        else if (value == "density") plan.config.value_model = SweepConfig::ValueModel::density_bounded;
        else config_error(line_no, "value_model must be proportional, uniform, or density");
      } else if (key == "value_max_denominator") {
        plan.config.value_max_denominator = std::stol(value);
      } else if (key == "density_max") {
        plan.config.density_max = parse_rat(value);
      } else if (key == "seed") {
        plan.config.seed = std::stoull(value);
      } else if (key == "algorithms") {
        plan.algorithms = split_list(value);
      } else {
        config_error(line_no, "unknown key '" + key + "'");
      }
    } catch (const PlanError&) {
      throw;
    } catch (const std::exception& e) {
      config_error(line_no, std::string(e.what()));
    }
  }
  return plan;
}

bool run_verification(std::ostream& out) {
  bool all = true;
  auto check = [&](const std::string& label, bool ok) {
    out << (ok ? "ok" : "FAIL") << ": " << label << "\n";
    if (!ok) all = false;
  };

  check("sequence and series identities through depth 8", bounds::check_identities(8).all_passed());

  {
    auto [lo, hi] = bounds::s_infinity_bracket(5);
    check("series limit certified inside (1.69103, 1.69104)",
          lo > make_rat(169103, 100000) && hi < make_rat(169104, 100000) && lo < hi);
  }

  const Rat precision = make_rat(1, 1000000000);
  bounds::LowerBoundSolution sol3 = bounds::lower_bound_cN(3, precision);
  bounds::LowerBoundSolution sol5 = bounds::lower_bound_cN(5, precision);
  for (const bounds::LowerBoundSolution* sol : {&sol3, &sol5}) {
    bool ok = sol->c_hi - sol->c_lo < precision;
    for (std::size_t k = 0; k + 1 < sol->residuals.size(); ++k) ok = ok && sol->residuals[k] == 0;
    Rat last = sol->residuals.back();
    if (last < 0) last = -last;
    ok = ok && last <= sol->tolerance;
    check("root bracket and residuals at depth " + std::to_string(sol->N), ok);
  }
  check("depth-5 adversarial ratio exceeds 1.5877", sol5.c_lo > make_rat(15877, 10000));

  const Rat eps = make_rat(1, 100);
  check("first-small rule walks into the two-thirds trap",
        adversary::proportional_det_adversary(alg::simple(), eps).ratio == make_rat(75, 53));

  {
    auto [i1, i2] = adversary::averaging_pair(eps);
    bool ok = replay_gain(alg::randchoice_strategy(alg::PairStrategy::a1), i1) == make_rat(103, 150) &&
              replay_gain(alg::randchoice_strategy(alg::PairStrategy::a2), i1) == 1 &&
              alg::expected_gain(alg::randchoice(), i1) == make_rat(253, 300) &&
              alg::expected_gain(alg::randchoice(), i2) == make_rat(247, 300);
    check("coin-flip halves split the averaging pair as computed", ok);
  }

  {
    bool ok = true;
    Rat bound = 1 / (make_rat(2, 3) + 4 * eps);
    for (const std::string& id : alg::algorithm_ids()) {
      ok = ok &&
           adversary::proportional_det_adversary(alg::algorithm_factory(id)(), eps).ratio >= bound;
    }
    check("adaptive two-thirds game binds the whole algorithm zoo", ok);
  }

  {
    alg::MixedStrategy zoo;
    std::vector<std::string> ids = alg::algorithm_ids();
    for (const std::string& id : ids) {
      zoo.components.push_back(
          {id, make_rat(1, static_cast<long>(ids.size())), alg::algorithm_factory(id)});
    }
    adversary::YaoReport rep = adversary::yao_experiment(zoo, eps);
    bool ok = rep.expected_opt == 1;
    for (const auto& [label, expected] : rep.per_strategy_expected) {
      ok = ok && expected <= rep.bound;
    }
    check("averaging bound holds for every deterministic strategy", ok);
  }

  {
    bool ok = true;
    for (int n = 1; n <= 4; ++n) {
      Instance inst = adversary::tightness_instance(n, make_rat(1, 10000));
      Rat gain = replay_gain(alg::focus(), inst);
      ok = ok && oracle::optimal(inst).optimum == bounds::partial_sum_S(n) * gain;
    }
    check("repack rule meets the partial sums exactly at depths 1-4", ok);
  }

  {
    SweepConfig cfg;
    cfg.count = 40;
    cfg.seed = 42;
    std::vector<std::string> algs = {"simple",        "randchoice",    "randchoice:a1",
                                     "randchoice:a2", "focus",         "keep_first",
                                     "keep_heaviest", "greedy_density", "simple_general"};
    SweepResult result = run_sweep(cfg, algs);
    bool ok = true;
    for (const AlgorithmSummary& s : result.summaries) ok = ok && s.margin_violations == 0;
    check("proportional sweep margins are all nonnegative", ok);
    SweepResult again = run_sweep(cfg, algs, 1);
    check("sweep output is byte-identical across thread counts", to_csv(result) == to_csv(again));

    SweepConfig gen = cfg;
    gen.value_model = SweepConfig::ValueModel::uniform_rational;
    gen.seed = 7;
    SweepResult general = run_sweep(gen, {"focus", "keep_first", "greedy_density"});
    ok = true;
    for (const AlgorithmSummary& s : general.summaries) ok = ok && s.margin_violations == 0;
    check("general sweep margins are all nonnegative", ok);
  }

  {
    adversary::AdversaryReport deep =
        adversary::general_adversary(alg::focus(), 5, make_rat(1, 1000000), sol5);
    check("depth-5 game beats 1.58 against the repack rule", deep.ratio > make_rat(79, 50));
    adversary::AdversaryReport shallow =
        adversary::general_adversary(alg::focus(), 3, make_rat(1, 1000000), sol3);
    check("depth-3 game reaches three halves against the repack rule",
          shallow.ratio >= make_rat(3, 2));
  }

  return all;
}

}  // namespace uknap::harness
