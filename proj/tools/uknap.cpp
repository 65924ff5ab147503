#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "uknap/adversary.hpp"
#include "uknap/algorithms.hpp"
#include "uknap/bounds.hpp"
#include "uknap/core.hpp"
#include "uknap/harness.hpp"
#include "uknap/oracle.hpp"
#include "uknap/rat.hpp"

namespace {

using namespace uknap;
namespace alg = uknap::algorithms;

std::string show(const Rat& r, int digits = 6) {
  return rat_to_string(r) + " ~ " + rat_to_decimal(r, digits);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file '" + path + "'");
  return parse_instance(in);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

void print_solution(std::ostream& out, const Solution& sol, const char* indent) {
  if (sol.empty()) {
    out << indent << "(empty)\n";
    return;
  }
  for (const auto& [item, copies] : sol.entries()) {
    out << indent << copies << " x weight " << rat_to_string(item.weight) << ", value "
        << rat_to_string(item.value) << "\n";
  }
}

void print_trace(const Trace& trace, const Instance& inst) {
  for (const TraceStep& step : trace) {
    const Item& x = inst.items[step.item_index];
    std::cout << "step " << step.item_index + 1 << ": weight " << rat_to_string(x.weight)
              << ", value " << rat_to_string(x.value) << " -> pack " << step.copies;
    for (const auto& [item, copies] : step.removed) {
      std::cout << ", remove " << copies << " x " << rat_to_string(item.weight);
    }
    std::cout << "; gain " << rat_to_string(step.after.gain()) << "\n";
  }
}

Rat guarded_ratio(const Rat& opt, const Rat& gain) {
  if (gain == 0) {
    if (opt == 0) return Rat(1);
    throw std::domain_error("ratio undefined: zero gain against positive optimum");
  }
  return opt / gain;
}

int cmd_run(const std::string& alg_id, const std::string& path, bool trace_flag, bool have_seed,
            std::uint64_t seed) {
  Instance inst = load_instance(path);
  if (alg_id != "randchoice") {
    ReplayResult rep = replay(alg::algorithm_factory(alg_id)(), inst);
    if (trace_flag) print_trace(rep.trace, inst);
    std::cout << "gain = " << show(rep.gain) << "\n";
    return 0;
  }

  alg::MixedStrategy mix = alg::randchoice();
  if (have_seed) {
    // one draw from the mixture: hash the seed to a uniform [0,1) rational
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    Rat u = make_rat(Int(static_cast<unsigned long>(z)), Int(1) << 64);
    const alg::MixedStrategy::Component* chosen = &mix.components.back();
    Rat acc = 0;
    for (const auto& comp : mix.components) {
      acc += comp.probability;
      if (u < acc) {
        chosen = &comp;
        break;
      }
    }
    std::cout << "drew " << chosen->label << "\n";
    ReplayResult rep = replay(chosen->make(), inst);
    if (trace_flag) print_trace(rep.trace, inst);
    std::cout << "gain = " << show(rep.gain) << "\n";
    return 0;
  }

  Rat expected = 0;
  for (const auto& comp : mix.components) {
    ReplayResult rep = replay(comp.make(), inst);
    if (trace_flag) {
      std::cout << "--- " << comp.label << " ---\n";
      print_trace(rep.trace, inst);
    }
    std::cout << "gain[" << comp.label << "] = " << show(rep.gain) << "  (probability "
              << rat_to_string(comp.probability) << ")\n";
    expected += comp.probability * rep.gain;
  }
  std::cout << "expected gain = " << show(expected) << "\n";
  return 0;
}

int cmd_ratio(const std::string& alg_id, const std::string& path) {
  Instance inst = load_instance(path);
  Rat gain = alg_id == "randchoice" ? alg::expected_gain(alg::randchoice(), inst)
                                    : replay_gain(alg::algorithm_factory(alg_id)(), inst);
  oracle::OracleResult best = oracle::optimal(inst);
  std::cout << "gain  = " << show(gain) << "\n";
  std::cout << "opt   = " << show(best.optimum) << "  ["
            << (best.method == oracle::Method::scaled_dp ? "scaled dp" : "branch and bound")
            << "]\n";
  std::cout << "witness:\n";
  print_solution(std::cout, best.witness, "  ");
  std::cout << "ratio = " << show(guarded_ratio(best.optimum, gain), 10) << "\n";
  return 0;
}

int cmd_bounds(int n, int digits) {
  std::vector<Int> table = bounds::sylvester_table(n);
  std::cout << "a_1..a_" << n << " =";
  for (const Int& a : table) std::cout << ' ' << a.get_str();
  std::cout << "\n";
  Rat s = bounds::partial_sum_S(n);
  Rat t = bounds::t_value(n);
  std::cout << "S_" << n << " = " << rat_to_string(s) << " ~ " << rat_to_decimal(s, digits)
            << "\n";
  std::cout << "T_" << n << " = " << rat_to_string(t) << " ~ " << rat_to_decimal(t, digits)
            << "\n";
  auto [lo, hi] = bounds::s_infinity_bracket(n);
  std::cout << "series limit in [" << rat_to_decimal(lo, digits) << ", "
            << rat_to_decimal(hi, digits) << "]\n";
  if (n >= 3) {
    Int den = 1;
    for (int i = 0; i < digits; ++i) den *= 10;
    bounds::LowerBoundSolution sol = bounds::lower_bound_cN(n, make_rat(Int(1), den));
    std::cout << "c_" << n << " in [" << rat_to_decimal(sol.c_lo, digits) << ", "
              << rat_to_decimal(sol.c_hi, digits) << "]\n";
    for (std::size_t i = 0; i < sol.v.size(); ++i) {
      std::cout << "  v_" << i + 1 << " ~ " << rat_to_decimal(sol.v[i], digits) << "\n";
    }
  } else {
    std::cout << "(no adaptive-game ratio below depth 3)\n";
  }
  return 0;
}

void print_emitted(const Instance& inst) {
  std::cout << "emitted sequence:\n";
  for (const Item& it : inst.items) {
    std::cout << "  weight " << rat_to_string(it.weight);
    if (!inst.proportional) std::cout << ", value " << rat_to_string(it.value);
    std::cout << "\n";
  }
}

int cmd_adversary(const std::string& game, const std::string& alg_id, const Rat& eps, int n,
                  const std::string& out_path) {
  if (game == "prop-det") {
    adversary::AdversaryReport rep =
        adversary::proportional_det_adversary(alg::algorithm_factory(alg_id)(), eps);
    for (const std::string& line : rep.branch_log) std::cout << line << "\n";
    print_emitted(rep.instance_emitted);
    std::cout << "gain  = " << show(rep.alg_gain) << "\n";
    std::cout << "opt   = " << show(rep.opt) << "\n";
    std::cout << "ratio = " << show(rep.ratio, 10) << "\n";
    std::cout << "forced wall 1/(2/3 + 4e) = " << show(1 / (make_rat(2, 3) + 4 * eps), 10)
              << "\n";
    if (!out_path.empty()) write_file(out_path, serialize_instance(rep.instance_emitted));
    return 0;
  }
  if (game == "yao") {
    adversary::YaoReport rep = adversary::yao_experiment(alg::randchoice(), eps);
    for (const auto& [label, expected] : rep.per_strategy_expected) {
      std::cout << "expected gain[" << label << "] = " << show(expected) << "\n";
    }
    std::cout << "mixture expectation = " << show(rep.mixture_expected) << "\n";
    std::cout << "expected opt        = " << show(rep.expected_opt) << "\n";
    std::cout << "per-strategy bound 5/6 + 2e = " << show(rep.bound, 10) << "\n";
    if (!out_path.empty()) {
      write_file(out_path, serialize_instance(rep.i1));
      write_file(out_path + ".alt", serialize_instance(rep.i2));
      std::cout << "wrote the two sequences to " << out_path << " and " << out_path
                << ".alt\n";
    }
    return 0;
  }
  if (game == "tightness") {
    Instance inst = adversary::tightness_instance(n, eps);
    Rat gain = replay_gain(alg::algorithm_factory(alg_id)(), inst);
    oracle::OracleResult best = oracle::optimal(inst);
    print_emitted(inst);
    std::cout << "gain  = " << show(gain) << "\n";
    std::cout << "opt   = " << show(best.optimum) << "\n";
    std::cout << "ratio = " << show(guarded_ratio(best.optimum, gain), 10) << "\n";
    Rat target = bounds::partial_sum_S(n);
    std::cout << "partial sum S_" << n << " = " << show(target, 10) << "\n";
    if (!out_path.empty()) write_file(out_path, serialize_instance(inst));
    return 0;
  }
  // general
  bounds::LowerBoundSolution sol = bounds::lower_bound_cN(n, make_rat(1, 1000000000));
  adversary::AdversaryReport rep =
      adversary::general_adversary(alg::algorithm_factory(alg_id)(), n, eps, sol);
  for (const std::string& line : rep.branch_log) std::cout << line << "\n";
  print_emitted(rep.instance_emitted);
  std::cout << "gain  = " << show(rep.alg_gain) << "\n";
  std::cout << "opt   = " << show(rep.opt) << "\n";
  std::cout << "ratio = " << show(rep.ratio, 10) << "\n";
  std::cout << "target c_" << n << " in [" << rat_to_decimal(sol.c_lo, 10) << ", "
            << rat_to_decimal(sol.c_hi, 10) << "]\n";
  if (!rep.exact_regime) {
    std::cout << "(offset large enough to perturb the closed-form optimum; the reported"
                 " optimum is the oracle's)\n";
  }
  if (!out_path.empty()) write_file(out_path, serialize_instance(rep.instance_emitted));
  return 0;
}

int cmd_sweep(const harness::SweepPlan& plan, int threads, const std::string& out_path) {
  harness::SweepResult result = harness::run_sweep(plan.config, plan.algorithms, threads);
  std::string csv = harness::to_csv(result);
  std::ostream* summary_out = &std::cout;
  if (out_path.empty()) {
    std::cout << csv;
    summary_out = &std::cerr;  // keep stdout machine-readable
  } else {
    write_file(out_path, csv);
  }
  long long violations = 0;
  for (const harness::AlgorithmSummary& s : result.summaries) {
    *summary_out << s.algorithm << ": rows " << s.rows << ", skipped " << s.skipped
                 << ", bound violations " << s.margin_violations;
    if (s.has_max_ratio) *summary_out << ", max ratio " << show(s.max_ratio);
    *summary_out << "\n";
    violations += s.margin_violations;
  }
  return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic laboratory for online unbounded knapsack with removal"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "replay one algorithm on an instance file");
  std::string run_alg;
  run_cmd->add_option("--alg", run_alg, "algorithm id, or 'randchoice' for the mixture")
      ->required();
  std::string run_path;
  run_cmd->add_option("--instance", run_path, "instance file")->required();
  bool run_trace = false;
  run_cmd->add_flag("--trace", run_trace, "print every step's action");
  std::uint64_t run_seed = 0;
  CLI::Option* run_seed_opt = run_cmd->add_option(
      "--sample-seed", run_seed, "draw a single strategy from the mixture with this seed");

  auto* ratio_cmd =
      app.add_subcommand("ratio", "replay an algorithm and compare against the exact optimum");
  std::string ratio_alg;
  ratio_cmd->add_option("--alg", ratio_alg, "algorithm id, or 'randchoice' for the mixture")
      ->required();
  std::string ratio_path;
  ratio_cmd->add_option("--instance", ratio_path, "instance file")->required();

  auto* bounds_cmd =
      app.add_subcommand("bounds", "sequence numbers, partial sums, and adaptive-game ratios");
  int bounds_n = 5;
  bounds_cmd->add_option("--n", bounds_n, "depth")->check(CLI::Range(1, 8));
  int bounds_digits = 10;
  bounds_cmd->add_option("--digits", bounds_digits, "decimal digits to print")
      ->check(CLI::Range(1, 50));

  auto* adv_cmd = app.add_subcommand("adversary", "play one of the adaptive games");
  std::string adv_game;
  adv_cmd->add_option("--game", adv_game, "prop-det, yao, tightness, or general")
      ->required()
      ->check(CLI::IsMember({"prop-det", "yao", "tightness", "general"}));
  std::string adv_alg = "focus";
  adv_cmd->add_option("--alg", adv_alg, "algorithm id to play against (ignored by yao)");
  std::string adv_eps = "1/1000000";
  adv_cmd->add_option("--eps", adv_eps, "offset as p/q");
  int adv_n = 5;
  adv_cmd->add_option("--n", adv_n, "depth for tightness/general")->check(CLI::Range(1, 8));
  std::string adv_out;
  adv_cmd->add_option("--out", adv_out, "write the emitted sequence to this file");

  auto* sweep_cmd = app.add_subcommand("sweep", "random-instance experiment grid");
  std::string sweep_config;
  sweep_cmd->add_option("--config", sweep_config, "plan file (key = value lines)");
  long long sweep_count = 0;
  CLI::Option* count_opt = sweep_cmd->add_option("--count", sweep_count, "instances to generate");
  int sweep_items_min = 0, sweep_items_max = 0;
  CLI::Option* items_min_opt =
      sweep_cmd->add_option("--items-min", sweep_items_min, "minimum items per instance");
  CLI::Option* items_max_opt =
      sweep_cmd->add_option("--items-max", sweep_items_max, "maximum items per instance");
  std::string sweep_weight_model;
  CLI::Option* weight_model_opt =
      sweep_cmd->add_option("--weight-model", sweep_weight_model, "uniform, category, or sylvester")
          ->check(CLI::IsMember({"uniform", "category", "sylvester"}));
  long sweep_max_den = 0;
  CLI::Option* max_den_opt =
      sweep_cmd->add_option("--max-denominator", sweep_max_den, "weight denominator cap");
  std::vector<unsigned> sweep_cat_weights;
  CLI::Option* cat_weights_opt =
      sweep_cmd
          ->add_option("--category-weights", sweep_cat_weights,
                       "good,small,medium,large draw frequencies")
          ->delimiter(',')
          ->expected(4);
  std::string sweep_adj_eps;
  CLI::Option* adj_eps_opt =
      sweep_cmd->add_option("--adjacency-eps", sweep_adj_eps, "breakpoint offset as p/q");
  std::string sweep_value_model;
  CLI::Option* value_model_opt =
      sweep_cmd
          ->add_option("--value-model", sweep_value_model, "proportional, uniform, or density")
          ->check(CLI::IsMember({"proportional", "uniform", "density"}));
  long sweep_value_max_den = 0;
  CLI::Option* value_max_den_opt =
      sweep_cmd->add_option("--value-max-denominator", sweep_value_max_den,
                            "value denominator cap");
  std::string sweep_density_max;
  CLI::Option* density_max_opt =
      sweep_cmd->add_option("--density-max", sweep_density_max, "density cap as p/q");
  std::uint64_t sweep_seed = 0;
  CLI::Option* seed_opt = sweep_cmd->add_option("--seed", sweep_seed, "generator seed");
  std::vector<std::string> sweep_algs;
  CLI::Option* algs_opt =
      sweep_cmd->add_option("--alg", sweep_algs, "algorithm ids (repeat or comma-separate)")
          ->delimiter(',');
  int sweep_threads = 0;
  sweep_cmd->add_option("--threads", sweep_threads, "worker threads (0 = auto)");
  std::string sweep_out;
  sweep_cmd->add_option("--out", sweep_out, "write the CSV here instead of stdout");

  auto* verify_cmd = app.add_subcommand("verify", "run the built-in self checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) {
      return cmd_run(run_alg, run_path, run_trace, run_seed_opt->count() > 0, run_seed);
    }
    if (ratio_cmd->parsed()) return cmd_ratio(ratio_alg, ratio_path);
    if (bounds_cmd->parsed()) return cmd_bounds(bounds_n, bounds_digits);
    if (adv_cmd->parsed()) return cmd_adversary(adv_game, adv_alg, parse_rat(adv_eps), adv_n, adv_out);
    if (sweep_cmd->parsed()) {
      harness::SweepPlan plan;
      if (!sweep_config.empty()) {
        std::ifstream in(sweep_config);
        if (!in) throw std::invalid_argument("cannot open plan file '" + sweep_config + "'");
        plan = harness::parse_sweep_plan(in);
      }
      if (count_opt->count() > 0) plan.config.count = sweep_count;
      if (items_min_opt->count() > 0) plan.config.items_min = sweep_items_min;
      if (items_max_opt->count() > 0) plan.config.items_max = sweep_items_max;
      if (weight_model_opt->count() > 0) {
        plan.config.weight_model =
            sweep_weight_model == "uniform"
                ? harness::SweepConfig::WeightModel::uniform_rational
                : sweep_weight_model == "category"
                      ? harness::SweepConfig::WeightModel::category_mix
                      : harness::SweepConfig::WeightModel::sylvester_adjacent;
      }
      if (max_den_opt->count() > 0) plan.config.max_denominator = sweep_max_den;
      if (cat_weights_opt->count() > 0) {
        for (std::size_t i = 0; i < 4; ++i) plan.config.category_weights[i] = sweep_cat_weights[i];
      }
      if (adj_eps_opt->count() > 0) plan.config.adjacency_eps = parse_rat(sweep_adj_eps);
      if (value_model_opt->count() > 0) {
        plan.config.value_model =
            sweep_value_model == "proportional"
                ? harness::SweepConfig::ValueModel::proportional
                : sweep_value_model == "uniform"
                      ? harness::SweepConfig::ValueModel::uniform_rational
                      : harness::SweepConfig::ValueModel::density_bounded;
      }
      if (value_max_den_opt->count() > 0) plan.config.value_max_denominator = sweep_value_max_den;
      if (density_max_opt->count() > 0) plan.config.density_max = parse_rat(sweep_density_max);
      if (seed_opt->count() > 0) plan.config.seed = sweep_seed;
      if (algs_opt->count() > 0) plan.algorithms = sweep_algs;
      if (plan.algorithms.empty()) {
        plan.algorithms =
            plan.config.value_model == harness::SweepConfig::ValueModel::proportional
                ? std::vector<std::string>{"simple", "randchoice", "focus"}
                : std::vector<std::string>{"focus"};
      }
      return cmd_sweep(plan, sweep_threads, sweep_out);
    }
    if (verify_cmd->parsed()) return harness::run_verification(std::cout) ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
