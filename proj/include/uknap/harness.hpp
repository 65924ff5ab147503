#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "uknap/core.hpp"
#include "uknap/oracle.hpp"
#include "uknap/rat.hpp"

namespace uknap::harness {

// Seeded random-instance generation plan. The same (config, index) pair
// always produces the same instance, bit for bit, independent of thread
// count or platform (the generator is a fixed 64-bit mix, not std::mt19937).
struct SweepConfig {
  long long count = 500;
  int items_min = 1;
  int items_max = 8;

  enum class WeightModel {
    uniform_rational,    // num/den, den <= max_denominator
    category_mix,        // draw a weight class first, then a rational inside it
    sylvester_adjacent,  // weights next to the reciprocal-sequence breakpoints
  };
  WeightModel weight_model = WeightModel::uniform_rational;
  long max_denominator = 360;
  // Relative draw frequencies for the good/small/medium/large classes.
  std::array<unsigned, 4> category_weights{1, 1, 1, 1};
  // Offset used by sylvester_adjacent; weights are 1/a_i - eps, + eps, + 2 eps.
  Rat adjacency_eps = make_rat(1, 100000);

  enum class ValueModel {
    proportional,     // value = weight
    uniform_rational, // value in (0, 2], denominator <= value_max_denominator
    density_bounded,  // value = weight * u * density_max with u in (0, 1]
  };
  ValueModel value_model = ValueModel::proportional;
  long value_max_denominator = 360;
  Rat density_max = make_rat(2, 1);

  std::uint64_t seed = 0;
};

// Throws std::invalid_argument on empty ranges, zero category weights, or an
// adjacency offset outside (0, 1/7224).
void validate_config(const SweepConfig& cfg);

// Deterministic function of (cfg.seed, index).
Instance generate_random_instance(const SweepConfig& cfg, long long index);

struct ExperimentRow {
  long long instance_id = 0;
  std::string algorithm;
  Rat gain;
  bool skipped = false;  // the oracle hit its resource limit on this instance
  Rat opt;               // valid when !skipped
  Rat ratio;             // opt / gain, valid when !skipped
  bool has_bound = false;
  Rat bound;   // applicable proven competitive-ratio bound, when one exists
  Rat margin;  // bound - ratio, valid when has_bound && !skipped
};

struct AlgorithmSummary {
  std::string algorithm;
  long long rows = 0;
  long long skipped = 0;
  long long margin_violations = 0;  // negative margins (a failure if nonzero)
  bool has_max_ratio = false;
  Rat max_ratio;  // over non-skipped rows
};

struct SweepResult {
  std::vector<ExperimentRow> rows;  // ordered by (instance index, algorithm)
  std::vector<AlgorithmSummary> summaries;
};

// Thread count from the UKNAP_THREADS environment variable when set,
// otherwise the hardware concurrency, clamped to [1, 64].
int default_thread_count();

// Replays every algorithm on every generated instance. `algorithms` holds
// registry ids plus the pseudo-id "randchoice" (exact expected gain of the
// coin-flip mixture). Proportional-only algorithms require a proportional
// value model (std::invalid_argument otherwise). Rows whose oracle call hits
// the per-row resource limit are marked skipped and the sweep continues.
// threads = 0 means default_thread_count(); row order never depends on it.
SweepResult run_sweep(const SweepConfig& cfg, const std::vector<std::string>& algorithms,
                      int threads = 0);

// CSV with header
//   instance_id,algorithm,gain,opt,ratio,bound,margin,skipped,ratio_decimal
// Rationals are written as p/q (the authoritative columns); ratio_decimal is
// a 20-digit convenience rendering. Absent fields (skipped rows, rules
// without a proven bound) are empty. Byte-identical for identical results.
std::string to_csv(const SweepResult& result);

// Inverse of to_csv (the decimal column is regenerated, not trusted).
// Throws std::invalid_argument on malformed input.
std::vector<ExperimentRow> parse_csv(std::istream& in);

// A sweep configuration file: flat key = value lines, '#' comments. Keys
// mirror the sweep CLI flags; `algorithms` is a comma-separated id list.
struct SweepPlan {
  SweepConfig config;
  std::vector<std::string> algorithms;
};

SweepPlan parse_sweep_plan(std::istream& in);

// The self-check behind the `verify` CLI subcommand: sequence identities,
// bracket certification, lower-bound root residuals, frozen replays of the
// known games, bound margins on two small sweeps, and CSV determinism.
// Prints one line per check; returns true iff everything passed.
bool run_verification(std::ostream& out);

}  // namespace uknap::harness
