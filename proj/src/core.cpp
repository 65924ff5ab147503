#include "uknap/core.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace uknap {

Item::Item(Rat w, Rat v) : weight(std::move(w)), value(std::move(v)) {
  if (!(weight > 0 && weight <= 1)) {
    throw std::invalid_argument("item weight must be in (0, 1], got " + rat_to_string(weight));
  }
  if (value < 0) {
    throw std::invalid_argument("item value must be >= 0, got " + rat_to_string(value));
  }
}

bool operator==(const Item& a, const Item& b) {
  return a.weight == b.weight && a.value == b.value;
}
bool operator!=(const Item& a, const Item& b) { return !(a == b); }

bool item_less(const Item& a, const Item& b) {
  int c = cmp(a.weight, b.weight);
  if (c != 0) return c < 0;
  return cmp(a.value, b.value) < 0;
}

Int multiplicity(const Rat& weight) {
  if (!(weight > 0)) throw std::invalid_argument("multiplicity: weight must be positive");
  // floor(1/w) = floor(den/num) for w = num/den in lowest terms.
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), weight.get_den().get_mpz_t(), weight.get_num().get_mpz_t());
  return q;
}

long long multiplicity_ll(const Rat& weight) {
  Int m = multiplicity(weight);
  if (!m.fits_slong_p()) throw std::overflow_error("multiplicity does not fit in a machine word");
  return m.get_si();
}

Rat cumulative_value(const Item& item) {
  return item.value * Rat(multiplicity(item.weight));
}

Instance Instance::proportional_of(const std::vector<Rat>& weights) {
  Instance inst;
  inst.proportional = true;
  inst.items.reserve(weights.size());
  for (const Rat& w : weights) inst.items.emplace_back(w, w);
  return inst;
}

Instance Instance::general_of(std::vector<Item> items) {
  Instance inst;
  inst.items = std::move(items);
  return inst;
}

void validate_instance(const Instance& inst) {
  if (!inst.proportional) return;
  for (const Item& it : inst.items) {
    if (it.weight != it.value) {
      throw std::invalid_argument("instance marked proportional but item has value != weight");
    }
  }
}

namespace {

// Sort, merge duplicates, drop zeros; negative counts are rejected.
std::vector<Solution::Entry> normalize_entries(std::vector<Solution::Entry> entries) {
  for (const auto& [item, count] : entries) {
    if (count < 0) throw std::invalid_argument("negative item count");
  }
  std::sort(entries.begin(), entries.end(),
            [](const Solution::Entry& a, const Solution::Entry& b) {
              return item_less(a.first, b.first);
            });
  std::vector<Solution::Entry> merged;
  for (auto& e : entries) {
    if (e.second == 0) continue;
    if (!merged.empty() && merged.back().first == e.first) {
      merged.back().second += e.second;
    } else {
      merged.push_back(std::move(e));
    }
  }
  return merged;
}

}  // namespace

Solution::Solution(std::vector<Entry> entries) : entries_(normalize_entries(std::move(entries))) {
  for (const auto& [item, count] : entries_) {
    weight_ += Rat(static_cast<long>(count)) * item.weight;
    gain_ += Rat(static_cast<long>(count)) * item.value;
  }
  if (weight_ > 1) {
    throw std::invalid_argument("solution overweight: " + rat_to_string(weight_));
  }
}

long long Solution::count_of(const Item& item) const {
  for (const auto& [it, count] : entries_) {
    if (it == item) return count;
  }
  return 0;
}

long long Solution::size() const {
  long long n = 0;
  for (const auto& e : entries_) n += e.second;
  return n;
}

bool operator==(const Solution& a, const Solution& b) {
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  if (ea.size() != eb.size()) return false;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (!(ea[i].first == eb[i].first) || ea[i].second != eb[i].second) return false;
  }
  return true;
}

IllegalMove::IllegalMove(std::size_t idx, const std::string& what)
    : std::runtime_error("illegal move at step " + std::to_string(idx) + ": " + what),
      step_index(idx) {}

Session::Session(std::unique_ptr<OnlineAlgorithm> alg, bool record_trace)
    : alg_(std::move(alg)), record_trace_(record_trace) {
  if (!alg_) throw std::invalid_argument("session needs an algorithm");
}

void Session::feed(const Item& x) {
  if (alg_->proportional_only() && x.weight != x.value) {
    throw std::invalid_argument(alg_->name() + " is defined on proportional instances only");
  }
  StepAction act = alg_->step(x, current_);
  if (act.copies < 0) throw IllegalMove(fed_, "negative pack count");

  // Pack first (the intermediate state may exceed capacity), then remove.
  std::vector<Solution::Entry> working(current_.entries().begin(), current_.entries().end());
  if (act.copies > 0) working.emplace_back(x, act.copies);

  std::vector<Solution::Entry> removals;
  for (const auto& [item, count] : act.remove) {
    if (count < 0) throw IllegalMove(fed_, "negative removal count");
    if (count == 0) continue;
    removals.emplace_back(item, count);
    long long remaining = count;
    for (auto& [held, held_count] : working) {
      if (held == item) {
        long long take = std::min(held_count, remaining);
        held_count -= take;
        remaining -= take;
        if (remaining == 0) break;
      }
    }
    if (remaining > 0) throw IllegalMove(fed_, "removing items not in the knapsack");
  }

  Rat total = 0;
  for (const auto& [item, count] : working) total += Rat(static_cast<long>(count)) * item.weight;
  if (total > 1) throw IllegalMove(fed_, "knapsack overweight after removals");

  current_ = Solution(std::move(working));
  if (record_trace_) {
    TraceStep step;
    step.item_index = fed_;
    step.copies = act.copies;
    // normalize the removal multiset for the record
    std::sort(removals.begin(), removals.end(),
              [](const Solution::Entry& a, const Solution::Entry& b) {
                return item_less(a.first, b.first);
              });
    std::vector<Solution::Entry> merged;
    for (auto& r : removals) {
      if (!merged.empty() && merged.back().first == r.first) {
        merged.back().second += r.second;
      } else {
        merged.push_back(std::move(r));
      }
    }
    step.removed = std::move(merged);
    step.after = current_;
    trace_.push_back(std::move(step));
  }
  ++fed_;
}

const Trace& Session::trace() const {
  if (!record_trace_) throw std::logic_error("session ran without trace recording");
  return trace_;
}

ReplayResult replay(std::unique_ptr<OnlineAlgorithm> alg, const Instance& inst) {
  Session session(std::move(alg), /*record_trace=*/true);
  for (const Item& it : inst.items) session.feed(it);
  return {session.gain(), session.trace()};
}

Rat replay_gain(std::unique_ptr<OnlineAlgorithm> alg, const Instance& inst) {
  Session session(std::move(alg), /*record_trace=*/false);
  for (const Item& it : inst.items) session.feed(it);
  return session.gain();
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream stream(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (stream >> tok) tokens.push_back(tok);
  return tokens;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  Instance inst;
  bool header_seen = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!header_seen) {
      if (tokens.size() != 1 || (tokens[0] != "proportional" && tokens[0] != "general")) {
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": expected header 'proportional' or 'general'");
      }
      inst.proportional = tokens[0] == "proportional";
      header_seen = true;
      continue;
    }
    try {
      if (inst.proportional) {
        if (tokens.size() > 2) throw std::invalid_argument("too many fields");
        Rat w = parse_rat(tokens[0]);
        if (tokens.size() == 2 && parse_rat(tokens[1]) != w) {
          throw std::invalid_argument("proportional item with value != weight");
        }
        inst.items.emplace_back(w, w);
      } else {
        if (tokens.size() != 2) throw std::invalid_argument("expected '<weight> <value>'");
        inst.items.emplace_back(parse_rat(tokens[0]), parse_rat(tokens[1]));
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!header_seen) throw std::invalid_argument("missing instance header");
  return inst;
}

Instance parse_instance_string(const std::string& text) {
  std::istringstream stream(text);
  return parse_instance(stream);
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << (inst.proportional ? "proportional" : "general") << "\n";
  for (const Item& it : inst.items) {
    out << rat_to_string(it.weight);
    if (!inst.proportional) out << " " << rat_to_string(it.value);
    out << "\n";
  }
  return out.str();
}

}  // namespace uknap
