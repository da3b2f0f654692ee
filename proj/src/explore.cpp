#include "memlab/explore.hpp"

#include <algorithm>
#include <random>
#include <tuple>
#include <utility>

#include "memlab/error.hpp"

namespace memlab {

std::string to_string(const Outcome& outcome, const LitmusTest& test) {
  std::string out;
  for (const auto& [key, value] : outcome.registers) {
    std::size_t index = static_cast<std::size_t>(key.tid.index);
    std::string thread = index < test.threads.size()
                             ? test.threads[index].name
                             : "T" + std::to_string(key.tid.index);
    if (!out.empty()) out += " ";
    out += thread + ":" + key.reg.name + "=" + std::to_string(value);
  }
  if (!out.empty()) out += " ";
  out += "|";
  for (const auto& [loc, value] : outcome.memory) {
    out += " " + loc.name + "=" + std::to_string(value);
  }
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "Pass";
    case Verdict::Fail:
      return "Fail";
    case Verdict::Unknown:
      return "Unknown";
  }
  return "?";
}

namespace {

void enqueue_instruction(InitialState& state, ThreadId tid,
                         const Instruction& instr) {
  if (instr.kind == Instruction::Kind::Write) {
    state.machine.enqueue_write(tid, instr.loc, instr.value);
  } else {
    AccessId id = state.machine.enqueue_read(tid, instr.loc);
    RegisterKey key{tid, instr.dst};
    state.bindings[id] = key;
    state.registers[key] = 0;
  }
}

Outcome make_outcome(const MachineState& machine, const InitialState& start) {
  Outcome outcome;
  outcome.registers = start.registers;
  for (const auto& [id, key] : start.bindings) {
    auto it = machine.read_results.find(id);
    if (it != machine.read_results.end()) outcome.registers[key] = it->second;
  }
  outcome.memory = machine.memory;
  return outcome;
}

using DedupKey = std::tuple<std::set<AccessId>, std::map<LocationId, Value>,
                            std::map<AccessId, Value>>;

// The residual queue is a function of the executed-id set (enqueue order
// is fixed), so it stays out of the key; read_results stand in for the
// register file they determine.
DedupKey dedup_key(const MachineState& machine) {
  return DedupKey(machine.executed_ids, machine.memory, machine.read_results);
}

void note_invariants(const MachineState& machine, ExploreReport& report) {
  for (InvariantViolation& violation : machine.check_invariants()) {
    bool known = std::any_of(
        report.invariant_violations.begin(), report.invariant_violations.end(),
        [&violation](const InvariantViolation& seen) {
          return seen.kind == violation.kind;
        });
    if (!known) report.invariant_violations.push_back(std::move(violation));
  }
}

ExploreReport explore_exhaustive(const InitialState& start,
                                 const MemoryModel& model,
                                 const ExploreConfig& config) {
  ExploreReport report;
  const std::size_t total = static_cast<std::size_t>(start.machine.counter);
  std::vector<MachineState> work;
  work.push_back(start.machine);
  std::set<DedupKey> seen;
  if (config.dedup) seen.insert(dedup_key(start.machine));

  while (!work.empty()) {
    if (report.states_visited >= config.max_states) {
      report.limit_exhausted = true;
      break;
    }
    MachineState state = std::move(work.back());
    work.pop_back();
    ++report.states_visited;
    note_invariants(state, report);

    if (state.is_quiescent()) {
      if (state.executed_ids.size() != total) ++report.depth_violations;
      report.outcomes.insert(make_outcome(state, start));
      continue;
    }

    std::vector<std::size_t> positions = state.allowed_positions(model);
    if (positions.empty() || positions.front() != 0) {
      ++report.progress_violations;
    }
    // Descending push order makes the depth-first walk visit allowed
    // positions in ascending order.
    for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
      MachineState child = state;
      child.execute_at(model, *it);
      if (config.dedup && !seen.insert(dedup_key(child)).second) {
        ++report.dedup_hits;
        continue;
      }
      work.push_back(std::move(child));
    }
  }
  return report;
}

ExploreReport explore_random(const InitialState& start,
                             const MemoryModel& model,
                             const ExploreConfig& config) {
  ExploreReport report;
  const std::size_t total = static_cast<std::size_t>(start.machine.counter);
  std::mt19937_64 rng(config.seed);
  for (std::uint64_t sample = 0; sample < config.samples; ++sample) {
    MachineState state = start.machine;
    while (true) {
      ++report.states_visited;
      note_invariants(state, report);
      if (state.is_quiescent()) {
        if (state.executed_ids.size() != total) ++report.depth_violations;
        report.outcomes.insert(make_outcome(state, start));
        break;
      }
      std::vector<std::size_t> positions = state.allowed_positions(model);
      if (positions.empty() || positions.front() != 0) {
        ++report.progress_violations;
      }
      if (positions.empty()) break;
      // rng() % n keeps the stream portable across standard libraries,
      // unlike uniform_int_distribution; bias is irrelevant here.
      std::size_t pick = static_cast<std::size_t>(rng() % positions.size());
      state.execute_at(model, positions[pick]);
    }
  }
  // A sample can never certify that the outcome set is complete.
  report.limit_exhausted = true;
  return report;
}

}  // namespace

InitialState initial_state(const LitmusTest& test) {
  InitialState state;
  state.machine = MachineState(test.init);
  for (const ThreadProgram& t : test.threads) {
    for (const Instruction& instr : t.body) {
      enqueue_instruction(state, t.tid, instr);
    }
  }
  return state;
}

InitialState initial_state_ordered(const LitmusTest& test,
                                   const std::vector<int>& thread_sequence) {
  if (thread_sequence.size() !=
      static_cast<std::size_t>(test.total_accesses())) {
    throw Error("enqueue sequence does not match test");
  }
  InitialState state;
  state.machine = MachineState(test.init);
  std::vector<std::size_t> pcs(test.threads.size(), 0);
  for (int t : thread_sequence) {
    if (t < 0 || t >= static_cast<int>(test.threads.size())) {
      throw Error("enqueue sequence does not match test");
    }
    const ThreadProgram& thread = test.threads[static_cast<std::size_t>(t)];
    std::size_t& pc = pcs[static_cast<std::size_t>(t)];
    if (pc >= thread.body.size()) {
      throw Error("enqueue sequence does not match test");
    }
    enqueue_instruction(state, thread.tid, thread.body[pc++]);
  }
  return state;
}

ExploreReport explore_machine(const InitialState& start,
                              const MemoryModel& model,
                              const ExploreConfig& config) {
  if (config.mode == ExploreConfig::Mode::RandomWalk) {
    return explore_random(start, model, config);
  }
  return explore_exhaustive(start, model, config);
}

ExploreReport explore(const LitmusTest& test, const MemoryModel& model,
                      const ExploreConfig& config) {
  // The fixed enqueue order below loses outcomes if a model ever pins
  // cross-thread pairs; none of the defined layers does.
  if (!cross_thread_open(model)) {
    throw Error("model restricts cross-thread reordering; "
                "fixed enqueue order would be unsound");
  }
  return explore_machine(initial_state(test), model, config);
}

OutcomeSet interleaving_oracle(const LitmusTest& test) {
  struct OracleState {
    std::vector<std::size_t> pcs;
    std::map<LocationId, Value> memory;
    RegisterFile registers;
    auto operator<=>(const OracleState&) const = default;
  };

  OracleState init;
  init.pcs.assign(test.threads.size(), 0);
  init.memory = test.init;
  for (const ThreadProgram& t : test.threads) {
    for (const Instruction& instr : t.body) {
      if (instr.kind == Instruction::Kind::Read) {
        init.registers[RegisterKey{t.tid, instr.dst}] = 0;
      }
    }
  }

  OutcomeSet outcomes;
  std::set<OracleState> seen{init};
  std::vector<OracleState> work{std::move(init)};
  while (!work.empty()) {
    OracleState state = std::move(work.back());
    work.pop_back();
    bool done = true;
    for (std::size_t t = 0; t < test.threads.size(); ++t) {
      if (state.pcs[t] >= test.threads[t].body.size()) continue;
      done = false;
      const Instruction& instr = test.threads[t].body[state.pcs[t]];
      OracleState child = state;
      ++child.pcs[t];
      if (instr.kind == Instruction::Kind::Write) {
        child.memory[instr.loc] = instr.value;
      } else {
        auto it = child.memory.find(instr.loc);
        if (it == child.memory.end()) throw MissingLocation(instr.loc);
        child.registers[RegisterKey{test.threads[t].tid, instr.dst}] =
            it->second;
      }
      if (seen.insert(child).second) work.push_back(std::move(child));
    }
    if (done) {
      outcomes.insert(Outcome{std::move(state.registers),
                              std::move(state.memory)});
    }
  }
  return outcomes;
}

bool outcome_satisfies(const Outcome& outcome,
                       const std::vector<Atom>& clause) {
  for (const Atom& atom : clause) {
    if (atom.kind == Atom::Kind::RegEquals) {
      auto it = outcome.registers.find(RegisterKey{atom.tid, atom.reg});
      if (it == outcome.registers.end() || it->second != atom.value) {
        return false;
      }
    } else {
      auto it = outcome.memory.find(atom.loc);
      if (it == outcome.memory.end() || it->second != atom.value) return false;
    }
  }
  return true;
}

std::vector<AssertionResult> evaluate_assertions(const ExploreReport& report,
                                                 const LitmusTest& test) {
  std::vector<AssertionResult> results;
  for (const Assertion& assertion : test.assertions) {
    bool witness = std::any_of(
        report.outcomes.begin(), report.outcomes.end(),
        [&assertion](const Outcome& o) {
          return outcome_satisfies(o, assertion.clause);
        });
    bool all = std::all_of(report.outcomes.begin(), report.outcomes.end(),
                           [&assertion](const Outcome& o) {
                             return outcome_satisfies(o, assertion.clause);
                           });
    Verdict verdict = Verdict::Unknown;
    switch (assertion.kind) {
      case Assertion::Kind::Exists:
        // A witness decides even when the search was cut short.
        verdict = witness ? Verdict::Pass
                          : (report.limit_exhausted ? Verdict::Unknown
                                                    : Verdict::Fail);
        break;
      case Assertion::Kind::Forbidden:
        verdict = witness ? Verdict::Fail
                          : (report.limit_exhausted ? Verdict::Unknown
                                                    : Verdict::Pass);
        break;
      case Assertion::Kind::Always:
        verdict = !all ? Verdict::Fail
                       : (report.limit_exhausted ? Verdict::Unknown
                                                 : Verdict::Pass);
        break;
    }
    results.push_back(AssertionResult{assertion, verdict});
  }
  return results;
}

std::vector<ComparisonRow> compare_models(
    const LitmusTest& test, const std::vector<MemoryModel>& models,
    const ExploreConfig& config) {
  std::vector<ComparisonRow> rows;
  for (const MemoryModel& model : models) {
    ComparisonRow row;
    row.model = model.describe();
    row.report = explore(test, model, config);
    for (const Assertion& assertion : test.assertions) {
      row.witnesses.push_back(std::any_of(
          row.report.outcomes.begin(), row.report.outcomes.end(),
          [&assertion](const Outcome& o) {
            return outcome_satisfies(o, assertion.clause);
          }));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

OutcomeSet random_walk(const LitmusTest& test, const MemoryModel& model,
                       std::uint64_t seed, std::uint64_t samples) {
  ExploreConfig config;
  config.mode = ExploreConfig::Mode::RandomWalk;
  config.seed = seed;
  config.samples = samples;
  return explore(test, model, config).outcomes;
}

}  // namespace memlab
