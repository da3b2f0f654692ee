#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "memlab/litmus.hpp"
#include "memlab/machine.hpp"
#include "memlab/model.hpp"

namespace memlab {

struct RegisterKey {
  ThreadId tid;
  RegisterId reg;
  auto operator<=>(const RegisterKey&) const = default;
};

// All registers named by the test, zero-initialized at load; only read
// destinations ever change.
using RegisterFile = std::map<RegisterKey, Value>;

// Read access id -> destination register.
using PendingBinding = std::map<AccessId, RegisterKey>;

// Final register valuation plus final memory of one drained run.
struct Outcome {
  RegisterFile registers;
  std::map<LocationId, Value> memory;
  auto operator<=>(const Outcome&) const = default;
};

// std::set ordering is lexicographic over sorted register bindings then
// sorted memory bindings, which is the canonical report order.
using OutcomeSet = std::set<Outcome>;

std::string to_string(const Outcome& outcome, const LitmusTest& test);

struct ExploreConfig {
  enum class Mode { Exhaustive, RandomWalk };

  std::uint64_t max_states = 1'000'000;
  bool dedup = true;
  Mode mode = Mode::Exhaustive;
  std::uint64_t seed = 0;     // RandomWalk
  std::uint64_t samples = 0;  // RandomWalk
};

struct ExploreReport {
  OutcomeSet outcomes;
  std::uint64_t states_visited = 0;
  std::uint64_t dedup_hits = 0;
  // When false, `outcomes` is the complete reachable set. Random walks
  // always leave this true: sampling cannot certify completeness.
  bool limit_exhausted = false;
  std::vector<InvariantViolation> invariant_violations;
  // Dynamic progress checks, expected to stay at zero: expansions whose
  // allowed positions were empty or missed the queue head, and branches
  // that did not reach quiescence in exactly one step per access.
  std::uint64_t progress_violations = 0;
  std::uint64_t depth_violations = 0;
};

struct InitialState {
  MachineState machine;
  RegisterFile registers;
  PendingBinding bindings;
};

// Machine loaded with test.init; instructions enqueued thread 0 first,
// then thread 1, and so on, each in program order.
InitialState initial_state(const LitmusTest& test);

// Enqueue following `thread_sequence` instead (one entry per
// instruction; values are thread indices). Per-thread program order is
// preserved. Throws Error when the sequence does not match the test.
InitialState initial_state_ordered(const LitmusTest& test,
                                   const std::vector<int>& thread_sequence);

// Exhaustive depth-first enumeration of reachable final states,
// branching over every allowed queue position; machine invariants are
// checked at every expanded state.
ExploreReport explore(const LitmusTest& test, const MemoryModel& model,
                      const ExploreConfig& config = {});

// Same traversal from an explicit start configuration.
ExploreReport explore_machine(const InitialState& start,
                              const MemoryModel& model,
                              const ExploreConfig& config = {});

// Independent reference semantics: enumerate all interleavings of the
// thread programs directly against memory, with no queue and no swap
// predicate. Ground truth for the machine under SC.
OutcomeSet interleaving_oracle(const LitmusTest& test);

enum class Verdict { Pass, Fail, Unknown };
const char* to_string(Verdict v);

struct AssertionResult {
  Assertion assertion;
  Verdict verdict;
};

bool outcome_satisfies(const Outcome& outcome, const std::vector<Atom>& clause);

// Exists passes iff some outcome satisfies the clause, Forbidden iff
// none does, Always iff all do. Incomplete reports demote verdicts that
// would need completeness to Unknown; a found witness still decides.
std::vector<AssertionResult> evaluate_assertions(const ExploreReport& report,
                                                 const LitmusTest& test);

struct ComparisonRow {
  std::string model;
  ExploreReport report;
  std::vector<bool> witnesses;  // per assertion: some outcome satisfies it
};

std::vector<ComparisonRow> compare_models(const LitmusTest& test,
                                          const std::vector<MemoryModel>& models,
                                          const ExploreConfig& config = {});

// `samples` complete schedules picking uniformly among allowed positions
// from a deterministic stream; the result is a subset of the exhaustive
// outcome set and identical for identical seeds.
OutcomeSet random_walk(const LitmusTest& test, const MemoryModel& model,
                       std::uint64_t seed, std::uint64_t samples);

}  // namespace memlab
