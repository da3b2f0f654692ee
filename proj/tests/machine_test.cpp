#include "memlab/machine.hpp"

#include <random>

#include "doctest.h"
#include "memlab/error.hpp"
#include "memlab/model.hpp"

using namespace memlab;

namespace {

LocationId loc(const char* name) { return LocationId{std::string(name)}; }
ThreadId tid(int index) { return ThreadId{index}; }

MachineState machine_with(std::map<LocationId, Value> memory) {
  return MachineState(std::move(memory));
}

}  // namespace

TEST_CASE("fresh machine") {
  MachineState empty = machine_with({});
  CHECK(empty.queue.empty());
  CHECK(empty.counter == 0);
  CHECK(empty.memory.empty());
  CHECK(empty.read_results.empty());
  CHECK(empty.executed_ids.empty());
  CHECK(empty.is_quiescent());

  MachineState dekker = machine_with({{loc("v"), 0}, {loc("w"), 0}});
  CHECK(dekker.memory == std::map<LocationId, Value>{{loc("v"), 0},
                                                     {loc("w"), 0}});

  MachineState seven = machine_with({{loc("x"), 7}});
  CHECK(seven.value_for_read(MemoryModel{}, tid(0), loc("x"), 0) == 7);
}

TEST_CASE("enqueue appends at the right end with fresh ids") {
  MachineState s = machine_with({{loc("v"), 0}, {loc("w"), 0}});

  AccessId first = s.enqueue_write(tid(1), loc("v"), 1);
  CHECK(first == 0);
  CHECK(s.counter == 1);
  REQUIRE(s.queue.size() == 1);
  CHECK(s.queue[0] == AccessEvent::make_write(tid(1), loc("v"), 1, 0));
  CHECK_FALSE(s.is_quiescent());

  AccessId second = s.enqueue_read(tid(1), loc("w"));
  CHECK(second == 1);
  CHECK(s.queue[1] == AccessEvent::make_read(tid(1), loc("w"), 1));

  // Arrival order is preserved across threads.
  s.enqueue_write(tid(2), loc("w"), 9);
  CHECK(s.queue[2].tid == tid(2));
  CHECK(s.queue[2].id == 2);
}

TEST_CASE("fresh read queue") {
  MachineState s = machine_with({{loc("w"), 0}});
  s.enqueue_read(tid(1), loc("w"));
  REQUIRE(s.queue.size() == 1);
  CHECK(s.queue[0] == AccessEvent::make_read(tid(1), loc("w"), 0));
}

TEST_CASE("allowed positions under SC and TSO") {
  MachineState s = machine_with({{loc("v"), 0}, {loc("w"), 0}});
  s.enqueue_write(tid(1), loc("v"), 1);
  s.enqueue_read(tid(1), loc("w"));

  CHECK(s.allowed_positions(MemoryModel{}) ==
        std::vector<std::size_t>{0});
  CHECK(s.allowed_positions(MemoryModel::product("TSO")) ==
        std::vector<std::size_t>{0, 1});

  MachineState empty = machine_with({});
  CHECK(empty.allowed_positions(MemoryModel{}).empty());
}

TEST_CASE("allowed positions are strictly ascending and head-inclusive") {
  MachineState s = machine_with({{loc("v"), 0}, {loc("w"), 0}});
  s.enqueue_write(tid(0), loc("v"), 1);
  s.enqueue_read(tid(0), loc("w"));
  s.enqueue_write(tid(1), loc("w"), 1);
  s.enqueue_read(tid(1), loc("v"));
  for (const MemoryModel& model :
       {MemoryModel{}, MemoryModel::product("IBM370"),
        MemoryModel::product("TSO"), MemoryModel::product("PSO")}) {
    auto positions = s.allowed_positions(model);
    REQUIRE_FALSE(positions.empty());
    CHECK(positions.front() == 0);
    for (std::size_t i = 1; i < positions.size(); ++i) {
      CHECK(positions[i - 1] < positions[i]);
      CHECK(positions[i] < s.queue.size());
    }
  }
}

TEST_CASE("latest pending write scans backwards per thread and location") {
  std::vector<AccessEvent> one{
      AccessEvent::make_write(tid(1), loc("v"), 5, 0)};
  CHECK(latest_pending_write(one, tid(1), loc("v")) == Value{5});

  std::vector<AccessEvent> other{
      AccessEvent::make_write(tid(2), loc("v"), 5, 0)};
  CHECK_FALSE(latest_pending_write(other, tid(1), loc("v")).has_value());

  std::vector<AccessEvent> two{
      AccessEvent::make_write(tid(1), loc("v"), 5, 0),
      AccessEvent::make_write(tid(1), loc("v"), 9, 1)};
  CHECK(latest_pending_write(two, tid(1), loc("v")) == Value{9});
}

TEST_CASE("value_for_read forwards only when the model allows it") {
  MemoryModel sc;
  MemoryModel tso = MemoryModel::product("TSO");
  MemoryModel ibm = MemoryModel::product("IBM370");

  MachineState plain = machine_with({{loc("v"), 0}});
  plain.enqueue_read(tid(1), loc("v"));
  CHECK(plain.value_for_read(sc, tid(1), loc("v"), 0) == 0);

  MachineState pending = machine_with({{loc("v"), 0}});
  pending.enqueue_write(tid(1), loc("v"), 5);
  pending.enqueue_read(tid(1), loc("v"));
  CHECK(pending.value_for_read(tso, tid(1), loc("v"), 1) == 5);

  // No read-early feature: the other thread's read goes to memory.
  MachineState cross = machine_with({{loc("v"), 0}});
  cross.enqueue_write(tid(1), loc("v"), 5);
  cross.enqueue_read(tid(2), loc("v"));
  CHECK(cross.value_for_read(ibm, tid(2), loc("v"), 1) == 0);

  MachineState uninit = machine_with({});
  uninit.enqueue_read(tid(1), loc("z"));
  CHECK_THROWS_WITH_AS(uninit.value_for_read(sc, tid(1), loc("z"), 0),
                       "location z not initialized", MissingLocation);
}

TEST_CASE("execute_at applies writes, records reads, keeps order") {
  MemoryModel sc;

  MachineState w = machine_with({{loc("v"), 0}});
  w.enqueue_write(tid(1), loc("v"), 1);
  w.execute_at(sc, 0);
  CHECK(w.memory.at(loc("v")) == 1);
  CHECK(w.queue.empty());
  CHECK(w.executed_ids == std::set<AccessId>{0});
  CHECK(w.is_quiescent());

  MachineState r = machine_with({{loc("w"), 0}});
  r.enqueue_read(tid(1), loc("w"));
  r.execute_at(sc, 0);
  CHECK(r.read_results == std::map<AccessId, Value>{{0, 0}});

  // TSO forwarding: the read completes early with the pending value and
  // the write still lands in memory afterwards.
  MemoryModel tso = MemoryModel::product("TSO");
  MachineState fwd = machine_with({{loc("v"), 0}});
  fwd.enqueue_write(tid(1), loc("v"), 5);
  fwd.enqueue_read(tid(1), loc("v"));
  fwd.execute_at(tso, 1);
  CHECK(fwd.read_results == std::map<AccessId, Value>{{1, 5}});
  REQUIRE(fwd.queue.size() == 1);
  CHECK(fwd.queue[0].id == 0);
  fwd.execute_at(tso, 0);
  CHECK(fwd.memory.at(loc("v")) == 5);
  CHECK(fwd.is_quiescent());
}

TEST_CASE("execute_at refuses positions the model forbids") {
  MachineState s = machine_with({{loc("v"), 0}, {loc("w"), 0}});
  s.enqueue_write(tid(1), loc("v"), 1);
  s.enqueue_read(tid(1), loc("w"));
  CHECK_THROWS_AS(s.execute_at(MemoryModel{}, 1), IllegalSchedule);
  CHECK_THROWS_AS(s.execute_at(MemoryModel{}, 2), IllegalSchedule);
  // The failed calls must not have touched anything.
  CHECK(s.queue.size() == 2);
  CHECK(s.executed_ids.empty());
}

TEST_CASE("execute_at conserves accesses one at a time") {
  MemoryModel pso = MemoryModel::product("PSO");
  MachineState s = machine_with({{loc("v"), 0}, {loc("w"), 0}});
  s.enqueue_write(tid(0), loc("v"), 1);
  s.enqueue_write(tid(0), loc("w"), 2);
  s.enqueue_read(tid(1), loc("v"));
  while (!s.is_quiescent()) {
    auto before_queue = s.queue.size();
    auto before_done = s.executed_ids.size();
    auto positions = s.allowed_positions(pso);
    REQUIRE_FALSE(positions.empty());
    s.execute_at(pso, positions.back());
    CHECK(s.queue.size() == before_queue - 1);
    CHECK(s.executed_ids.size() == before_done + 1);
    CHECK(s.check_invariants().empty());
  }
}

TEST_CASE("invariant checks flag hand-built corruption") {
  MachineState healthy = machine_with({{loc("v"), 0}});
  healthy.enqueue_write(tid(1), loc("v"), 1);
  CHECK(healthy.check_invariants().empty());

  MachineState dup;
  dup.queue.push_back(AccessEvent::make_write(tid(1), loc("v"), 1, 3));
  dup.queue.push_back(AccessEvent::make_read(tid(2), loc("v"), 3));
  dup.counter = 4;
  auto violations = dup.check_invariants();
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == InvariantViolation::Kind::DuplicateId);

  MachineState stale;
  stale.queue.push_back(AccessEvent::make_write(tid(1), loc("v"), 1, 5));
  stale.counter = 1;
  violations = stale.check_invariants();
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == InvariantViolation::Kind::IdGeCounter);

  MachineState ghost;
  ghost.queue.push_back(AccessEvent::make_write(tid(1), loc("v"), 1, 0));
  ghost.counter = 1;
  ghost.executed_ids.insert(0);
  violations = ghost.check_invariants();
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == InvariantViolation::Kind::ExecutedInQueue);

  MachineState orphan;
  orphan.counter = 1;
  orphan.read_results[0] = 7;
  violations = orphan.check_invariants();
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind ==
        InvariantViolation::Kind::ResultWithoutExecution);
}

TEST_CASE("ids stay unique across random enqueue/execute runs") {
  std::mt19937_64 rng(7);
  MemoryModel tso = MemoryModel::product("TSO");
  for (int run = 0; run < 20; ++run) {
    MachineState s = machine_with({{loc("v"), 0}, {loc("w"), 0}});
    for (int step = 0; step < 40; ++step) {
      switch (rng() % 4) {
        case 0:
          s.enqueue_write(tid(static_cast<int>(rng() % 2)),
                          rng() % 2 ? loc("v") : loc("w"),
                          static_cast<Value>(rng() % 5));
          break;
        case 1:
          s.enqueue_read(tid(static_cast<int>(rng() % 2)),
                         rng() % 2 ? loc("v") : loc("w"));
          break;
        default: {
          auto positions = s.allowed_positions(tso);
          if (!positions.empty()) {
            s.execute_at(tso, positions[rng() % positions.size()]);
          }
          break;
        }
      }
      REQUIRE(s.check_invariants().empty());
    }
  }
}

TEST_CASE("SC executions preserve per-thread program order") {
  // Enumerate every SC schedule of a 2x2 program and project the
  // execution sequence onto each thread.
  MemoryModel sc;
  MachineState start = machine_with({{loc("v"), 0}, {loc("w"), 0}});
  start.enqueue_write(tid(0), loc("v"), 1);
  start.enqueue_read(tid(0), loc("w"));
  start.enqueue_write(tid(1), loc("w"), 1);
  start.enqueue_read(tid(1), loc("v"));

  std::vector<ThreadId> owner{tid(0), tid(0), tid(1), tid(1)};
  int leaves = 0;
  auto walk = [&](auto&& self, const MachineState& state,
                  const std::vector<AccessId>& trace) -> void {
    if (state.is_quiescent()) {
      ++leaves;
      std::map<int, AccessId> last;
      for (AccessId id : trace) {
        int t = owner[static_cast<std::size_t>(id)].index;
        if (last.count(t)) CHECK(last[t] < id);
        last[t] = id;
      }
      return;
    }
    for (std::size_t pos : state.allowed_positions(sc)) {
      MachineState child = state;
      AccessId id = state.queue[pos].id;
      child.execute_at(sc, pos);
      auto extended = trace;
      extended.push_back(id);
      self(self, child, extended);
    }
  };
  walk(walk, start, {});
  CHECK(leaves == 6);  // 4!/(2!2!) interleavings
}

TEST_CASE("access event rendering") {
  CHECK(to_string(AccessEvent::make_write(tid(0), loc("v"), 1, 0)) ==
        "W(T0,v,1,#0)");
  CHECK(to_string(AccessEvent::make_read(tid(1), loc("w"), 3)) ==
        "R(T1,w,#3)");
  CHECK(std::string(to_string(InvariantViolation::Kind::DuplicateId)) ==
        "DuplicateId");
}
