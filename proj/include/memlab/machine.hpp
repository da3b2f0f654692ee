#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "memlab/access.hpp"

namespace memlab {

class MemoryModel;

// One broken state predicate; at most one record per predicate kind.
struct InvariantViolation {
  enum class Kind {
    DuplicateId,            // two queued accesses share an id
    IdGeCounter,            // a queued id is not below the counter
    ExecutedInQueue,        // an executed id still sits in the queue
    ResultWithoutExecution  // a read result for a never-executed id
  };
  Kind kind;
  std::string detail;
};

const char* to_string(InvariantViolation::Kind kind);

// Value of the latest (highest-index) pending write to `loc` by `tid`
// within the queue prefix, if any. The forwarding source for
// read-own-write.
std::optional<Value> latest_pending_write(
    std::span<const AccessEvent> queue_prefix, ThreadId tid,
    const LocationId& loc);

// The complete operational configuration: pending queue, fresh-id
// counter, memory, read results, and the set of executed ids. Plain
// value type; the explorer copies states to branch. Executed accesses
// leave the queue, so forwarding only ever sees still-pending writes.
struct MachineState {
  std::vector<AccessEvent> queue;
  AccessId counter = 0;
  std::map<LocationId, Value> memory;
  std::map<AccessId, Value> read_results;
  std::set<AccessId> executed_ids;

  MachineState() = default;
  explicit MachineState(std::map<LocationId, Value> initial_memory);

  // Append a fresh access at the right end of the queue. Returns its id.
  AccessId enqueue_write(ThreadId tid, const LocationId& loc, Value value);
  AccessId enqueue_read(ThreadId tid, const LocationId& loc);

  // Queue indices that may execute next, ascending: position i
  // qualifies iff queue[i] may swap past every earlier access. The head
  // always qualifies, so a non-empty queue can always make progress.
  std::vector<std::size_t> allowed_positions(const MemoryModel& model) const;

  // Value an executing read at `pos` observes: the latest pending own
  // write when the model forwards, memory otherwise. Requires
  // queue[pos] to be that read. Throws MissingLocation.
  Value value_for_read(const MemoryModel& model, ThreadId tid,
                       const LocationId& loc, std::size_t pos) const;

  // Execute the access at `pos` and remove it from the queue: writes
  // update memory, reads record their observed value. Relative order of
  // the remaining accesses is preserved. Throws IllegalSchedule when
  // `pos` is not in allowed_positions.
  void execute_at(const MemoryModel& model, std::size_t pos);

  bool is_quiescent() const { return queue.empty(); }

  // Empty iff all four state invariants hold.
  std::vector<InvariantViolation> check_invariants() const;
};

}  // namespace memlab
