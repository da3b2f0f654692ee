#include "memlab/machine.hpp"

#include <sstream>
#include <utility>

#include "memlab/error.hpp"
#include "memlab/model.hpp"

namespace memlab {

std::string to_string(const AccessEvent& ev) {
  std::ostringstream out;
  if (ev.is_write()) {
    out << "W(T" << ev.tid.index << "," << ev.loc.name << "," << ev.value
        << ",#" << ev.id << ")";
  } else {
    out << "R(T" << ev.tid.index << "," << ev.loc.name << ",#" << ev.id << ")";
  }
  return out.str();
}

const char* to_string(InvariantViolation::Kind kind) {
  switch (kind) {
    case InvariantViolation::Kind::DuplicateId:
      return "DuplicateId";
    case InvariantViolation::Kind::IdGeCounter:
      return "IdGeCounter";
    case InvariantViolation::Kind::ExecutedInQueue:
      return "ExecutedInQueue";
    case InvariantViolation::Kind::ResultWithoutExecution:
      return "ResultWithoutExecution";
  }
  return "?";
}

std::optional<Value> latest_pending_write(
    std::span<const AccessEvent> queue_prefix, ThreadId tid,
    const LocationId& loc) {
  for (auto it = queue_prefix.rbegin(); it != queue_prefix.rend(); ++it) {
    if (it->is_write() && it->tid == tid && it->loc == loc) return it->value;
  }
  return std::nullopt;
}

MachineState::MachineState(std::map<LocationId, Value> initial_memory)
    : memory(std::move(initial_memory)) {}

AccessId MachineState::enqueue_write(ThreadId tid, const LocationId& loc,
                                     Value value) {
  AccessId id = counter++;
  queue.push_back(AccessEvent::make_write(tid, loc, value, id));
  return id;
}

AccessId MachineState::enqueue_read(ThreadId tid, const LocationId& loc) {
  AccessId id = counter++;
  queue.push_back(AccessEvent::make_read(tid, loc, id));
  return id;
}

std::vector<std::size_t> MachineState::allowed_positions(
    const MemoryModel& model) const {
  std::vector<std::size_t> allowed;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < i && ok; ++j) {
      ok = model.may_swap(queue[j], queue[i]);
    }
    if (ok) allowed.push_back(i);
  }
  return allowed;
}

Value MachineState::value_for_read(const MemoryModel& model, ThreadId tid,
                                   const LocationId& loc,
                                   std::size_t pos) const {
  if (model.read_early()) {
    std::span<const AccessEvent> prefix(queue.data(), pos);
    if (auto forwarded = latest_pending_write(prefix, tid, loc)) {
      return *forwarded;
    }
  }
  auto it = memory.find(loc);
  if (it == memory.end()) throw MissingLocation(loc);
  return it->second;
}

void MachineState::execute_at(const MemoryModel& model, std::size_t pos) {
  if (pos >= queue.size()) throw IllegalSchedule(pos);
  for (std::size_t j = 0; j < pos; ++j) {
    if (!model.may_swap(queue[j], queue[pos])) throw IllegalSchedule(pos);
  }
  const AccessEvent ev = queue[pos];
  // Reads observe the pre-state; compute before touching the queue.
  std::optional<Value> observed;
  if (ev.is_read()) observed = value_for_read(model, ev.tid, ev.loc, pos);
  queue.erase(queue.begin() + static_cast<std::ptrdiff_t>(pos));
  executed_ids.insert(ev.id);
  if (ev.is_write()) {
    memory[ev.loc] = ev.value;
  } else {
    read_results[ev.id] = *observed;
  }
}

std::vector<InvariantViolation> MachineState::check_invariants() const {
  std::vector<InvariantViolation> found;
  auto add = [&found](InvariantViolation::Kind kind, const std::string& detail) {
    found.push_back(InvariantViolation{kind, detail});
  };

  std::set<AccessId> seen;
  for (const AccessEvent& ev : queue) {
    if (!seen.insert(ev.id).second) {
      add(InvariantViolation::Kind::DuplicateId,
          "id #" + std::to_string(ev.id) + " queued twice");
      break;
    }
  }
  for (const AccessEvent& ev : queue) {
    if (ev.id >= counter) {
      add(InvariantViolation::Kind::IdGeCounter,
          "queued id #" + std::to_string(ev.id) + " not below counter " +
              std::to_string(counter));
      break;
    }
  }
  for (const AccessEvent& ev : queue) {
    if (executed_ids.count(ev.id) != 0) {
      add(InvariantViolation::Kind::ExecutedInQueue,
          "id #" + std::to_string(ev.id) + " both executed and queued");
      break;
    }
  }
  for (const auto& [id, value] : read_results) {
    if (executed_ids.count(id) == 0) {
      add(InvariantViolation::Kind::ResultWithoutExecution,
          "read result for never-executed id #" + std::to_string(id));
      break;
    }
  }
  return found;
}

}  // namespace memlab
