#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace memlab {

// Values stored in memory and registers.
using Value = std::int64_t;

// Unique per enqueued access within one machine run; dense, starting at 0.
using AccessId = std::uint64_t;

struct ThreadId {
  int index = 0;
  auto operator<=>(const ThreadId&) const = default;
};

struct LocationId {
  std::string name;
  auto operator<=>(const LocationId&) const = default;
};

enum class AccessKind { Read, Write };

// One pending request in the memory queue. `value` is meaningful for
// writes only; factories zero it for reads so default equality works.
struct AccessEvent {
  AccessKind kind = AccessKind::Read;
  ThreadId tid;
  LocationId loc;
  Value value = 0;
  AccessId id = 0;

  static AccessEvent make_write(ThreadId tid, LocationId loc, Value value,
                                AccessId id) {
    return AccessEvent{AccessKind::Write, tid, std::move(loc), value, id};
  }
  static AccessEvent make_read(ThreadId tid, LocationId loc, AccessId id) {
    return AccessEvent{AccessKind::Read, tid, std::move(loc), 0, id};
  }

  bool is_write() const { return kind == AccessKind::Write; }
  bool is_read() const { return kind == AccessKind::Read; }

  auto operator<=>(const AccessEvent&) const = default;
};

// "W(T0,v,1,#0)" / "R(T1,w,#3)" for diagnostics.
std::string to_string(const AccessEvent& ev);

}  // namespace memlab
