#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "memlab/access.hpp"

namespace memlab {

// Register names are scoped to their thread.
struct RegisterId {
  std::string name;
  auto operator<=>(const RegisterId&) const = default;
};

struct Instruction {
  enum class Kind { Write, Read };
  Kind kind = Kind::Write;
  LocationId loc;
  Value value = 0;  // writes
  RegisterId dst;   // reads

  static Instruction make_write(LocationId loc, Value value) {
    return Instruction{Kind::Write, std::move(loc), value, {}};
  }
  static Instruction make_read(LocationId loc, RegisterId dst) {
    return Instruction{Kind::Read, std::move(loc), 0, std::move(dst)};
  }

  auto operator<=>(const Instruction&) const = default;
};

struct ThreadProgram {
  std::string name;  // source identifier, also used in assertion atoms
  ThreadId tid;
  std::vector<Instruction> body;

  auto operator<=>(const ThreadProgram&) const = default;
};

struct Atom {
  enum class Kind { RegEquals, MemEquals };
  Kind kind = Kind::MemEquals;
  ThreadId tid;    // RegEquals
  RegisterId reg;  // RegEquals
  LocationId loc;  // MemEquals
  Value value = 0;

  static Atom reg_equals(ThreadId tid, RegisterId reg, Value value) {
    return Atom{Kind::RegEquals, tid, std::move(reg), {}, value};
  }
  static Atom mem_equals(LocationId loc, Value value) {
    return Atom{Kind::MemEquals, {}, {}, std::move(loc), value};
  }

  auto operator<=>(const Atom&) const = default;
};

// A conjunction of atoms over reachable final states.
struct Assertion {
  enum class Kind { Exists, Forbidden, Always };
  Kind kind = Kind::Exists;
  std::vector<Atom> clause;  // non-empty

  auto operator<=>(const Assertion&) const = default;
};

const char* to_string(Assertion::Kind kind);

// Straight-line multi-thread program over shared locations with
// reachability assertions. Threads are numbered 0..T-1 in declaration
// order; every referenced location must appear in init.
struct LitmusTest {
  std::string name;
  std::map<LocationId, Value> init;
  std::vector<ThreadProgram> threads;
  std::vector<Assertion> assertions;

  auto operator<=>(const LitmusTest&) const = default;

  int total_accesses() const;
};

struct ParseError {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  std::string message;
};

struct ParseResult {
  std::optional<LitmusTest> test;
  std::vector<ParseError> errors;

  bool ok() const { return test.has_value(); }
};

// Total: any byte string yields either a validated test or errors.
ParseResult parse_litmus(const std::string& text);

struct ValidationError {
  enum class Kind {
    BadName,
    DuplicateThread,
    BadThreadNumbering,
    DuplicateRegister,
    UninitializedLocation,
    UnknownThread,
    UnknownRegister,
    EmptyClause
  };
  Kind kind;
  std::string message;
};

// Empty iff all LitmusTest invariants hold; works on constructed tests,
// not just parsed ones.
std::vector<ValidationError> validate(const LitmusTest& test);

// Canonical text; parse_litmus(format_litmus(t)) == t for valid t.
std::string format_litmus(const LitmusTest& test);

std::string to_string(const Atom& atom, const LitmusTest& test);
std::string to_string(const Assertion& assertion, const LitmusTest& test);

}  // namespace memlab
