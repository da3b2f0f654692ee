#include "memlab/litmus.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <utility>

namespace memlab {

namespace {

bool is_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') {
    return false;
  }
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::optional<Value> parse_value(const std::string& s) {
  Value v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return v;
}

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    tokens.push_back(
        Token{line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

// Assertion atoms mention threads by name, so they can only be resolved
// once every thread line has been seen; the parser keeps them raw.
struct RawAtom {
  std::optional<std::string> thread;  // present for reg atoms
  std::string target;                 // register or location
  Value value = 0;
  int line = 0;
  int column = 0;
};

struct RawAssertion {
  Assertion::Kind kind;
  std::vector<RawAtom> atoms;
};

struct LocRef {
  LocationId loc;
  int line = 0;
  int column = 0;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  ParseResult run() {
    std::istringstream in(text_);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.resize(hash);
      }
      handle_line(line_no, tokenize(line));
    }
    finish();
    ParseResult result;
    if (errors_.empty()) {
      test_.name = name_.value_or("");
      result.test = std::move(test_);
    } else {
      result.errors = std::move(errors_);
    }
    return result;
  }

 private:
  void error(int line, int column, std::string message) {
    errors_.push_back(ParseError{line, column, std::move(message)});
  }

  void expect_ident(const Token& tok, int line, const char* what) {
    if (!is_ident(tok.text)) {
      error(line, tok.column,
            std::string("invalid ") + what + " '" + tok.text + "'");
    }
  }

  void no_extra(const std::vector<Token>& tokens, std::size_t used,
                int line) {
    if (tokens.size() > used) {
      error(line, tokens[used].column,
            "unexpected token '" + tokens[used].text + "'");
    }
  }

  void handle_line(int line, const std::vector<Token>& tokens) {
    if (tokens.empty()) return;
    const std::string& keyword = tokens[0].text;
    if (!saw_content_) {
      saw_content_ = true;
      if (keyword != "name") {
        error(line, tokens[0].column, "first line must be 'name <ident>'");
        name_issue_reported_ = true;
      }
    }
    if (keyword == "name") {
      handle_name(line, tokens);
    } else if (keyword == "init") {
      handle_init(line, tokens);
    } else if (keyword == "thread") {
      handle_thread(line, tokens);
    } else if (keyword == "write") {
      handle_write(line, tokens);
    } else if (keyword == "read") {
      handle_read(line, tokens);
    } else if (keyword == "exists" || keyword == "forbidden" ||
               keyword == "always") {
      handle_assertion(line, tokens);
    } else {
      error(line, tokens[0].column, "unknown directive '" + keyword + "'");
    }
  }

  void handle_name(int line, const std::vector<Token>& tokens) {
    if (name_) error(line, tokens[0].column, "duplicate name line");
    if (tokens.size() < 2) {
      error(line, tokens[0].column, "expected test name after 'name'");
      name_issue_reported_ = true;
      return;
    }
    expect_ident(tokens[1], line, "test name");
    no_extra(tokens, 2, line);
    if (!name_) name_ = tokens[1].text;
  }

  void handle_init(int line, const std::vector<Token>& tokens) {
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const Token& tok = tokens[i];
      auto eq = tok.text.find('=');
      if (eq == std::string::npos) {
        error(line, tok.column, "expected <loc>=<int>, got '" + tok.text + "'");
        continue;
      }
      std::string loc = tok.text.substr(0, eq);
      std::string rhs = tok.text.substr(eq + 1);
      if (!is_ident(loc)) {
        error(line, tok.column, "invalid location name '" + loc + "'");
        continue;
      }
      auto value = parse_value(rhs);
      if (!value) {
        error(line, tok.column, "expected integer, got '" + rhs + "'");
        continue;
      }
      if (!test_.init.emplace(LocationId{loc}, *value).second) {
        error(line, tok.column, "duplicate init for location " + loc);
      }
    }
  }

  void handle_thread(int line, const std::vector<Token>& tokens) {
    if (tokens.size() < 2) {
      error(line, tokens[0].column, "expected thread name after 'thread'");
      return;
    }
    std::string decl = tokens[1].text;
    if (decl.empty() || decl.back() != ':') {
      error(line, tokens[1].column, "thread declaration must end with ':'");
      return;
    }
    decl.pop_back();
    if (!is_ident(decl)) {
      error(line, tokens[1].column, "invalid thread name '" + decl + "'");
      return;
    }
    no_extra(tokens, 2, line);
    for (const ThreadProgram& t : test_.threads) {
      if (t.name == decl) {
        error(line, tokens[1].column, "duplicate thread " + decl);
        return;
      }
    }
    ThreadProgram program;
    program.name = decl;
    program.tid = ThreadId{static_cast<int>(test_.threads.size())};
    test_.threads.push_back(std::move(program));
    registers_.emplace_back();
  }

  void handle_write(int line, const std::vector<Token>& tokens) {
    if (test_.threads.empty()) {
      error(line, tokens[0].column, "instruction outside thread");
      return;
    }
    if (tokens.size() < 3) {
      error(line, tokens[0].column, "expected 'write <loc> <int>'");
      return;
    }
    expect_ident(tokens[1], line, "location name");
    auto value = parse_value(tokens[2].text);
    if (!value) {
      error(line, tokens[2].column,
            "expected integer, got '" + tokens[2].text + "'");
      return;
    }
    no_extra(tokens, 3, line);
    LocationId loc{tokens[1].text};
    loc_refs_.push_back(LocRef{loc, line, tokens[1].column});
    test_.threads.back().body.push_back(Instruction::make_write(loc, *value));
  }

  void handle_read(int line, const std::vector<Token>& tokens) {
    if (test_.threads.empty()) {
      error(line, tokens[0].column, "instruction outside thread");
      return;
    }
    if (tokens.size() < 4 || tokens[2].text != "->") {
      error(line, tokens[0].column, "expected 'read <loc> -> <reg>'");
      return;
    }
    expect_ident(tokens[1], line, "location name");
    expect_ident(tokens[3], line, "register name");
    no_extra(tokens, 4, line);
    std::string reg = tokens[3].text;
    if (!registers_.back().insert(reg).second) {
      error(line, tokens[3].column,
            "register " + reg + " assigned twice in thread " +
                test_.threads.back().name);
      return;
    }
    LocationId loc{tokens[1].text};
    loc_refs_.push_back(LocRef{loc, line, tokens[1].column});
    test_.threads.back().body.push_back(
        Instruction::make_read(loc, RegisterId{reg}));
  }

  void handle_assertion(int line, const std::vector<Token>& tokens) {
    RawAssertion assertion;
    if (tokens[0].text == "exists") {
      assertion.kind = Assertion::Kind::Exists;
    } else if (tokens[0].text == "forbidden") {
      assertion.kind = Assertion::Kind::Forbidden;
    } else {
      assertion.kind = Assertion::Kind::Always;
    }
    std::size_t i = 1;
    while (true) {
      if (i >= tokens.size()) {
        error(line, tokens[i - 1].column + 1, "expected atom");
        return;
      }
      auto atom = parse_atom(line, tokens[i]);
      if (!atom) return;
      assertion.atoms.push_back(std::move(*atom));
      ++i;
      if (i >= tokens.size()) break;
      if (tokens[i].text != "/\\") {
        error(line, tokens[i].column,
              "expected '/\\' between atoms, got '" + tokens[i].text + "'");
        return;
      }
      ++i;
    }
    raw_assertions_.push_back(std::move(assertion));
  }

  std::optional<RawAtom> parse_atom(int line, const Token& tok) {
    auto eq = tok.text.find('=');
    if (eq == std::string::npos) {
      error(line, tok.column,
            "expected atom of the form <loc>=<int> or <thread>:<reg>=<int>");
      return std::nullopt;
    }
    std::string lhs = tok.text.substr(0, eq);
    auto value = parse_value(tok.text.substr(eq + 1));
    if (!value) {
      error(line, tok.column,
            "expected integer, got '" + tok.text.substr(eq + 1) + "'");
      return std::nullopt;
    }
    RawAtom atom;
    atom.value = *value;
    atom.line = line;
    atom.column = tok.column;
    if (auto colon = lhs.find(':'); colon != std::string::npos) {
      atom.thread = lhs.substr(0, colon);
      atom.target = lhs.substr(colon + 1);
      if (!is_ident(*atom.thread) || !is_ident(atom.target)) {
        error(line, tok.column, "invalid atom '" + tok.text + "'");
        return std::nullopt;
      }
    } else {
      atom.target = lhs;
      if (!is_ident(atom.target)) {
        error(line, tok.column, "invalid atom '" + tok.text + "'");
        return std::nullopt;
      }
    }
    return atom;
  }

  void finish() {
    if (!name_ && !name_issue_reported_) {
      error(1, 1, "missing 'name' line");
    }
    std::set<std::string> reported;
    auto check_loc = [this, &reported](const LocationId& loc, int line,
                                       int column) {
      if (test_.init.count(loc) == 0 && reported.insert(loc.name).second) {
        error(line, column, "location " + loc.name + " not initialized");
      }
    };
    for (const LocRef& ref : loc_refs_) {
      check_loc(ref.loc, ref.line, ref.column);
    }
    for (const RawAssertion& raw : raw_assertions_) {
      Assertion assertion;
      assertion.kind = raw.kind;
      for (const RawAtom& atom : raw.atoms) {
        if (atom.thread) {
          int tid = -1;
          for (const ThreadProgram& t : test_.threads) {
            if (t.name == *atom.thread) tid = t.tid.index;
          }
          if (tid < 0) {
            error(atom.line, atom.column, "unknown thread " + *atom.thread);
            continue;
          }
          if (registers_[static_cast<std::size_t>(tid)].count(atom.target) ==
              0) {
            error(atom.line, atom.column,
                  "unknown register " + atom.target + " in thread " +
                      *atom.thread);
            continue;
          }
          assertion.clause.push_back(Atom::reg_equals(
              ThreadId{tid}, RegisterId{atom.target}, atom.value));
        } else {
          check_loc(LocationId{atom.target}, atom.line, atom.column);
          assertion.clause.push_back(
              Atom::mem_equals(LocationId{atom.target}, atom.value));
        }
      }
      test_.assertions.push_back(std::move(assertion));
    }
  }

  const std::string& text_;
  LitmusTest test_;
  std::optional<std::string> name_;
  bool saw_content_ = false;
  bool name_issue_reported_ = false;
  std::vector<std::set<std::string>> registers_;  // parallel to threads
  std::vector<LocRef> loc_refs_;
  std::vector<RawAssertion> raw_assertions_;
  std::vector<ParseError> errors_;
};

}  // namespace

int LitmusTest::total_accesses() const {
  int n = 0;
  for (const ThreadProgram& t : threads) {
    n += static_cast<int>(t.body.size());
  }
  return n;
}

const char* to_string(Assertion::Kind kind) {
  switch (kind) {
    case Assertion::Kind::Exists:
      return "exists";
    case Assertion::Kind::Forbidden:
      return "forbidden";
    case Assertion::Kind::Always:
      return "always";
  }
  return "?";
}

ParseResult parse_litmus(const std::string& text) {
  return Parser(text).run();
}

std::vector<ValidationError> validate(const LitmusTest& test) {
  std::vector<ValidationError> out;
  auto add = [&out](ValidationError::Kind kind, std::string message) {
    out.push_back(ValidationError{kind, std::move(message)});
  };

  if (!is_ident(test.name)) {
    add(ValidationError::Kind::BadName,
        "invalid test name '" + test.name + "'");
  }
  for (const auto& [loc, value] : test.init) {
    if (!is_ident(loc.name)) {
      add(ValidationError::Kind::BadName,
          "invalid location name '" + loc.name + "'");
    }
  }

  std::set<std::string> thread_names;
  std::vector<std::set<std::string>> registers;
  for (std::size_t i = 0; i < test.threads.size(); ++i) {
    const ThreadProgram& t = test.threads[i];
    if (!is_ident(t.name)) {
      add(ValidationError::Kind::BadName,
          "invalid thread name '" + t.name + "'");
    } else if (!thread_names.insert(t.name).second) {
      add(ValidationError::Kind::DuplicateThread, "duplicate thread " + t.name);
    }
    if (t.tid.index != static_cast<int>(i)) {
      add(ValidationError::Kind::BadThreadNumbering,
          "thread " + t.name + " has index " + std::to_string(t.tid.index) +
              ", expected " + std::to_string(i));
    }
    registers.emplace_back();
    for (const Instruction& instr : t.body) {
      if (!is_ident(instr.loc.name)) {
        add(ValidationError::Kind::BadName,
            "invalid location name '" + instr.loc.name + "'");
      } else if (test.init.count(instr.loc) == 0) {
        add(ValidationError::Kind::UninitializedLocation,
            "location " + instr.loc.name + " not initialized");
      }
      if (instr.kind == Instruction::Kind::Read) {
        if (!is_ident(instr.dst.name)) {
          add(ValidationError::Kind::BadName,
              "invalid register name '" + instr.dst.name + "'");
        } else if (!registers.back().insert(instr.dst.name).second) {
          add(ValidationError::Kind::DuplicateRegister,
              "register " + instr.dst.name + " assigned twice in thread " +
                  t.name);
        }
      }
    }
  }

  for (const Assertion& assertion : test.assertions) {
    if (assertion.clause.empty()) {
      add(ValidationError::Kind::EmptyClause, "assertion has empty clause");
    }
    for (const Atom& atom : assertion.clause) {
      if (atom.kind == Atom::Kind::RegEquals) {
        if (atom.tid.index < 0 ||
            atom.tid.index >= static_cast<int>(test.threads.size())) {
          add(ValidationError::Kind::UnknownThread,
              "assertion references unknown thread index " +
                  std::to_string(atom.tid.index));
          continue;
        }
        const auto& regs = registers[static_cast<std::size_t>(atom.tid.index)];
        if (regs.count(atom.reg.name) == 0) {
          add(ValidationError::Kind::UnknownRegister,
              "register " + atom.reg.name + " not assigned in thread " +
                  test.threads[static_cast<std::size_t>(atom.tid.index)].name);
        }
      } else {
        if (!is_ident(atom.loc.name)) {
          add(ValidationError::Kind::BadName,
              "invalid location name '" + atom.loc.name + "'");
        } else if (test.init.count(atom.loc) == 0) {
          add(ValidationError::Kind::UninitializedLocation,
              "location " + atom.loc.name + " not initialized");
        }
      }
    }
  }
  return out;
}

std::string to_string(const Atom& atom, const LitmusTest& test) {
  std::string out;
  if (atom.kind == Atom::Kind::RegEquals) {
    std::size_t index = static_cast<std::size_t>(atom.tid.index);
    if (index < test.threads.size()) {
      out += test.threads[index].name;
    } else {
      out += "T" + std::to_string(atom.tid.index);
    }
    out += ":" + atom.reg.name;
  } else {
    out += atom.loc.name;
  }
  out += "=" + std::to_string(atom.value);
  return out;
}

std::string to_string(const Assertion& assertion, const LitmusTest& test) {
  std::string out = to_string(assertion.kind);
  for (std::size_t i = 0; i < assertion.clause.size(); ++i) {
    out += (i == 0) ? " " : " /\\ ";
    out += to_string(assertion.clause[i], test);
  }
  return out;
}

std::string format_litmus(const LitmusTest& test) {
  std::string out = "name " + test.name + "\n";
  if (!test.init.empty()) {
    out += "init";
    for (const auto& [loc, value] : test.init) {
      out += " " + loc.name + "=" + std::to_string(value);
    }
    out += "\n";
  }
  for (const ThreadProgram& t : test.threads) {
    out += "thread " + t.name + ":\n";
    for (const Instruction& instr : t.body) {
      if (instr.kind == Instruction::Kind::Write) {
        out += "  write " + instr.loc.name + " " +
               std::to_string(instr.value) + "\n";
      } else {
        out += "  read " + instr.loc.name + " -> " + instr.dst.name + "\n";
      }
    }
  }
  for (const Assertion& assertion : test.assertions) {
    out += to_string(assertion, test) + "\n";
  }
  return out;
}

}  // namespace memlab
