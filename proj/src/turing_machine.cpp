#include <cctype>
#include <sstream>

#include "pgatt/machine.hpp"

namespace pgatt {

namespace {

constexpr std::size_t kBlock = 12;
constexpr std::size_t kHandler = 4;
// Continuation offsets inside the target block, per handled symbol.
constexpr std::array<std::uint64_t, 3> kOffset{9, 5, 1};

const Focus kTape{1};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  for (;;) {
    const std::size_t at = s.find(sep, begin);
    out.push_back(trim(s.substr(begin, at == std::string_view::npos ? s.npos : at - begin)));
    if (at == std::string_view::npos) return out;
    begin = at + 1;
  }
}

std::optional<std::size_t> parse_nat(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  std::size_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

std::optional<Symbol> parse_symbol(std::string_view s) {
  return s.size() == 1 ? symbol_from_char(s[0]) : std::nullopt;
}

// Flattens a repetition-free term; false if it contains a repetition.
bool flatten(const Term& t, std::vector<Instruction>& out) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      out.push_back(t.instruction());
      return true;
    case Term::Kind::Concat:
      return flatten(t.lhs(), out) && flatten(t.rhs(), out);
    case Term::Kind::Repeat:
      return false;
    case Term::Kind::Power: {
      std::vector<Instruction> once;
      if (!flatten(t.body(), once)) return false;
      if (once.size() * t.exponent() > (1u << 20)) return false;
      for (std::uint64_t i = 0; i < t.exponent(); ++i) out.insert(out.end(), once.begin(), once.end());
      return true;
    }
  }
  return false;
}

std::string position(std::size_t pos) { return "instruction " + std::to_string(pos + 1); }

}  // namespace

TmSpec parse_tm(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<std::array<std::optional<TmAction>, 3>> table;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto fail = [line_no](const std::string& msg) {
      return TmParseError("line " + std::to_string(line_no) + ": " + msg);
    };

    if (!n) {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos || trim(line.substr(0, colon)) != "states") {
        throw fail("expected 'states: n'");
      }
      n = parse_nat(trim(line.substr(colon + 1)));
      if (!n || *n == 0) throw fail("state count must be a positive integer");
      table.resize(*n);
      continue;
    }

    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos) throw fail("expected 'j,SYM -> ...'");
    const auto lhs = split(line.substr(0, arrow), ',');
    const auto rhs = split(line.substr(arrow + 2), ',');
    if (lhs.size() != 2) throw fail("expected 'j,SYM' before '->'");
    const auto j = parse_nat(lhs[0]);
    if (!j || *j >= *n) throw fail("state '" + std::string(lhs[0]) + "' out of range");
    const auto sym = parse_symbol(lhs[1]);
    if (!sym) throw fail("bad symbol '" + std::string(lhs[1]) + "'");

    TmAction act;
    const std::string_view last = rhs.back();
    if ((last == "accept" || last == "reject") && (rhs.size() == 1 || rhs.size() == 3)) {
      Symbol write = *sym;
      Direction dir = Direction::Stay;
      if (rhs.size() == 3) {
        const auto w = parse_symbol(rhs[0]);
        const auto d = direction_from_string(rhs[1]);
        if (!w) throw fail("bad symbol '" + std::string(rhs[0]) + "'");
        if (!d) throw fail("bad direction '" + std::string(rhs[1]) + "'");
        write = *w;
        dir = *d;
      }
      act = last == "accept" ? TmAction::accept(write, dir) : TmAction::reject(write, dir);
    } else if (rhs.size() == 3) {
      const auto w = parse_symbol(rhs[0]);
      const auto d = direction_from_string(rhs[1]);
      const auto next = parse_nat(rhs[2]);
      if (!w) throw fail("bad symbol '" + std::string(rhs[0]) + "'");
      if (!d) throw fail("bad direction '" + std::string(rhs[1]) + "'");
      if (!next || *next >= *n) throw fail("state '" + std::string(rhs[2]) + "' out of range");
      act = TmAction::move(*w, *d, *next);
    } else {
      throw fail("expected 'WRITE,DIR,j', 'accept' or 'reject' after '->'");
    }
    auto& slot = table[*j][index_of(*sym)];
    if (slot) throw fail("duplicate transition for " + std::string(lhs[0]) + "," + to_char(*sym));
    slot = act;
  }
  if (!n) throw TmParseError("missing 'states: n' header");

  TmSpec m;
  for (std::size_t j = 0; j < *n; ++j) {
    std::array<TmAction, 3> row;
    for (Symbol s : kAllSymbols) {
      if (!table[j][index_of(s)]) {
        throw TmParseError("no transition for " + std::to_string(j) + "," + to_char(s));
      }
      row[index_of(s)] = *table[j][index_of(s)];
    }
    m.delta.push_back(row);
  }
  return m;
}

std::string print_tm(const TmSpec& m) {
  std::ostringstream out;
  out << "states: " << m.state_count() << "\n";
  for (std::size_t j = 0; j < m.state_count(); ++j) {
    for (Symbol s : kAllSymbols) {
      const TmAction& a = m.delta[j][index_of(s)];
      out << j << "," << to_char(s) << " -> " << to_char(a.write) << "," << to_string(a.dir)
          << ",";
      switch (a.kind) {
        case TmAction::Kind::Move:
          out << a.next;
          break;
        case TmAction::Kind::Accept:
          out << "accept";
          break;
        case TmAction::Kind::Reject:
          out << "reject";
          break;
      }
      out << "\n";
    }
  }
  return out.str();
}

void check_tm(const TmSpec& m) {
  if (m.delta.empty()) throw std::invalid_argument("a Turing machine needs at least one state");
  for (const auto& row : m.delta) {
    for (const TmAction& a : row) {
      if (a.kind == TmAction::Kind::Move && a.next >= m.state_count()) {
        throw std::invalid_argument("transition target " + std::to_string(a.next) +
                                    " out of range");
      }
    }
  }
}

Term compile_tm(const TmSpec& m) {
  check_tm(m);
  const std::size_t n = m.state_count();
  std::vector<Instruction> body;
  body.reserve(kBlock * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (Symbol s : kAllSymbols) {
      const TmAction& a = m.delta[j][index_of(s)];
      body.push_back(Instruction::neg_test({kTape, TapeOp::test(s)}));
      body.push_back(Instruction::jump(3));
      body.push_back(Instruction::plain({kTape, TapeOp::set(a.write, a.dir)}));
      switch (a.kind) {
        case TmAction::Kind::Move:
          body.push_back(
              Instruction::jump(kBlock * ((a.next + n - j - 1) % n) + kOffset[index_of(s)]));
          break;
        case TmAction::Kind::Accept:
          body.push_back(Instruction::halt());
          break;
        case TmAction::Kind::Reject:
          body.push_back(Instruction::jump(0));
          break;
      }
    }
  }
  return Term::repeat(Term::sequence(body));
}

namespace {

// Reads the program into a machine, or explains the first defect.
std::optional<TmSpec> read_tmp(const Term& t, std::vector<std::string>& diagnostics) {
  if (t.kind() != Term::Kind::Repeat) {
    diagnostics.push_back("not of the form (t1 ; ... ; tn)*");
    return std::nullopt;
  }
  std::vector<Instruction> body;
  if (!flatten(t.body(), body)) {
    diagnostics.push_back("repeated body must be a finite instruction sequence");
    return std::nullopt;
  }
  if (body.empty() || body.size() % kBlock != 0) {
    diagnostics.push_back("body length " + std::to_string(body.size()) +
                          " is not a positive multiple of " + std::to_string(kBlock));
    return std::nullopt;
  }
  const std::size_t n = body.size() / kBlock;
  TmSpec m;
  m.delta.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (Symbol s : kAllSymbols) {
      const std::size_t at = kBlock * j + kHandler * index_of(s);
      const Instruction& test = body[at];
      const Instruction& skip = body[at + 1];
      const Instruction& set = body[at + 2];
      const Instruction& cont = body[at + 3];
      const std::string sym(1, to_char(s));
      if (test != Instruction::neg_test({kTape, TapeOp::test(s)})) {
        diagnostics.push_back(position(at) + ": expected -tt1.test:" + sym + ", found " +
                              to_string(test));
        return std::nullopt;
      }
      if (skip != Instruction::jump(3)) {
        diagnostics.push_back(position(at + 1) + ": expected #3, found " + to_string(skip));
        return std::nullopt;
      }
      std::optional<TmAction> act;
      if (set.kind == Instruction::Kind::Plain && set.basic.focus == kTape) {
        for (Symbol b : kAllSymbols) {
          for (Direction d : kAllDirections) {
            if (set.basic.op == TapeOp::set(b, d)) act = TmAction::reject(b, d);
          }
        }
      }
      if (!act) {
        diagnostics.push_back(position(at + 2) + ": expected tt1.set:b:d, found " +
                              to_string(set));
        return std::nullopt;
      }
      const std::uint64_t off = kOffset[index_of(s)];
      if (cont.kind == Instruction::Kind::Halt) {
        act->kind = TmAction::Kind::Accept;
      } else if (cont == Instruction::jump(0)) {
        act->kind = TmAction::Kind::Reject;
      } else if (cont.is_jump() && cont.length % kBlock == off && cont.length / kBlock < n) {
        act->kind = TmAction::Kind::Move;
        act->next = (j + 1 + cont.length / kBlock) % n;
      } else {
        std::ostringstream msg;
        msg << position(at + 3) << ": expected !, #0 or #(12i+" << off << ") with i < " << n
            << ", found " << to_string(cont);
        diagnostics.push_back(msg.str());
        return std::nullopt;
      }
      m.delta[j][index_of(s)] = *act;
    }
  }
  return m;
}

}  // namespace

TmpReport validate_tmp(const Term& t) {
  TmpReport report;
  auto m = read_tmp(t, report.diagnostics);
  report.valid = m.has_value();
  if (m) report.blocks = m->state_count();
  return report;
}

TmSpec decompile_tmp(const Term& t) {
  std::vector<std::string> diagnostics;
  auto m = read_tmp(t, diagnostics);
  if (!m) throw std::invalid_argument(diagnostics.front());
  return *m;
}

TmRun simulate_tm(const TmSpec& m, std::string_view input, std::uint64_t fuel) {
  check_tm(m);
  std::vector<Symbol> tape;
  for (char c : input) {
    auto s = symbol_from_char(c);
    if (!s || *s == Symbol::Blank) {
      throw std::invalid_argument("input words are over {0,1}");
    }
    tape.push_back(*s);
  }
  TmRun out;
  std::size_t state = 0;
  std::size_t head = 1;
  while (out.steps < fuel) {
    if (head > tape.size()) tape.resize(head, Symbol::Blank);
    const TmAction& a = m.delta[state][index_of(tape[head - 1])];
    tape[head - 1] = a.write;
    if (a.dir == Direction::Left) {
      head = head > 1 ? head - 1 : 1;
    } else if (a.dir == Direction::Right) {
      ++head;
    }
    ++out.steps;
    if (a.kind == TmAction::Kind::Accept) {
      out.status = TmRun::Status::Accepted;
      out.output = ctt(TapeState(tape, head));
      out.head = head;
      return out;
    }
    if (a.kind == TmAction::Kind::Reject) {
      out.status = TmRun::Status::Rejected;
      out.head = head;
      return out;
    }
    state = a.next;
  }
  out.status = TmRun::Status::OutOfFuel;
  out.head = head;
  return out;
}

}  // namespace pgatt
