// Concrete syntax for terms:
//
//   seq   := item (';' item)*          right-associative concatenation
//   item  := instr | '(' seq ')' ('*' | '^' nat)*
//   instr := '+' basic | '-' basic | basic | '#' nat | '!'
//   basic := 'tt' nat '.' op
//   op    := 'test:' sym | 'set:' sym ':' dir | 'skip:' dir
//          | 'rw[' p3 '/' q3 '/' dir ']'
//
// Whitespace is insignificant everywhere.

#include <cctype>
#include <utility>

#include "pgatt/pga.hpp"

namespace pgatt {

namespace {

constexpr std::uint64_t kMaxExponent = 1'000'000;

std::string describe(std::size_t line, std::size_t column,
                     const std::string& message) {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (char c : text) {
      if (c == '\n') {
        ++line;
        col = 1;
        continue;
      }
      if (!std::isspace(static_cast<unsigned char>(c))) {
        chars_.push_back(c);
        where_.emplace_back(line, col);
      }
      ++col;
    }
    end_ = {line, col};
  }

  Term parse_all() {
    if (at_end()) fail("empty input, expected an instruction");
    Term t = parse_seq();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return t;
  }

  BasicInstruction parse_basic_all() {
    BasicInstruction a = parse_basic();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return a;
  }

 private:
  bool at_end() const { return cur_ >= chars_.size(); }
  char peek() const { return at_end() ? '\0' : chars_[cur_]; }

  [[noreturn]] void fail(const std::string& message) const {
    auto [line, col] = at_end() ? end_ : where_[cur_];
    throw ParseError(line, col, message);
  }

  void expect(char c) {
    if (peek() != c) {
      fail(std::string("expected '") + c + "'" +
           (at_end() ? std::string(" at end of input")
                     : std::string(", found '") + peek() + "'"));
    }
    ++cur_;
  }

  bool accept(std::string_view word) {
    if (chars_.size() - cur_ < word.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (chars_[cur_ + i] != word[i]) return false;
    }
    cur_ += word.size();
    return true;
  }

  Term parse_seq() {
    std::vector<Term> items;
    items.push_back(parse_item());
    while (peek() == ';') {
      ++cur_;
      items.push_back(parse_item());
    }
    Term t = std::move(items.back());
    items.pop_back();
    while (!items.empty()) {
      t = Term::concat(std::move(items.back()), std::move(t));
      items.pop_back();
    }
    return t;
  }

  Term parse_item() {
    if (peek() != '(') return Term::atom(parse_instr());
    ++cur_;
    Term t = parse_seq();
    expect(')');
    for (;;) {
      if (peek() == '*') {
        ++cur_;
        t = Term::repeat(std::move(t));
      } else if (peek() == '^') {
        ++cur_;
        std::uint64_t n = parse_nat(kMaxExponent, "exponent overflow");
        if (n == 0) fail("exponent must be at least 1");
        t = Term::power(std::move(t), n);
      } else {
        return t;
      }
    }
  }

  Instruction parse_instr() {
    switch (peek()) {
      case '+':
        ++cur_;
        return Instruction::pos_test(parse_basic());
      case '-':
        ++cur_;
        return Instruction::neg_test(parse_basic());
      case '#':
        ++cur_;
        return Instruction::jump(parse_nat(kMaxJumpLength, "jump length overflow"));
      case '!':
        ++cur_;
        return Instruction::halt();
      case '\0':
        fail("expected an instruction at end of input");
      default:
        return Instruction::plain(parse_basic());
    }
  }

  std::uint64_t parse_nat(std::uint64_t limit, const char* overflow_message) {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    std::size_t start = cur_;
    std::uint64_t value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (value > limit) {
        cur_ = start;
        fail(overflow_message);
      }
      ++cur_;
    }
    return value;
  }

  Focus parse_focus() {
    std::size_t start = cur_;
    std::string name;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
      name += peek();
      ++cur_;
    }
    if (name.empty()) fail("expected an instruction");
    bool ok = name.size() > 2 && name.compare(0, 2, "tt") == 0 && name[2] != '0';
    std::uint64_t index = 0;
    for (std::size_t i = 2; ok && i < name.size(); ++i) {
      ok = std::isdigit(static_cast<unsigned char>(name[i])) != 0;
      index = index * 10 + static_cast<std::uint64_t>(name[i] - '0');
      ok = ok && index <= 0xFFFF'FFFFull;
    }
    if (!ok) {
      cur_ = start;
      fail("unknown focus '" + name + "'");
    }
    return Focus{static_cast<std::uint32_t>(index)};
  }

  Symbol parse_symbol() {
    auto s = symbol_from_char(peek());
    if (!s) fail("expected a symbol 0, 1 or B");
    ++cur_;
    return *s;
  }

  Direction parse_direction() {
    if (accept("-1")) return Direction::Left;
    if (accept("+1")) return Direction::Right;
    if (accept("0")) return Direction::Stay;
    fail("expected a direction -1, 0 or +1");
  }

  BasicInstruction parse_basic() {
    Focus f = parse_focus();
    expect('.');
    return BasicInstruction{f, parse_op()};
  }

  TapeOp parse_op() {
    if (accept("test:")) return TapeOp::test(parse_symbol());
    if (accept("set:")) {
      Symbol b = parse_symbol();
      expect(':');
      return TapeOp::set(b, parse_direction());
    }
    if (accept("skip:")) return TapeOp::skip(parse_direction());
    if (accept("rw[")) {
      TapeOp op;
      for (std::size_t i = 0; i < 3; ++i) {
        if (peek() != '0' && peek() != '1') fail("expected a reply bit 0 or 1");
        op.reply[i] = peek() == '1';
        ++cur_;
      }
      expect('/');
      for (std::size_t i = 0; i < 3; ++i) op.write[i] = parse_symbol();
      expect('/');
      op.move = parse_direction();
      expect(']');
      return op;
    }
    fail("expected an operation test:, set:, skip: or rw[");
  }

  std::vector<char> chars_;
  std::vector<std::pair<std::size_t, std::size_t>> where_;
  std::pair<std::size_t, std::size_t> end_{1, 1};
  std::size_t cur_ = 0;
};

void print_into(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      out += to_string(t.instruction());
      return;
    case Term::Kind::Concat:
      if (t.lhs().kind() == Term::Kind::Concat) {
        out += '(';
        print_into(t.lhs(), out);
        out += ')';
      } else {
        print_into(t.lhs(), out);
      }
      out += " ; ";
      print_into(t.rhs(), out);
      return;
    case Term::Kind::Repeat:
      out += '(';
      print_into(t.body(), out);
      out += ")*";
      return;
    case Term::Kind::Power:
      out += '(';
      print_into(t.body(), out);
      out += ")^" + std::to_string(t.exponent());
      return;
  }
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& message)
    : std::runtime_error(describe(line, column, message)),
      line_(line),
      column_(column),
      message_(message) {}

Term parse_term(std::string_view text) { return Parser(text).parse_all(); }

BasicInstruction parse_basic_instruction(std::string_view text) {
  return Parser(text).parse_basic_all();
}

std::string print_term(const Term& t) {
  std::string out;
  print_into(t, out);
  return out;
}

}  // namespace pgatt
