#include "pgatt/basic_instruction.hpp"

namespace pgatt {

char to_char(Symbol s) {
  switch (s) {
    case Symbol::Zero:
      return '0';
    case Symbol::One:
      return '1';
    case Symbol::Blank:
      return 'B';
  }
  return '?';
}

std::optional<Symbol> symbol_from_char(char c) {
  switch (c) {
    case '0':
      return Symbol::Zero;
    case '1':
      return Symbol::One;
    case 'B':
      return Symbol::Blank;
    default:
      return std::nullopt;
  }
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::Left:
      return "-1";
    case Direction::Stay:
      return "0";
    case Direction::Right:
      return "+1";
  }
  return "?";
}

std::optional<Direction> direction_from_string(std::string_view text) {
  if (text == "-1") return Direction::Left;
  if (text == "0") return Direction::Stay;
  if (text == "+1") return Direction::Right;
  return std::nullopt;
}

std::string to_string(Focus f) { return "tt" + std::to_string(f.index); }

TapeOp TapeOp::test(Symbol b) {
  static constexpr std::array<ReplyTable, 3> tests{cellfn::FTest, cellfn::TTest,
                                                   cellfn::BTest};
  return TapeOp{tests[index_of(b)], cellfn::IFunc, Direction::Stay};
}

TapeOp TapeOp::set(Symbol b, Direction d) {
  return TapeOp{cellfn::TReply, cellfn::constant(b), d};
}

TapeOp TapeOp::skip(Direction d) {
  return TapeOp{cellfn::TReply, cellfn::IFunc, d};
}

std::string to_string(const TapeOp& op) {
  for (Symbol b : kAllSymbols) {
    if (op == TapeOp::test(b)) return std::string("test:") + to_char(b);
  }
  if (op.reply == cellfn::TReply) {
    if (op.write == cellfn::IFunc) return "skip:" + to_string(op.move);
    for (Symbol b : kAllSymbols) {
      if (op.write == cellfn::constant(b)) {
        return std::string("set:") + to_char(b) + ":" + to_string(op.move);
      }
    }
  }
  std::string out = "rw[";
  for (Symbol s : kAllSymbols) out += op.reply_for(s) ? '1' : '0';
  out += '/';
  for (Symbol s : kAllSymbols) out += to_char(op.write_for(s));
  out += '/';
  out += to_string(op.move);
  out += ']';
  return out;
}

std::string to_string(const BasicInstruction& a) {
  return to_string(a.focus) + "." + to_string(a.op);
}

}  // namespace pgatt
