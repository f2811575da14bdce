#pragma once

// Tape alphabet, head directions, foci and the basic Turing-tape
// instructions f.p(q,d).

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pgatt {

/// Tape symbol. 0 and 1 form the input alphabet; B is the blank.
enum class Symbol : std::uint8_t { Zero = 0, One = 1, Blank = 2 };

inline constexpr std::array<Symbol, 3> kAllSymbols{Symbol::Zero, Symbol::One,
                                                   Symbol::Blank};

constexpr std::size_t index_of(Symbol s) { return static_cast<std::size_t>(s); }

char to_char(Symbol s);
std::optional<Symbol> symbol_from_char(char c);

/// Head movement. The head is clamped at cell 1: max(i + d, 1).
enum class Direction : std::int8_t { Left = -1, Stay = 0, Right = 1 };

inline constexpr std::array<Direction, 3> kAllDirections{
    Direction::Left, Direction::Stay, Direction::Right};

/// "-1", "0" or "+1".
std::string to_string(Direction d);
std::optional<Direction> direction_from_string(std::string_view text);

/// Name of a Turing tape, rendered tt1, tt2, ...
struct Focus {
  std::uint32_t index = 1;

  auto operator<=>(const Focus&) const = default;
};

std::string to_string(Focus f);

/// Reply function p : {0,1,B} -> {0,1}, indexed by Symbol.
using ReplyTable = std::array<bool, 3>;
/// Write function q : {0,1,B} -> {0,1,B}, indexed by Symbol.
using WriteTable = std::array<Symbol, 3>;

/// The named cell functions. The first five double as reply functions.
namespace cellfn {
inline constexpr ReplyTable FTest{true, false, false};
inline constexpr ReplyTable TTest{false, true, false};
inline constexpr ReplyTable BTest{false, false, true};
inline constexpr ReplyTable FReply{false, false, false};
inline constexpr ReplyTable TReply{true, true, true};

inline constexpr WriteTable FFunc{Symbol::Zero, Symbol::Zero, Symbol::Zero};
inline constexpr WriteTable TFunc{Symbol::One, Symbol::One, Symbol::One};
inline constexpr WriteTable BFunc{Symbol::Blank, Symbol::Blank, Symbol::Blank};
inline constexpr WriteTable IFunc{Symbol::Zero, Symbol::One, Symbol::Blank};
inline constexpr WriteTable CFunc{Symbol::One, Symbol::Zero, Symbol::Blank};

/// Constant write table b, b, b.
constexpr WriteTable constant(Symbol b) { return {b, b, b}; }
}  // namespace cellfn

/// The operation p(q,d) carried out on the tape named by a focus.
struct TapeOp {
  ReplyTable reply{};
  WriteTable write = cellfn::IFunc;
  Direction move = Direction::Stay;

  bool reply_for(Symbol cell) const { return reply[index_of(cell)]; }
  Symbol write_for(Symbol cell) const { return write[index_of(cell)]; }

  /// test:b  =  bTest(IFunc, 0)
  static TapeOp test(Symbol b);
  /// set:b:d =  TFunc(const b, d)
  static TapeOp set(Symbol b, Direction d);
  /// skip:d  =  TFunc(IFunc, d)
  static TapeOp skip(Direction d);

  auto operator<=>(const TapeOp&) const = default;
};

/// Renders the operation, preferring the test/set/skip sugar when the
/// tables match one exactly, and rw[ppp/qqq/d] otherwise.
std::string to_string(const TapeOp& op);

/// A basic Turing-tape instruction f.p(q,d).
struct BasicInstruction {
  Focus focus;
  TapeOp op;

  auto operator<=>(const BasicInstruction&) const = default;
};

std::string to_string(const BasicInstruction& a);

}  // namespace pgatt
