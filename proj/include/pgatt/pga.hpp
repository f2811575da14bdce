#pragma once

// Program algebra over basic Turing-tape instructions: primitive
// instructions, the term language, its concrete syntax, the canonical
// eventually-periodic form, and the structural and full equalities.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pgatt/basic_instruction.hpp"

namespace pgatt {

/// Largest jump length accepted by the parser.
inline constexpr std::uint64_t kMaxJumpLength = 0xFFFF'FFFFull;

/// A primitive instruction: a, +a, -a, #l or !.
struct Instruction {
  enum class Kind : std::uint8_t { Plain, PosTest, NegTest, Jump, Halt };

  Kind kind = Kind::Halt;
  BasicInstruction basic{};  // meaningful for Plain/PosTest/NegTest only
  std::uint64_t length = 0;  // meaningful for Jump only

  static Instruction plain(BasicInstruction a) { return {Kind::Plain, a, 0}; }
  static Instruction pos_test(BasicInstruction a) { return {Kind::PosTest, a, 0}; }
  static Instruction neg_test(BasicInstruction a) { return {Kind::NegTest, a, 0}; }
  static Instruction jump(std::uint64_t l) { return {Kind::Jump, {}, l}; }
  static Instruction halt() { return {Kind::Halt, {}, 0}; }

  bool is_jump() const { return kind == Kind::Jump; }
  bool performs_action() const {
    return kind == Kind::Plain || kind == Kind::PosTest || kind == Kind::NegTest;
  }

  auto operator<=>(const Instruction&) const = default;
};

std::string to_string(const Instruction& u);

/// Closed instruction-sequence term. Immutable; copies share structure.
class Term {
 public:
  enum class Kind : std::uint8_t { Atom, Concat, Repeat, Power };

  static Term atom(Instruction u);
  static Term concat(Term lhs, Term rhs);
  static Term repeat(Term body);
  /// t^n for n >= 1.
  static Term power(Term body, std::uint64_t n);

  /// Right-nested concatenation of a non-empty list.
  static Term sequence(const std::vector<Instruction>& instrs);

  Kind kind() const;
  const Instruction& instruction() const;
  const Term& lhs() const;
  const Term& rhs() const;
  const Term& body() const;
  std::uint64_t exponent() const;

  /// Syntactic identity of terms (not equality in any algebra).
  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

Term parse_term(std::string_view text);
/// Parses a single basic instruction such as "tt2.rw[010/1B0/-1]".
BasicInstruction parse_basic_instruction(std::string_view text);
std::string print_term(const Term& t);

/// An eventually periodic instruction sequence: prefix followed by the
/// period repeated forever (or nothing, when the period is empty).
///
/// Values built through make() are canonical: the period is primitive and
/// the prefix is as short as possible, so two sequences denote the same
/// instruction sequence iff they compare equal.
class CanonicalSeq {
 public:
  /// Canonicalizes (prefix, period). Throws std::invalid_argument when both
  /// are empty.
  static CanonicalSeq make(std::vector<Instruction> prefix,
                           std::vector<Instruction> period);

  const std::vector<Instruction>& prefix() const { return prefix_; }
  const std::vector<Instruction>& period() const { return period_; }
  bool periodic() const { return !period_.empty(); }
  /// Prefix length plus period length.
  std::size_t body_size() const { return prefix_.size() + period_.size(); }
  /// Instruction at body position pos (0-based, pos < body_size()).
  const Instruction& at(std::size_t pos) const;

  bool operator==(const CanonicalSeq&) const = default;

 private:
  CanonicalSeq() = default;
  std::vector<Instruction> prefix_;
  std::vector<Instruction> period_;
};

/// prefix ; (period)* as a term.
Term to_term(const CanonicalSeq& s);
std::string print_canonical(const CanonicalSeq& s);

/// The sequence a closed term denotes (PGA1-PGA4 normal form).
CanonicalSeq to_canonical(const Term& t);

/// Equality derivable from PGA1-PGA4.
bool structural_eq(const Term& a, const Term& b);

/// Replaces chained jumps by single jumps and makes every jump as short as
/// possible (PGA5-PGA8). Jumps whose chase ends in #0 or never ends become
/// #0. A jump that itself runs past the end of a finite sequence is kept;
/// a jump chained into one is redirected straight at the same overshoot
/// target.
CanonicalSeq resolve_jumps(const CanonicalSeq& s);

/// Equality derivable from PGA1-PGA8.
bool pga_eq(const Term& a, const Term& b);

}  // namespace pgatt
