#pragma once

// Turing-tape states and Turing-tape families.

#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgatt/basic_instruction.hpp"

namespace pgatt {

/// A one-way infinite tape (tau, i): cell contents from cell 1 on, all
/// blank beyond the stored cells, and the head position i >= 1.
class TapeState {
 public:
  /// Empty tape, head on cell 1.
  TapeState() = default;
  /// Trailing blanks are trimmed. Throws std::invalid_argument if head == 0.
  TapeState(std::vector<Symbol> cells, std::size_t head);

  /// Contents of cell i (1-based); B beyond the stored cells.
  Symbol cell(std::size_t i) const;
  std::size_t head() const { return head_; }
  /// Stored cells; never ends in B.
  std::span<const Symbol> cells() const { return cells_; }

  TapeState with_head(std::size_t head) const { return TapeState(cells_, head); }

  bool operator==(const TapeState&) const = default;

 private:
  std::vector<Symbol> cells_;
  std::size_t head_ = 1;
};

/// tau[i -> b]: cell i replaced by b, everything else (head included) kept.
TapeState override(const TapeState& tape, std::size_t i, Symbol b);

/// The content of the tape as the shortest word over {0,1,B} after which
/// every cell is blank. The head position plays no part.
std::string ctt(const TapeState& tape);

/// Tape holding w1 B w2 B ... B wn with the head on cell 1.
TapeState from_args(std::span<const std::string> words);

/// True when some other argument tuple yields the same tape, which happens
/// exactly when the tuple is non-empty and its last word is empty.
bool args_collide(std::span<const std::string> words);

/// "CONTENT@HEAD", CONTENT over {0,1,B} or "-" when empty.
std::string to_string(const TapeState& tape);
TapeState parse_tape(std::string_view text);

/// An operative tape, or an inoperative one whose state is unavailable.
class TapeSlot {
 public:
  static TapeSlot operative(TapeState s) { return TapeSlot(std::move(s)); }
  static TapeSlot inoperative() { return TapeSlot(); }

  bool is_operative() const { return state_.has_value(); }
  /// Precondition: is_operative().
  const TapeState& state() const { return *state_; }

  bool operator==(const TapeSlot&) const = default;

 private:
  TapeSlot() = default;
  explicit TapeSlot(TapeState s) : state_(std::move(s)) {}
  std::optional<TapeState> state_;
};

/// A finite family of named tapes, at most one per focus.
class Family {
 public:
  using Map = std::map<Focus, TapeSlot>;

  Family() = default;
  explicit Family(Map entries) : entries_(std::move(entries)) {}

  const Map& entries() const { return entries_; }
  bool is_empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const TapeSlot* find(Focus f) const;

  bool operator==(const Family&) const = default;

 private:
  Map entries_;
};

Family empty_family();
Family singleton(Focus f, TapeSlot slot);
/// Union; a focus present on both sides becomes inoperative.
Family compose(const Family& u, const Family& v);
/// Drops the tapes named in F.
Family encapsulate(const std::set<Focus>& foci, const Family& u);
/// f's slot (if any) and the rest of the family.
std::pair<std::optional<TapeSlot>, Family> repr_split(const Family& u, Focus f);

class FamilyParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One line per tape, "ttN: CONTENT@HEAD" or "ttN: DIV", foci in order.
std::string to_string(const Family& u);
/// Parses the line format above; lines naming the same focus twice are
/// composed, so the tape becomes inoperative.
Family parse_family(std::string_view text);

}  // namespace pgatt
