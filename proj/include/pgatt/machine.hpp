#pragma once

// Single-tape Turing machines, the 12-instruction block programs that
// mirror them, and the "computes F with k tapes" checker.

#include <cstdint>
#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pgatt/interaction.hpp"
#include "pgatt/pga.hpp"

namespace pgatt {

/// delta(j, sym). Accept and Reject still carry a write and a direction:
/// the compiled handler always performs its set before the continuation.
struct TmAction {
  enum class Kind : std::uint8_t { Move, Accept, Reject };

  Kind kind = Kind::Reject;
  Symbol write = Symbol::Blank;
  Direction dir = Direction::Stay;
  std::size_t next = 0;  // Move only

  static TmAction move(Symbol b, Direction d, std::size_t next) {
    return {Kind::Move, b, d, next};
  }
  static TmAction accept(Symbol b, Direction d = Direction::Stay) {
    return {Kind::Accept, b, d, 0};
  }
  static TmAction reject(Symbol b, Direction d = Direction::Stay) {
    return {Kind::Reject, b, d, 0};
  }

  bool operator==(const TmAction&) const = default;
};

struct TmSpec {
  /// delta[j][index_of(sym)]; state 0 is initial.
  std::vector<std::array<TmAction, 3>> delta;

  std::size_t state_count() const { return delta.size(); }
  bool operator==(const TmSpec&) const = default;
};

class TmParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "states: n", then one "j,SYM -> ..." line per transition. An Accept or
/// Reject line without WRITE,DIR rewrites the read symbol and stays.
TmSpec parse_tm(std::string_view text);
std::string print_tm(const TmSpec& m);

/// Throws std::invalid_argument unless delta is total with targets in range.
void check_tm(const TmSpec& m);

Term compile_tm(const TmSpec& m);

struct TmpReport {
  bool valid = false;
  std::size_t blocks = 0;
  std::vector<std::string> diagnostics;
};

TmpReport validate_tmp(const Term& t);

/// Inverse of compile_tm on valid programs; throws std::invalid_argument
/// otherwise.
TmSpec decompile_tmp(const Term& t);

struct TmRun {
  enum class Status : std::uint8_t { Accepted, Rejected, OutOfFuel };

  Status status = Status::OutOfFuel;
  std::string output;  // ctt of the final tape, on Accept
  std::uint64_t steps = 0;
  std::size_t head = 1;
};

/// Direct simulation on a semi-infinite tape holding `input`, head on 1.
TmRun simulate_tm(const TmSpec& m, std::string_view input, std::uint64_t fuel);

/// tt1 = from_args(words), tt2..ttk empty, all heads on 1.
Family initial_family(std::size_t k, const std::vector<std::string>& words);

/// A partial function on argument tuples; nullopt means undefined.
using Oracle = std::function<std::optional<std::string>(const std::vector<std::string>&)>;
using TimeBound = std::function<std::uint64_t(std::uint64_t)>;

struct ComputesRecord {
  enum class Status : std::uint8_t { Pass, Fail, Inconclusive };

  std::vector<std::string> args;
  std::optional<std::string> expected;
  Status status = Status::Fail;
  std::string reason;
  RunStatus run_status = RunStatus::OutOfFuel;
  std::optional<std::string> output;  // ctt(tape k) when the run terminated
  std::uint64_t steps = 0;
  std::optional<bool> within_bound;
};

struct ComputesVerdict {
  std::vector<ComputesRecord> records;

  bool passed() const;
  bool inconclusive() const;
};

ComputesVerdict computes_check(const Term& t, const Oracle& oracle, std::size_t k,
                               const std::vector<std::vector<std::string>>& inputs,
                               const std::optional<TimeBound>& bound, std::uint64_t fuel);

std::string to_string(ComputesRecord::Status s);

/// "NZTIS" or "NZTIS_PRIME"; throws std::invalid_argument for other names.
Term builtin(std::string_view name);

/// 1 iff some bit is 1; throws std::invalid_argument unless given one word.
std::string nzt(const std::vector<std::string>& words);

/// The three-state machine behind NZTIS.
TmSpec nzt_machine();

}  // namespace pgatt
