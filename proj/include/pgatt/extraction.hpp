#pragma once

// Thread extraction |t|, behavioural equivalence and congruence, and the
// converse direction: an instruction sequence producing a given regular
// thread.

#include <cstdint>
#include <optional>

#include "pgatt/pga.hpp"
#include "pgatt/thread.hpp"

namespace pgatt {

/// The thread produced by executing the sequence from its first
/// instruction. Has at most body_size() + 1 states.
RegularThread extract(const CanonicalSeq& s);

/// Same, for a term.
RegularThread extract(const Term& t);

/// A sequence entered through a leading jump #entry_offset.
struct EntryView {
  CanonicalSeq seq;
  std::uint64_t entry_offset = 1;
};

/// |#l ; s ; !^n| with l = v.entry_offset and n = halts_appended, computed
/// on the sequence directly. Appended halts are unreachable (and ignored)
/// when the sequence is periodic.
RegularThread entry_thread(const EntryView& v, std::size_t halts_appended);

bool behavioral_eq(const Term& a, const Term& b);

/// Overrides for the (entry offset, appended halts) window searched by
/// behavioral_congruent. Unset bounds use the computed exhaustive window.
struct CongruenceWindow {
  std::optional<std::uint64_t> max_entry;
  std::optional<std::size_t> max_halts;
};

struct CongruenceResult {
  bool congruent = true;
  /// First distinguishing context (entry offset l, appended halts n).
  std::optional<std::pair<std::uint64_t, std::size_t>> witness;
  std::uint64_t max_entry = 0;
  std::size_t max_halts = 0;
};

/// Checks |#l ; a ; !^n| = |#l ; b ; !^n| for every l and n in the window.
///
/// With L the longer body length and M the largest jump length in either
/// sequence, no instruction can reach further than max(M, 2) positions past
/// the end of the body, so n <= max(M + 1, 2) covers every halt block that
/// can matter, and any l beyond L + n + 1 lands past everything in both.
CongruenceResult behavioral_congruent(const Term& a, const Term& b,
                                      const CongruenceWindow& window = {});

/// A term (B_0 ; ... ; B_{m-1})* with one 3-instruction block per state:
/// Stop -> ! ; #0 ; #0, Dead -> #0 ; #0 ; #0, and x <| a |> y -> +a ; #p ; #q
/// jumping to the blocks of x and y. The root's block comes first.
/// Throws std::invalid_argument if the thread performs tau.
Term synthesize(const RegularThread& r);

}  // namespace pgatt
