#pragma once

// Random generators and reference implementations shared by the tests.
// The references work from the axioms directly and deliberately avoid the
// library's internal machinery.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "pgatt/extraction.hpp"
#include "pgatt/interaction.hpp"
#include "pgatt/pga.hpp"
#include "pgatt/tape.hpp"
#include "pgatt/thread.hpp"

namespace testing {

using namespace pgatt;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_);
  }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool chance(double p) { return std::bernoulli_distribution(p)(gen_); }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

 private:
  std::mt19937_64 gen_;
};

inline Symbol random_symbol(Rng& rng) { return kAllSymbols[rng.below(3)]; }
inline Direction random_direction(Rng& rng) { return kAllDirections[rng.below(3)]; }

inline TapeOp random_op(Rng& rng) {
  switch (rng.below(4)) {
    case 0:
      return TapeOp::test(random_symbol(rng));
    case 1:
      return TapeOp::set(random_symbol(rng), random_direction(rng));
    case 2:
      return TapeOp::skip(random_direction(rng));
    default: {
      TapeOp op;
      for (auto& r : op.reply) r = rng.chance(0.5);
      for (auto& w : op.write) w = random_symbol(rng);
      op.move = random_direction(rng);
      return op;
    }
  }
}

inline BasicInstruction random_basic(Rng& rng, std::uint32_t foci = 3) {
  return {Focus{static_cast<std::uint32_t>(rng.between(1, foci))}, random_op(rng)};
}

inline Instruction random_instruction(Rng& rng, std::uint64_t max_jump = 6,
                                      std::uint32_t foci = 3) {
  switch (rng.below(6)) {
    case 0:
      return Instruction::plain(random_basic(rng, foci));
    case 1:
      return Instruction::pos_test(random_basic(rng, foci));
    case 2:
      return Instruction::neg_test(random_basic(rng, foci));
    case 3:
    case 4:
      return Instruction::jump(rng.below(max_jump + 1));
    default:
      return Instruction::halt();
  }
}

inline Instruction random_non_jump(Rng& rng, std::uint32_t foci = 3) {
  for (;;) {
    Instruction u = random_instruction(rng, 0, foci);
    if (!u.is_jump()) return u;
  }
}

inline std::vector<Instruction> random_instrs(Rng& rng, std::size_t lo, std::size_t hi,
                                              std::uint64_t max_jump = 6) {
  std::vector<Instruction> out(rng.between(lo, hi));
  for (auto& u : out) u = random_instruction(rng, max_jump);
  return out;
}

/// Repetition-free term with the given number of instructions, in a random
/// bracketing (powers included when `powers`).
inline Term random_finite_term(Rng& rng, std::size_t n, bool powers = true,
                               std::uint64_t max_jump = 6) {
  if (n == 1) return Term::atom(random_instruction(rng, max_jump));
  if (powers && n % 2 == 0 && rng.chance(0.15)) {
    return Term::power(random_finite_term(rng, n / 2, powers, max_jump), 2);
  }
  const std::size_t left = rng.between(1, n - 1);
  return Term::concat(random_finite_term(rng, left, powers, max_jump),
                      random_finite_term(rng, n - left, powers, max_jump));
}

/// Any closed term of modest size, repetitions included.
inline Term random_term(Rng& rng, std::size_t budget = 8) {
  const std::uint64_t shape = rng.below(10);
  if (budget <= 1 || shape < 3) return Term::atom(random_instruction(rng));
  if (shape < 5) return Term::repeat(random_term(rng, budget - 1));
  if (shape < 6) return Term::power(random_term(rng, budget / 2), rng.between(1, 3));
  const std::size_t left = rng.between(1, budget - 1);
  return Term::concat(random_term(rng, left), random_term(rng, budget - left));
}

inline Term seq_term(const std::vector<Instruction>& xs) { return Term::sequence(xs); }

inline Term cat(const Term& a, const Term& b) { return Term::concat(a, b); }

/// Random regular thread: every state reachable or not, arbitrary shape.
inline RegularThread random_thread(Rng& rng, std::size_t max_states, bool tau = false,
                                   std::uint32_t foci = 3) {
  const std::size_t n = rng.between(1, max_states);
  std::vector<ThreadState> states(n);
  for (auto& s : states) {
    const std::uint64_t k = rng.below(10);
    if (k == 0) {
      s = ThreadState::stop();
    } else if (k == 1) {
      s = ThreadState::dead();
    } else {
      Action a = tau && rng.chance(0.2) ? Action::tau() : Action::basic(random_basic(rng, foci));
      // Small action alphabet so that distinct threads often agree for a while.
      if (!a.is_tau() && rng.chance(0.7)) {
        a = Action::basic({Focus{1}, TapeOp::test(kAllSymbols[rng.below(2)])});
      }
      const std::size_t t = rng.below(n);
      s = ThreadState::step(a, t, rng.chance(0.3) ? t : rng.below(n));
    }
  }
  return RegularThread(std::move(states), rng.below(n));
}

inline TapeState random_tape(Rng& rng, std::size_t max_len = 6) {
  std::vector<Symbol> cells(rng.below(max_len + 1));
  for (auto& c : cells) c = random_symbol(rng);
  return TapeState(std::move(cells), rng.between(1, max_len + 2));
}

inline TapeSlot random_slot(Rng& rng, double inoperative = 0.15) {
  return rng.chance(inoperative) ? TapeSlot::inoperative()
                                 : TapeSlot::operative(random_tape(rng));
}

/// Family over a random subset of tt1..ttN.
inline Family random_family(Rng& rng, std::uint32_t foci = 3, double inoperative = 0.15) {
  Family::Map m;
  for (std::uint32_t f = 1; f <= foci; ++f) {
    if (rng.chance(0.7)) m.emplace(Focus{f}, random_slot(rng, inoperative));
  }
  return Family(std::move(m));
}

/// Family with every focus tt1..ttN operative.
inline Family complete_family(Rng& rng, std::uint32_t foci = 3) {
  Family::Map m;
  for (std::uint32_t f = 1; f <= foci; ++f) m.emplace(Focus{f}, random_slot(rng, 0.0));
  return Family(std::move(m));
}

// --- thread construction ----------------------------------------------------

/// Copies the states of `r` into `out`, returning the index of r's root.
inline std::size_t graft(std::vector<ThreadState>& out, const RegularThread& r) {
  const std::size_t base = out.size();
  for (ThreadState s : r.states()) {
    if (s.kind == ThreadState::Kind::Step) {
      s.on_true += base;
      s.on_false += base;
    }
    out.push_back(s);
  }
  return base + r.root();
}

/// x <| a |> y.
inline RegularThread postcond(Action a, const RegularThread& x, const RegularThread& y) {
  std::vector<ThreadState> states{ThreadState::dead()};
  const std::size_t t = graft(states, x);
  const std::size_t f = graft(states, y);
  states[0] = ThreadState::step(a, t, f);
  return RegularThread(std::move(states), 0);
}

inline RegularThread prefix(Action a, const RegularThread& x) { return postcond(a, x, x); }

// --- reference extraction ---------------------------------------------------

/// pi_n of the extracted thread, computed by rewriting with the extraction
/// axioms on the unfolded instruction sequence. Positions past the period
/// start are folded back so that jump chains can be seen to cycle.
class ExtractionOracle {
 public:
  explicit ExtractionOracle(std::vector<Instruction> prefix, std::vector<Instruction> period)
      : prefix_(std::move(prefix)), period_(std::move(period)) {}

  FiniteThread project(std::uint64_t n) { return at(n, 0); }

 private:
  std::vector<Instruction> prefix_;
  std::vector<Instruction> period_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, FiniteThread> memo_;

  std::uint64_t body() const { return prefix_.size() + period_.size(); }

  // Folds position p of the unfolding into [0, body); nullopt past the end.
  std::optional<std::uint64_t> fold(std::uint64_t p) const {
    if (p < prefix_.size()) return p;
    if (period_.empty()) return std::nullopt;
    return prefix_.size() + (p - prefix_.size()) % period_.size();
  }

  const Instruction& instr(std::uint64_t p) const {
    return p < prefix_.size() ? prefix_[p] : period_[p - prefix_.size()];
  }

  FiniteThread at(std::uint64_t n, std::uint64_t start) {
    // TE9/TE11: follow jumps; more hops than positions means a cycle.
    std::optional<std::uint64_t> p = fold(start);
    for (std::uint64_t hops = 0;; ++hops) {
      if (!p) return FiniteThread::dead();  // TE1/3/5/7/10: ran off the end
      const Instruction& u = instr(*p);
      if (!u.is_jump()) break;
      if (u.length == 0 || hops > body()) return FiniteThread::dead();  // TE8
      p = fold(*p + u.length);
    }
    if (n == 0) return FiniteThread::dead();
    const auto key = std::make_pair(n, *p);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const Instruction& u = instr(*p);
    FiniteThread result = FiniteThread::stop();  // TE12/TE13
    const Action a = Action::basic(u.basic);
    switch (u.kind) {
      case Instruction::Kind::Plain:  // TE1/TE2
        result = FiniteThread::prefix(a, at(n - 1, *p + 1));
        break;
      case Instruction::Kind::PosTest:  // TE3/TE4
        result = FiniteThread::postcond(a, at(n - 1, *p + 1), at(n - 1, *p + 2));
        break;
      case Instruction::Kind::NegTest:  // TE5/TE6
        result = FiniteThread::postcond(a, at(n - 1, *p + 2), at(n - 1, *p + 1));
        break;
      default:
        break;
    }
    memo_.emplace(key, result);
    return result;
  }
};

/// Flattens a repetition-free term by hand.
inline void flatten(const Term& t, std::vector<Instruction>& out) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      out.push_back(t.instruction());
      break;
    case Term::Kind::Concat:
      flatten(t.lhs(), out);
      flatten(t.rhs(), out);
      break;
    case Term::Kind::Power:
      for (std::uint64_t i = 0; i < t.exponent(); ++i) flatten(t.body(), out);
      break;
    case Term::Kind::Repeat:
      throw std::logic_error("flatten: repetition");
  }
}

// --- reference use/apply ----------------------------------------------------

/// Tape as a sparse cell map, updated per the use/apply axioms.
struct RefTape {
  std::map<std::size_t, Symbol> cells;
  std::size_t head = 1;

  explicit RefTape(const TapeState& s) : head(s.head()) {
    for (std::size_t i = 0; i < s.cells().size(); ++i) {
      if (s.cells()[i] != Symbol::Blank) cells[i + 1] = s.cells()[i];
    }
  }
  Symbol read() const {
    auto it = cells.find(head);
    return it == cells.end() ? Symbol::Blank : it->second;
  }
  // tau(i) := q(tau(i)); i := max(i + d, 1); returns p(tau(i)) on the old cell.
  bool apply(const TapeOp& op) {
    const Symbol old = read();
    const bool reply = op.reply[index_of(old)];
    const Symbol now = op.write[index_of(old)];
    if (now == Symbol::Blank) {
      cells.erase(head);
    } else {
      cells[head] = now;
    }
    const long next = static_cast<long>(head) + static_cast<long>(op.move);
    head = next < 1 ? 1 : static_cast<std::size_t>(next);
    return reply;
  }
  TapeState state() const {
    std::vector<Symbol> v(cells.empty() ? 0 : cells.rbegin()->first, Symbol::Blank);
    for (const auto& [i, s] : cells) v[i - 1] = s;
    return TapeState(std::move(v), head);
  }
};

/// x / u for a finite thread, by U1-U7.
inline FiniteThread use_finite(const FiniteThread& x, const Family& u) {
  switch (x.kind()) {
    case FiniteThread::Kind::Stop:
      return FiniteThread::stop();  // U1
    case FiniteThread::Kind::Dead:
      return FiniteThread::dead();  // U2
    case FiniteThread::Kind::PostCond:
      break;
  }
  if (x.action().is_tau()) return FiniteThread::prefix(Action::tau(), use_finite(x.on_true(), u));
  const BasicInstruction& a = x.action().instruction();
  const TapeSlot* slot = u.find(a.focus);
  if (slot == nullptr) {  // U4
    return FiniteThread::postcond(x.action(), use_finite(x.on_true(), u),
                                  use_finite(x.on_false(), u));
  }
  if (!slot->is_operative()) return FiniteThread::dead();  // U7
  RefTape tape(slot->state());
  const bool reply = tape.apply(a.op);
  Family::Map m = u.entries();
  m.at(a.focus) = TapeSlot::operative(tape.state());
  return FiniteThread::prefix(Action::tau(),
                              use_finite(reply ? x.on_true() : x.on_false(), Family(m)));
}

}  // namespace testing
