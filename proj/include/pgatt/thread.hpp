#pragma once

// Basic thread algebra: finite threads, regular (finite-state) threads,
// projections, depth, bisimulation and tau-abstraction.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pgatt/basic_instruction.hpp"

namespace pgatt {

/// A basic action, or the internal action tau.
class Action {
 public:
  static Action tau() { return Action(); }
  static Action basic(BasicInstruction a) { return Action(a); }

  bool is_tau() const { return !basic_.has_value(); }
  /// Precondition: !is_tau().
  const BasicInstruction& instruction() const { return *basic_; }

  auto operator<=>(const Action&) const = default;

 private:
  Action() = default;
  explicit Action(BasicInstruction a) : basic_(a) {}
  std::optional<BasicInstruction> basic_;
};

/// "tau" or the basic instruction in term syntax.
std::string to_string(const Action& a);

class RegularThread;

/// A finite thread: S, D, or x <| a |> y. Immutable; subtrees are shared,
/// so deep projections stay linear in size.
class FiniteThread {
 public:
  enum class Kind : std::uint8_t { Stop, Dead, PostCond };

  static FiniteThread stop();
  static FiniteThread dead();
  static FiniteThread postcond(Action a, FiniteThread on_true, FiniteThread on_false);
  /// a o t, i.e. t <| a |> t.
  static FiniteThread prefix(Action a, FiniteThread t);

  Kind kind() const;
  const Action& action() const;
  const FiniteThread& on_true() const;
  const FiniteThread& on_false() const;

  /// Tree equality modulo T1: the false branch of a tau node is ignored.
  friend bool operator==(const FiniteThread& a, const FiniteThread& b);

 private:
  struct Node;
  explicit FiniteThread(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend std::uint64_t depth(const FiniteThread& t);
  friend RegularThread to_regular(const FiniteThread& t);
};

/// Maximum number of actions the thread can perform (tau included).
std::uint64_t depth(const FiniteThread& t);

std::string to_string(const FiniteThread& t);

/// One state of a regular thread.
struct ThreadState {
  enum class Kind : std::uint8_t { Stop, Dead, Step };

  Kind kind = Kind::Dead;
  Action action = Action::tau();
  std::size_t on_true = 0;
  std::size_t on_false = 0;

  static ThreadState stop() { return {Kind::Stop, Action::tau(), 0, 0}; }
  static ThreadState dead() { return {Kind::Dead, Action::tau(), 0, 0}; }
  static ThreadState step(Action a, std::size_t t, std::size_t f) {
    return {Kind::Step, a, t, f};
  }

  bool operator==(const ThreadState& o) const {
    if (kind != o.kind) return false;
    if (kind != Kind::Step) return true;
    return action == o.action && on_true == o.on_true && on_false == o.on_false;
  }
};

/// A finite-state deterministic thread given by a state table and a root.
class RegularThread {
 public:
  /// Throws std::invalid_argument if the table is empty or refers to
  /// out-of-range states.
  RegularThread(std::vector<ThreadState> states, std::size_t root);

  /// One-state threads S and D.
  static RegularThread stop();
  static RegularThread dead();

  const std::vector<ThreadState>& states() const { return states_; }
  const ThreadState& state(std::size_t i) const { return states_.at(i); }
  std::size_t root() const { return root_; }
  std::size_t size() const { return states_.size(); }

  /// Same thread rooted at another state.
  RegularThread rooted_at(std::size_t root) const;

  /// Structural identity of the state tables.
  bool operator==(const RegularThread&) const = default;

 private:
  std::vector<ThreadState> states_;
  std::size_t root_;
};

/// Drops unreachable states and renumbers in breadth-first discovery order
/// (true successor before false), so the root becomes state 0.
RegularThread compact(const RegularThread& r);

/// Depth-n approximation pi_n.
FiniteThread projection(std::uint64_t n, const RegularThread& r);

/// Regular thread with the same behaviour as a finite thread.
RegularThread to_regular(const FiniteThread& t);

/// Equality of the unfoldings (decides equality under AIP).
bool bisim_eq(const RegularThread& a, const RegularThread& b);

/// Rewrites x <| tau |> y to x <| tau |> x everywhere.
RegularThread normalize_t1(const RegularThread& r);

/// Conceals tau: contracts tau chains, turns states that can only perform
/// tau forever into D. The result is compact and tau-free.
RegularThread abstract_tau(const RegularThread& r);

class ThreadParseError : public std::runtime_error {
 public:
  ThreadParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Recursion-system text: "V = S", "V = D" or "V = V1 <a> V2", one equation
/// per line, with the root defined on the first line.
RegularThread parse_recursion_system(std::string_view text);

/// Prints the compacted thread as V0 = ..., V1 = ..., root first.
std::string print_recursion_system(const RegularThread& r);

}  // namespace pgatt
