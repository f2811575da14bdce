#pragma once

// Threads acting on Turing-tape families: the use and apply operators,
// evaluated as a step interpreter with fuel and cycle detection.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "pgatt/tape.hpp"
#include "pgatt/thread.hpp"

namespace pgatt {

enum class RunStatus : std::uint8_t {
  Terminated,  // reached S; apply yields the final family
  Inactive,    // reached D or acted on an inoperative tape; apply yields {}
  Stuck,       // acted on a focus absent from the family; apply yields {}
  Divergent,   // a configuration repeated exactly; apply yields {}
  OutOfFuel,   // inconclusive
};

std::string to_string(RunStatus s);

struct RunOutcome {
  RunStatus status = RunStatus::OutOfFuel;
  /// Actions processed: one per tape operation and one per tau step.
  std::uint64_t steps = 0;
  /// Value of apply: the family on termination, empty when the theory says
  /// the result is empty, and the family reached so far on OutOfFuel.
  Family final;
  /// Thread state where the run ended.
  std::size_t state = 0;
  /// The blocked action, for Stuck.
  std::optional<BasicInstruction> stuck_on;
};

/// Result of one evaluation step.
struct StepResult {
  enum class Kind : std::uint8_t { Stopped, Inactive, Consumed, External };

  Kind kind = Kind::Inactive;
  std::size_t next = 0;       // Consumed
  Family family;              // Consumed
  std::optional<bool> reply;  // Consumed by a tape operation
  std::optional<BasicInstruction> action;  // External
};

/// One use/apply step of thread state `state` against u.
StepResult step(const RegularThread& r, std::size_t state, const Family& u);

/// What --trace reports for each processed action.
struct TraceEvent {
  std::uint64_t index = 0;  // 1-based step number
  std::size_t state = 0;
  std::size_t next = 0;
  Action action = Action::tau();
  std::optional<bool> reply;
  std::size_t cell = 0;  // cell under the head before the operation
  Symbol read = Symbol::Blank;
  Symbol written = Symbol::Blank;
  std::size_t head_before = 0;
  std::size_t head_after = 0;
};

using TraceSink = std::function<void(const TraceEvent&)>;

/// Evaluates r against u for at most `fuel` steps.
RunOutcome run(const RegularThread& r, const Family& u, std::uint64_t fuel,
               const TraceSink& trace = {});

/// Depth of r / u: the step count of a Terminated or Inactive run.
std::optional<std::uint64_t> use_steps(const RegularThread& r, const Family& u,
                                       std::uint64_t fuel);

/// pi_n(r / u), the depth-n approximation of the use result, built
/// directly from the use axioms.
FiniteThread use_approx(std::uint64_t n, const RegularThread& r, const Family& u);

std::string format_trace(const TraceEvent& e);

}  // namespace pgatt
