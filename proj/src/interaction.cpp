#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "pgatt/interaction.hpp"

namespace pgatt {

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Terminated:
      return "Terminated";
    case RunStatus::Inactive:
      return "Inactive";
    case RunStatus::Stuck:
      return "Stuck";
    case RunStatus::Divergent:
      return "Divergent";
    case RunStatus::OutOfFuel:
      return "OutOfFuel";
  }
  return "?";
}

StepResult step(const RegularThread& r, std::size_t state, const Family& u) {
  const ThreadState& s = r.state(state);
  StepResult out;
  switch (s.kind) {
    case ThreadState::Kind::Stop:
      out.kind = StepResult::Kind::Stopped;
      return out;
    case ThreadState::Kind::Dead:
      out.kind = StepResult::Kind::Inactive;
      return out;
    case ThreadState::Kind::Step:
      break;
  }
  if (s.action.is_tau()) {
    out.kind = StepResult::Kind::Consumed;
    out.next = s.on_true;
    out.family = u;
    return out;
  }
  const BasicInstruction& a = s.action.instruction();
  auto [slot, rest] = repr_split(u, a.focus);
  if (!slot) {
    out.kind = StepResult::Kind::External;
    out.action = a;
    return out;
  }
  if (!slot->is_operative()) {
    out.kind = StepResult::Kind::Inactive;
    return out;
  }
  const TapeState& tape = slot->state();
  const std::size_t i = tape.head();
  const Symbol read = tape.cell(i);
  const bool reply = a.op.reply_for(read);
  const auto moved = static_cast<std::int64_t>(i) + static_cast<std::int64_t>(a.op.move);
  TapeState updated = override(tape, i, a.op.write_for(read))
                          .with_head(static_cast<std::size_t>(std::max<std::int64_t>(moved, 1)));
  out.kind = StepResult::Kind::Consumed;
  out.reply = reply;
  out.next = reply ? s.on_true : s.on_false;
  out.family = compose(singleton(a.focus, TapeSlot::operative(std::move(updated))), rest);
  return out;
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t cell_key(std::uint32_t focus, std::size_t i, Symbol b) {
  return mix((static_cast<std::uint64_t>(focus) << 40) ^ (static_cast<std::uint64_t>(i) << 2) ^
             static_cast<std::uint64_t>(b));
}

std::uint64_t head_key(std::uint32_t focus, std::size_t head) {
  return mix(~((static_cast<std::uint64_t>(focus) << 40) ^ static_cast<std::uint64_t>(head)));
}

// Mutable working copy of a family with an incrementally maintained digest:
// the XOR of one key per non-blank cell and one per head position.
class Workspace {
 public:
  struct Tape {
    Focus focus;
    bool operative = false;
    std::vector<Symbol> cells;  // may carry trailing blanks
    std::size_t head = 1;
  };

  explicit Workspace(const Family& u) {
    for (const auto& [f, slot] : u.entries()) {
      Tape t{f, slot.is_operative(), {}, 1};
      if (t.operative) {
        t.cells.assign(slot.state().cells().begin(), slot.state().cells().end());
        t.head = slot.state().head();
        for (std::size_t i = 0; i < t.cells.size(); ++i) {
          if (t.cells[i] != Symbol::Blank) digest_ ^= cell_key(f.index, i + 1, t.cells[i]);
        }
        digest_ ^= head_key(f.index, t.head);
      } else {
        digest_ ^= mix(f.index);
      }
      tapes_.push_back(std::move(t));
    }
  }

  Tape* find(Focus f) {
    auto it = std::lower_bound(tapes_.begin(), tapes_.end(), f,
                               [](const Tape& t, Focus g) { return t.focus < g; });
    return it != tapes_.end() && it->focus == f ? &*it : nullptr;
  }

  struct Effect {
    bool reply;
    std::size_t cell;
    Symbol read;
    Symbol written;
    std::size_t head_after;
  };

  Effect apply(Tape& t, const TapeOp& op) {
    const std::size_t i = t.head;
    const Symbol read = i <= t.cells.size() ? t.cells[i - 1] : Symbol::Blank;
    const Symbol written = op.write_for(read);
    if (written != read) {
      if (i > t.cells.size()) t.cells.resize(i, Symbol::Blank);
      if (read != Symbol::Blank) digest_ ^= cell_key(t.focus.index, i, read);
      if (written != Symbol::Blank) digest_ ^= cell_key(t.focus.index, i, written);
      t.cells[i - 1] = written;
    }
    const std::size_t head = op.move == Direction::Left ? std::max<std::size_t>(i, 2) - 1
                             : op.move == Direction::Right ? i + 1
                                                           : i;
    if (head != i) {
      digest_ ^= head_key(t.focus.index, i) ^ head_key(t.focus.index, head);
      t.head = head;
    }
    return {op.reply_for(read), i, read, written, head};
  }

  std::uint64_t digest() const { return digest_; }

  Family snapshot() const {
    Family::Map m;
    for (const Tape& t : tapes_) {
      m.emplace(t.focus, t.operative ? TapeSlot::operative(TapeState(t.cells, t.head))
                                     : TapeSlot::inoperative());
    }
    return Family(std::move(m));
  }

 private:
  std::vector<Tape> tapes_;
  std::uint64_t digest_ = 0;
};

enum class Halt : std::uint8_t { None, Stop, Dead, Inoperative, Absent };

Halt blocking(const RegularThread& r, std::size_t s, Workspace& w) {
  const ThreadState& st = r.state(s);
  if (st.kind == ThreadState::Kind::Stop) return Halt::Stop;
  if (st.kind == ThreadState::Kind::Dead) return Halt::Dead;
  if (st.action.is_tau()) return Halt::None;
  Workspace::Tape* t = w.find(st.action.instruction().focus);
  if (t == nullptr) return Halt::Absent;
  if (!t->operative) return Halt::Inoperative;
  return Halt::None;
}

// Performs one action from a non-blocking state; returns the next state.
std::size_t advance(const RegularThread& r, std::size_t s, Workspace& w,
                    Workspace::Effect* effect) {
  const ThreadState& st = r.state(s);
  if (st.action.is_tau()) return st.on_true;
  const BasicInstruction& a = st.action.instruction();
  Workspace::Effect e = w.apply(*w.find(a.focus), a.op);
  if (effect) *effect = e;
  return e.reply ? st.on_true : st.on_false;
}

}  // namespace

RunOutcome run(const RegularThread& r, const Family& u, std::uint64_t fuel,
               const TraceSink& trace) {
  Workspace w(u);
  std::size_t s = r.root();
  std::uint64_t steps = 0;
  // Configuration digest -> step count at which it was first seen. A hit
  // is confirmed by replaying the run up to that step.
  std::unordered_map<std::uint64_t, std::uint64_t> seen;

  auto confirm_repeat = [&](std::uint64_t earlier) {
    Workspace replay(u);
    std::size_t q = r.root();
    for (std::uint64_t k = 0; k < earlier; ++k) q = advance(r, q, replay, nullptr);
    return q == s && replay.snapshot() == w.snapshot();
  };

  RunOutcome out;
  for (;;) {
    const Halt h = blocking(r, s, w);
    if (h != Halt::None) {
      out.steps = steps;
      out.state = s;
      switch (h) {
        case Halt::Stop:
          out.status = RunStatus::Terminated;
          out.final = w.snapshot();
          break;
        case Halt::Dead:
        case Halt::Inoperative:
          out.status = RunStatus::Inactive;
          break;
        case Halt::Absent:
          out.status = RunStatus::Stuck;
          out.stuck_on = r.state(s).action.instruction();
          break;
        case Halt::None:
          break;
      }
      return out;
    }

    const std::uint64_t key = w.digest() ^ mix(0xC0FFEEull + s);
    if (auto it = seen.find(key); it != seen.end()) {
      if (confirm_repeat(it->second)) {
        out.status = RunStatus::Divergent;
        out.steps = steps;
        out.state = s;
        return out;
      }
    } else {
      seen.emplace(key, steps);
    }

    if (steps == fuel) {
      out.status = RunStatus::OutOfFuel;
      out.steps = steps;
      out.state = s;
      out.final = w.snapshot();
      return out;
    }

    Workspace::Effect effect{};
    const std::size_t next = advance(r, s, w, &effect);
    ++steps;
    if (trace) {
      TraceEvent e;
      e.index = steps;
      e.state = s;
      e.next = next;
      e.action = r.state(s).action;
      if (!e.action.is_tau()) {
        e.reply = effect.reply;
        e.cell = effect.cell;
        e.read = effect.read;
        e.written = effect.written;
        e.head_before = effect.cell;
        e.head_after = effect.head_after;
      }
      trace(e);
    }
    s = next;
  }
}

std::optional<std::uint64_t> use_steps(const RegularThread& r, const Family& u,
                                       std::uint64_t fuel) {
  RunOutcome o = run(r, u, fuel);
  if (o.status == RunStatus::Terminated || o.status == RunStatus::Inactive) return o.steps;
  return std::nullopt;
}

FiniteThread use_approx(std::uint64_t n, const RegularThread& r, const Family& u) {
  auto go = [&r](auto&& self, std::uint64_t k, std::size_t s,
                 const Family& fam) -> FiniteThread {
    if (k == 0) return FiniteThread::dead();
    const ThreadState& st = r.state(s);
    switch (st.kind) {
      case ThreadState::Kind::Stop:
        return FiniteThread::stop();
      case ThreadState::Kind::Dead:
        return FiniteThread::dead();
      case ThreadState::Kind::Step:
        break;
    }
    StepResult res = step(r, s, fam);
    switch (res.kind) {
      case StepResult::Kind::Consumed:
        return FiniteThread::prefix(Action::tau(), self(self, k - 1, res.next, res.family));
      case StepResult::Kind::External:
        return FiniteThread::postcond(st.action, self(self, k - 1, st.on_true, fam),
                                      self(self, k - 1, st.on_false, fam));
      case StepResult::Kind::Inactive:
      case StepResult::Kind::Stopped:
        break;
    }
    return FiniteThread::dead();
  };
  return go(go, n, r.root(), u);
}

std::string format_trace(const TraceEvent& e) {
  std::ostringstream out;
  out << "step " << e.index << ": V" << e.state << " " << to_string(e.action);
  if (e.reply) {
    out << " reply=" << (*e.reply ? 1 : 0) << " cell " << e.cell << ": " << to_char(e.read)
        << "->" << to_char(e.written) << " head " << e.head_before << "->" << e.head_after;
  }
  out << " => V" << e.next;
  return out.str();
}

}  // namespace pgatt
