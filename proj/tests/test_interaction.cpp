#include <doctest.h>

#include <set>

#include "support.hpp"

using namespace pgatt;
using testing::Rng;

namespace {

Term P(const char* text) { return parse_term(text); }
RegularThread R(const char* text) { return parse_recursion_system(text); }
Family F(const char* text) { return parse_family(text); }

const Action tau = Action::tau();
constexpr std::uint64_t kFuel = 20'000;

// x <| f.op |> y with the thread's own states after the root.
struct Fork {
  RegularThread thread;
  RegularThread x;
  RegularThread y;
  BasicInstruction a;
};

Fork random_fork(Rng& rng, std::uint32_t foci = 3) {
  const RegularThread x = testing::random_thread(rng, 5, true, foci);
  const RegularThread y = testing::random_thread(rng, 5, true, foci);
  const BasicInstruction a = testing::random_basic(rng, foci);
  return {testing::postcond(Action::basic(a), x, y), x, y, a};
}

// Family after f.op acts on an operative f, computed by the reference tape.
std::pair<bool, Family> reference_effect(const Family& u, const BasicInstruction& a) {
  testing::RefTape tape(u.find(a.focus)->state());
  const bool reply = tape.apply(a.op);
  Family::Map m = u.entries();
  m.at(a.focus) = TapeSlot::operative(tape.state());
  return {reply, Family(m)};
}

Family with_slot(Rng& rng, Focus f, TapeSlot slot) {
  return compose(singleton(f, std::move(slot)),
                 encapsulate({f}, testing::random_family(rng, 3)));
}

void check_same_outcome(const RunOutcome& lhs, const RunOutcome& rhs, std::uint64_t extra) {
  CHECK(lhs.status == rhs.status);
  CHECK(lhs.final == rhs.final);
  if (lhs.status == RunStatus::Terminated || lhs.status == RunStatus::Inactive ||
      lhs.status == RunStatus::Stuck) {
    CHECK(lhs.steps == rhs.steps + extra);
  }
}

// Iterates step() with an explicit configuration set.
RunOutcome reference_run(const RegularThread& r, const Family& u, std::uint64_t fuel) {
  std::set<std::pair<std::size_t, std::string>> seen;
  std::size_t s = r.root();
  Family cur = u;
  RunOutcome out;
  for (;;) {
    const StepResult res = step(r, s, cur);
    out.state = s;
    if (res.kind == StepResult::Kind::Stopped) {
      out.status = RunStatus::Terminated;
      out.final = cur;
      return out;
    }
    if (res.kind == StepResult::Kind::Inactive) {
      out.status = RunStatus::Inactive;
      return out;
    }
    if (res.kind == StepResult::Kind::External) {
      out.status = RunStatus::Stuck;
      out.stuck_on = res.action;
      return out;
    }
    if (!seen.emplace(s, to_string(cur)).second) {
      out.status = RunStatus::Divergent;
      return out;
    }
    if (out.steps == fuel) {
      out.status = RunStatus::OutOfFuel;
      out.final = cur;
      return out;
    }
    ++out.steps;
    s = res.next;
    cur = res.family;
  }
}

}  // namespace

TEST_CASE("step: examples") {
  const RegularThread set = R("X = Y <tt1.set:1:0> Z\nY = S\nZ = D");
  const StepResult r1 = step(set, 0, F("tt1: -@1"));
  CHECK(r1.kind == StepResult::Kind::Consumed);
  CHECK(r1.next == 1);
  CHECK(r1.family == F("tt1: 1@1"));
  CHECK(r1.reply == true);

  const RegularThread test_b = R("X = Y <tt1.test:B> Z\nY = S\nZ = D");
  const StepResult r2 = step(test_b, 0, F("tt1: -@1"));
  CHECK(r2.kind == StepResult::Kind::Consumed);
  CHECK(r2.next == 1);
  CHECK(r2.family == F("tt1: -@1"));

  const RegularThread test0 = R("X = Y <tt1.test:0> Z\nY = S\nZ = D");
  CHECK(step(test0, 0, F("tt1: DIV")).kind == StepResult::Kind::Inactive);

  const RegularThread test2 = R("X = Y <tt2.test:0> Z\nY = S\nZ = D");
  const StepResult r4 = step(test2, 0, F("tt1: 0@1"));
  CHECK(r4.kind == StepResult::Kind::External);
  CHECK(r4.action == parse_basic_instruction("tt2.test:0"));

  CHECK(step(RegularThread::stop(), 0, F("")).kind == StepResult::Kind::Stopped);
  CHECK(step(RegularThread::dead(), 0, F("")).kind == StepResult::Kind::Inactive);
}

TEST_CASE("run: examples") {
  const RunOutcome o1 = run(extract(P("tt1.set:1:0 ; !")), F("tt1: -@1"), 10);
  CHECK(o1.status == RunStatus::Terminated);
  CHECK(o1.steps == 1);
  CHECK(o1.final == F("tt1: 1@1"));

  const RunOutcome o2 = run(RegularThread::dead(), F("tt1: 101@2"), 10);
  CHECK(o2.status == RunStatus::Inactive);
  CHECK(o2.steps == 0);
  CHECK(o2.final.is_empty());

  const RunOutcome o3 = run(extract(P("(tt1.skip:0)*")), F("tt1: -@1"), 100);
  CHECK(o3.status == RunStatus::Divergent);
  CHECK(o3.steps == 1);
  CHECK(o3.final.is_empty());

  const RunOutcome o4 = run(extract(P("(tt1.skip:+1)*")), F("tt1: -@1"), 50);
  CHECK(o4.status == RunStatus::OutOfFuel);
  CHECK(o4.steps == 50);
  CHECK(o4.final == F("tt1: -@51"));

  const RunOutcome o5 = run(extract(P("tt2.skip:0 ; !")), F("tt1: -@1"), 10);
  CHECK(o5.status == RunStatus::Stuck);
  CHECK(o5.stuck_on == parse_basic_instruction("tt2.skip:0"));
  CHECK(o5.final.is_empty());

  // Head clamps at cell 1.
  const RunOutcome o6 = run(extract(P("tt1.skip:-1 ; tt1.set:0:-1 ; !")), F("tt1: -@1"), 10);
  CHECK(o6.final == F("tt1: 0@1"));

  const RunOutcome o7 = run(extract(P("tt1.skip:0 ; #0")), F("tt1: -@1"), 0);
  CHECK(o7.status == RunStatus::OutOfFuel);
  CHECK(o7.steps == 0);
}

TEST_CASE("use_steps: examples") {
  CHECK(use_steps(extract(P("tt1.set:1:0 ; !")), F("tt1: -@1"), 10) == 1u);
  CHECK(use_steps(RegularThread::stop(), F(""), 10) == 0u);
  CHECK_FALSE(use_steps(extract(P("(tt1.skip:0)*")), F("tt1: -@1"), 100));
  CHECK_FALSE(use_steps(extract(P("(tt1.skip:+1)*")), F("tt1: -@1"), 100));
}

TEST_CASE("trace: one event per step") {
  std::vector<TraceEvent> events;
  const RunOutcome o = run(extract(P("tt1.set:1:+1 ; -tt1.test:0 ; tt1.skip:-1 ; !")),
                           F("tt1: -@1"), 100, [&](const TraceEvent& e) { events.push_back(e); });
  REQUIRE(events.size() == o.steps);
  CHECK(events[0].index == 1);
  CHECK(events[0].read == Symbol::Blank);
  CHECK(events[0].written == Symbol::One);
  CHECK(events[0].head_after == 2);
  CHECK(events[1].reply == false);
  CHECK(format_trace(events[0]) ==
        "step 1: V0 tt1.set:1:+1 reply=1 cell 1: B->1 head 1->2 => V1");
}

TEST_CASE("axioms U1-U3, A1-A3") {
  Rng rng(51);
  for (int i = 0; i < 250; ++i) {
    const Family u = testing::random_family(rng, 3);
    const RegularThread x = testing::random_thread(rng, 6, true);
    const std::uint64_t n = rng.between(1, 8);
    CHECK(use_approx(n, RegularThread::stop(), u) == FiniteThread::stop());  // U1
    CHECK(use_approx(n, RegularThread::dead(), u) == FiniteThread::dead());  // U2
    CHECK(use_approx(n, testing::prefix(tau, x), u) ==                      // U3
          FiniteThread::prefix(tau, use_approx(n - 1, x, u)));

    const RunOutcome a1 = run(RegularThread::stop(), u, kFuel);  // A1
    CHECK(a1.status == RunStatus::Terminated);
    CHECK(a1.final == u);
    const RunOutcome a2 = run(RegularThread::dead(), u, kFuel);  // A2
    CHECK(a2.status == RunStatus::Inactive);
    CHECK(a2.final.is_empty());
    check_same_outcome(run(testing::prefix(tau, x), u, kFuel), run(x, u, kFuel - 1), 1);  // A3
  }
}

TEST_CASE("axioms U4, A4: the focus is absent") {
  Rng rng(52);
  for (int i = 0; i < 250; ++i) {
    const Fork k = random_fork(rng);
    const Family u = encapsulate({k.a.focus}, testing::random_family(rng, 3));
    const std::uint64_t n = rng.between(1, 7);
    CHECK(step(k.thread, k.thread.root(), u).kind == StepResult::Kind::External);
    CHECK(use_approx(n, k.thread, u) ==
          FiniteThread::postcond(Action::basic(k.a), use_approx(n - 1, k.x, u),
                                 use_approx(n - 1, k.y, u)));
    const RunOutcome o = run(k.thread, u, kFuel);
    CHECK(o.status == RunStatus::Stuck);
    CHECK(o.final.is_empty());
    CHECK(o.stuck_on == k.a);
  }
}

TEST_CASE("axioms U5, U6, A5, A6: the focus is operative") {
  Rng rng(53);
  int replies[2] = {0, 0};
  for (int i = 0; i < 5000 && (replies[0] < 200 || replies[1] < 200); ++i) {
    const Fork k = random_fork(rng);
    const Family u = with_slot(rng, k.a.focus, TapeSlot::operative(testing::random_tape(rng)));
    const auto [reply, after] = reference_effect(u, k.a);
    ++replies[reply ? 1 : 0];
    const RegularThread& next = reply ? k.x : k.y;

    const StepResult s = step(k.thread, k.thread.root(), u);
    REQUIRE(s.kind == StepResult::Kind::Consumed);
    CHECK(s.reply == reply);
    CHECK(s.family == after);
    CHECK(bisim_eq(k.thread.rooted_at(s.next), next));

    const std::uint64_t n = rng.between(1, 7);
    CHECK(use_approx(n, k.thread, u) == FiniteThread::prefix(tau, use_approx(n - 1, next, after)));
    check_same_outcome(run(k.thread, u, kFuel), run(next, after, kFuel - 1), 1);
  }
  CHECK(replies[0] >= 200);  // U6/A6 instances
  CHECK(replies[1] >= 200);  // U5/A5 instances
}

TEST_CASE("axioms U7, A7: the tape is inoperative") {
  Rng rng(54);
  for (int i = 0; i < 250; ++i) {
    const Fork k = random_fork(rng);
    const Family u = with_slot(rng, k.a.focus, TapeSlot::inoperative());
    CHECK(step(k.thread, k.thread.root(), u).kind == StepResult::Kind::Inactive);
    CHECK(use_approx(rng.between(1, 6), k.thread, u) == FiniteThread::dead());
    const RunOutcome o = run(k.thread, u, kFuel);
    CHECK(o.status == RunStatus::Inactive);
    CHECK(o.final.is_empty());
    CHECK(o.steps == 0);
  }
}

TEST_CASE("axiom U8: projection commutes with use") {
  Rng rng(55);
  for (int i = 0; i < 300; ++i) {
    const RegularThread r = testing::random_thread(rng, 6, true);
    const Family u = testing::random_family(rng, 3);
    const std::uint64_t n = rng.below(10);
    CHECK(use_approx(n, r, u) == testing::use_finite(projection(n, r), u));
  }
}

TEST_CASE("property: run agrees with iterated single steps") {
  Rng rng(56);
  int divergent = 0;
  for (int i = 0; i < 400; ++i) {
    const RegularThread r = testing::random_thread(rng, 7, true);
    const Family u = testing::random_family(rng, 3, 0.05);
    const std::uint64_t fuel = rng.between(0, 300);
    const RunOutcome got = run(r, u, fuel);
    const RunOutcome want = reference_run(r, u, fuel);
    divergent += got.status == RunStatus::Divergent ? 1 : 0;
    CHECK(got.status == want.status);
    CHECK(got.steps == want.steps);
    CHECK(got.final == want.final);
    CHECK(got.state == want.state);
    CHECK(got.stuck_on == want.stuck_on);
  }
  CHECK(divergent > 10);
}

TEST_CASE("property: verdicts are monotone in fuel") {
  Rng rng(57);
  for (int i = 0; i < 300; ++i) {
    const RegularThread r = testing::random_thread(rng, 7, true);
    const Family u = testing::random_family(rng, 3, 0.05);
    const RunOutcome small = run(r, u, rng.below(60));
    if (small.status == RunStatus::OutOfFuel) continue;
    const RunOutcome big = run(r, u, 100 + rng.below(1000));
    CHECK(big.status == small.status);
    CHECK(big.steps == small.steps);
    CHECK(big.final == small.final);
  }
}

TEST_CASE("property: use depth counts processed actions") {
  Rng rng(58);
  for (int i = 0; i < 300; ++i) {
    const RegularThread r = testing::random_thread(rng, 7, true);
    const Family u = testing::complete_family(rng, 3);
    const auto steps = use_steps(r, u, 500);
    if (!steps) continue;
    const FiniteThread approx = use_approx(*steps + 1, r, u);
    CHECK(depth(approx) == *steps);
    CHECK(use_approx(*steps + 5, r, u) == approx);
  }
}

TEST_CASE("property: repetition-free programs always finish") {
  Rng rng(59);
  for (int i = 0; i < 500; ++i) {
    const std::size_t len = rng.between(1, 30);
    const Term t = testing::random_finite_term(rng, len, false, 8);
    const RunOutcome o = run(extract(t), testing::complete_family(rng, 3), len + 1);
    CHECK(o.status != RunStatus::OutOfFuel);
    CHECK(o.steps <= len);
  }
}
