#include "pgatt/machine.hpp"

namespace pgatt {

namespace {

constexpr std::string_view kNztis =
    "(-tt1.test:0 ; #3 ; tt1.set:0:+1 ; #33 ;"
    " -tt1.test:1 ; #3 ; tt1.set:1:+1 ; #29 ;"
    " -tt1.test:B ; #3 ; tt1.set:B:-1 ; #1 ;"
    " -tt1.test:0 ; #3 ; tt1.set:B:-1 ; #33 ;"
    " -tt1.test:1 ; #3 ; tt1.set:B:-1 ; #5 ;"
    " -tt1.test:B ; #3 ; tt1.set:0:0 ; ! ;"
    " -tt1.test:0 ; #3 ; tt1.set:B:-1 ; #33 ;"
    " -tt1.test:1 ; #3 ; tt1.set:B:-1 ; #29 ;"
    " -tt1.test:B ; #3 ; tt1.set:1:0 ; !)*";

constexpr std::string_view kNztisPrime =
    "(+tt1.test:B ; #3 ; tt1.skip:+1 ; #18 ;"
    " tt1.skip:-1 ;"
    " -tt1.test:0 ; #3 ; tt1.set:B:-1 ; #18 ;"
    " -tt1.test:1 ; #3 ; tt1.set:B:-1 ; #3 ;"
    " tt1.set:0:0 ; ! ;"
    " +tt1.test:B ; #3 ; tt1.set:B:-1 ; #18 ;"
    " tt1.set:1:0 ; !)*";

}  // namespace

Term builtin(std::string_view name) {
  if (name == "NZTIS") return parse_term(kNztis);
  if (name == "NZTIS_PRIME") return parse_term(kNztisPrime);
  throw std::invalid_argument("unknown builtin '" + std::string(name) +
                              "' (known: NZTIS, NZTIS_PRIME)");
}

TmSpec nzt_machine() {
  using D = Direction;
  using S = Symbol;
  TmSpec m;
  // 0: scan right to the first blank, then step back.
  m.delta.push_back({TmAction::move(S::Zero, D::Right, 0), TmAction::move(S::One, D::Right, 0),
                     TmAction::move(S::Blank, D::Left, 1)});
  // 1: erase leftwards; no 1 seen yet.
  m.delta.push_back({TmAction::move(S::Blank, D::Left, 1), TmAction::move(S::Blank, D::Left, 2),
                     TmAction::accept(S::Zero)});
  // 2: erase leftwards; a 1 was seen.
  m.delta.push_back({TmAction::move(S::Blank, D::Left, 2), TmAction::move(S::Blank, D::Left, 2),
                     TmAction::accept(S::One)});
  return m;
}

}  // namespace pgatt
