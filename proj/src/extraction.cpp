#include <algorithm>
#include <limits>
#include <stdexcept>

#include "pgatt/extraction.hpp"
#include "sequence_layout.hpp"

namespace pgatt {

namespace {

RegularThread extract_layout(const detail::SequenceLayout& lay) {
  const std::size_t n = lay.size();
  const auto landings = detail::resolve_landings(lay);

  // Non-jump positions become states; everything that ends in inaction
  // (#0, a jump cycle, running off the end) shares one extra Dead state.
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  const std::size_t dead = n;
  std::vector<std::size_t> id(n + 1, kUnset);
  std::vector<std::size_t> order;
  auto intern = [&](std::size_t node) {
    if (id[node] == kUnset) {
      id[node] = order.size();
      order.push_back(node);
    }
    return id[node];
  };
  // State reached when control arrives at position p (nullopt: past end).
  auto arrive = [&](std::optional<std::size_t> p) -> std::size_t {
    if (!p) return dead;
    const detail::Landing& l = landings[*p];
    return l.kind == detail::Landing::Kind::Instruction ? l.pos : dead;
  };

  intern(arrive(n == 0 ? std::nullopt : std::optional<std::size_t>(0)));
  std::vector<ThreadState> states;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t node = order[i];
    if (node == dead) {
      states.push_back(ThreadState::dead());
      continue;
    }
    const Instruction u = lay.at(node);
    const Action a = Action::basic(u.basic);
    switch (u.kind) {
      case Instruction::Kind::Halt:
        states.push_back(ThreadState::stop());
        break;
      case Instruction::Kind::Plain: {
        const std::size_t next = intern(arrive(lay.advance(node, 1)));
        states.push_back(ThreadState::step(a, next, next));
        break;
      }
      case Instruction::Kind::PosTest: {
        const std::size_t on_true = intern(arrive(lay.advance(node, 1)));
        const std::size_t on_false = intern(arrive(lay.advance(node, 2)));
        states.push_back(ThreadState::step(a, on_true, on_false));
        break;
      }
      case Instruction::Kind::NegTest: {
        const std::size_t on_true = intern(arrive(lay.advance(node, 2)));
        const std::size_t on_false = intern(arrive(lay.advance(node, 1)));
        states.push_back(ThreadState::step(a, on_true, on_false));
        break;
      }
      case Instruction::Kind::Jump:
        throw std::logic_error("jump positions never become thread states");
    }
  }
  return RegularThread(std::move(states), 0);
}

std::uint64_t max_jump(const CanonicalSeq& s) {
  std::uint64_t m = 0;
  for (const auto* part : {&s.prefix(), &s.period()}) {
    for (const Instruction& u : *part) {
      if (u.is_jump()) m = std::max(m, u.length);
    }
  }
  return m;
}

}  // namespace

RegularThread extract(const CanonicalSeq& s) {
  return extract_layout(detail::SequenceLayout(s));
}

RegularThread extract(const Term& t) { return extract(to_canonical(t)); }

RegularThread entry_thread(const EntryView& v, std::size_t halts_appended) {
  return extract_layout(detail::SequenceLayout(v.seq, v.entry_offset, halts_appended));
}

bool behavioral_eq(const Term& a, const Term& b) {
  return bisim_eq(extract(a), extract(b));
}

CongruenceResult behavioral_congruent(const Term& a, const Term& b,
                                      const CongruenceWindow& window) {
  const CanonicalSeq sa = to_canonical(a);
  const CanonicalSeq sb = to_canonical(b);
  const std::uint64_t body = std::max(sa.body_size(), sb.body_size());
  const std::uint64_t jump = std::max(max_jump(sa), max_jump(sb));

  CongruenceResult result;
  if (sa.periodic() && sb.periodic()) {
    result.max_halts = 0;
  } else {
    result.max_halts = static_cast<std::size_t>(std::max<std::uint64_t>(jump + 1, 2));
  }
  if (window.max_halts) result.max_halts = *window.max_halts;
  result.max_entry = body + result.max_halts + 1;
  if (window.max_entry) result.max_entry = *window.max_entry;

  for (std::size_t n = 0; n <= result.max_halts; ++n) {
    for (std::uint64_t l = 0; l <= result.max_entry; ++l) {
      if (!bisim_eq(entry_thread({sa, l}, n), entry_thread({sb, l}, n))) {
        result.congruent = false;
        result.witness = {l, n};
        return result;
      }
    }
  }
  return result;
}

Term synthesize(const RegularThread& r) {
  // Root block first, the others in index order.
  const std::size_t m = r.size();
  std::vector<std::size_t> block(m);
  std::vector<std::size_t> order{r.root()};
  for (std::size_t i = 0; i < m; ++i) {
    if (i != r.root()) order.push_back(i);
  }
  for (std::size_t b = 0; b < m; ++b) block[order[b]] = b;

  const std::uint64_t body = 3 * m;
  // Forward distance from position `from` to the start of block b, in [1, 3m].
  auto distance = [&](std::uint64_t from, std::size_t state) {
    const std::uint64_t to = 3 * block[state];
    const std::uint64_t d = (to + body - from % body) % body;
    return d == 0 ? body : d;
  };

  std::vector<Instruction> instrs;
  instrs.reserve(body);
  for (std::size_t b = 0; b < m; ++b) {
    const ThreadState& s = r.state(order[b]);
    switch (s.kind) {
      case ThreadState::Kind::Stop:
        instrs.insert(instrs.end(), {Instruction::halt(), Instruction::jump(0),
                                     Instruction::jump(0)});
        break;
      case ThreadState::Kind::Dead:
        instrs.insert(instrs.end(), {Instruction::jump(0), Instruction::jump(0),
                                     Instruction::jump(0)});
        break;
      case ThreadState::Kind::Step:
        if (s.action.is_tau()) {
          throw std::invalid_argument("tau is not an instruction; abstract it first");
        }
        instrs.push_back(Instruction::pos_test(s.action.instruction()));
        instrs.push_back(Instruction::jump(distance(3 * b + 1, s.on_true)));
        instrs.push_back(Instruction::jump(distance(3 * b + 2, s.on_false)));
        break;
    }
  }
  return Term::repeat(Term::sequence(instrs));
}

}  // namespace pgatt
