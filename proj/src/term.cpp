#include <cassert>
#include <stdexcept>

#include "pgatt/pga.hpp"

namespace pgatt {

std::string to_string(const Instruction& u) {
  switch (u.kind) {
    case Instruction::Kind::Plain:
      return to_string(u.basic);
    case Instruction::Kind::PosTest:
      return "+" + to_string(u.basic);
    case Instruction::Kind::NegTest:
      return "-" + to_string(u.basic);
    case Instruction::Kind::Jump:
      return "#" + std::to_string(u.length);
    case Instruction::Kind::Halt:
      return "!";
  }
  return "?";
}

struct Term::Node {
  Kind kind;
  Instruction instr{};
  std::optional<Term> lhs;
  std::optional<Term> rhs;
  std::uint64_t exponent = 0;
};

Term Term::atom(Instruction u) {
  return Term(std::make_shared<const Node>(Node{Kind::Atom, u, {}, {}, 0}));
}

Term Term::concat(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Concat, {}, std::move(lhs), std::move(rhs), 0}));
}

Term Term::repeat(Term body) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Repeat, {}, std::move(body), {}, 0}));
}

Term Term::power(Term body, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("power exponent must be at least 1");
  return Term(std::make_shared<const Node>(
      Node{Kind::Power, {}, std::move(body), {}, n}));
}

Term Term::sequence(const std::vector<Instruction>& instrs) {
  if (instrs.empty()) throw std::invalid_argument("empty instruction list");
  Term t = atom(instrs.back());
  for (auto it = instrs.rbegin() + 1; it != instrs.rend(); ++it) {
    t = concat(atom(*it), std::move(t));
  }
  return t;
}

Term::Kind Term::kind() const { return node_->kind; }

const Instruction& Term::instruction() const {
  assert(node_->kind == Kind::Atom);
  return node_->instr;
}

const Term& Term::lhs() const {
  assert(node_->kind == Kind::Concat);
  return *node_->lhs;
}

const Term& Term::rhs() const {
  assert(node_->kind == Kind::Concat);
  return *node_->rhs;
}

const Term& Term::body() const {
  assert(node_->kind == Kind::Repeat || node_->kind == Kind::Power);
  return *node_->lhs;
}

std::uint64_t Term::exponent() const {
  assert(node_->kind == Kind::Power);
  return node_->exponent;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Atom:
      return a.instruction() == b.instruction();
    case Term::Kind::Concat:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Term::Kind::Repeat:
      return a.body() == b.body();
    case Term::Kind::Power:
      return a.exponent() == b.exponent() && a.body() == b.body();
  }
  return false;
}

}  // namespace pgatt
