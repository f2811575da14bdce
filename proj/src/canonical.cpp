#include <algorithm>
#include <stdexcept>

#include "pgatt/pga.hpp"
#include "sequence_layout.hpp"

namespace pgatt {

namespace {

// Guards against power towers that expand beyond any sensible size.
constexpr std::size_t kMaxExpandedLength = std::size_t{1} << 26;

struct Denotation {
  std::vector<Instruction> prefix;
  std::vector<Instruction> period;

  bool infinite() const { return !period.empty(); }

  void append(Denotation&& rhs) {
    if (infinite()) return;  // X* ; Y = X*
    prefix.insert(prefix.end(), rhs.prefix.begin(), rhs.prefix.end());
    period = std::move(rhs.period);
    if (prefix.size() > kMaxExpandedLength) {
      throw std::length_error("instruction sequence too long to expand");
    }
  }
};

Denotation denote(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      return Denotation{{t.instruction()}, {}};
    case Term::Kind::Concat: {
      Denotation acc;
      const Term* cur = &t;
      while (cur->kind() == Term::Kind::Concat && !acc.infinite()) {
        acc.append(denote(cur->lhs()));
        cur = &cur->rhs();
      }
      if (!acc.infinite()) acc.append(denote(*cur));
      return acc;
    }
    case Term::Kind::Repeat: {
      Denotation body = denote(t.body());
      if (body.infinite()) return body;
      return Denotation{{}, std::move(body.prefix)};
    }
    case Term::Kind::Power: {
      Denotation body = denote(t.body());
      if (body.infinite()) return body;
      if (body.prefix.size() * t.exponent() > kMaxExpandedLength) {
        throw std::length_error("instruction sequence too long to expand");
      }
      Denotation out;
      out.prefix.reserve(body.prefix.size() * t.exponent());
      for (std::uint64_t i = 0; i < t.exponent(); ++i) {
        out.prefix.insert(out.prefix.end(), body.prefix.begin(), body.prefix.end());
      }
      return out;
    }
  }
  throw std::logic_error("unreachable term kind");
}

std::size_t primitive_root_length(const std::vector<Instruction>& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return d;
  }
  return n;
}

}  // namespace

CanonicalSeq CanonicalSeq::make(std::vector<Instruction> prefix,
                                 std::vector<Instruction> period) {
  if (prefix.empty() && period.empty()) {
    throw std::invalid_argument("instruction sequences are non-empty");
  }
  if (!period.empty()) {
    period.resize(primitive_root_length(period));
    while (!prefix.empty() && prefix.back() == period.back()) {
      std::rotate(period.begin(), period.end() - 1, period.end());
      prefix.pop_back();
    }
  }
  CanonicalSeq s;
  s.prefix_ = std::move(prefix);
  s.period_ = std::move(period);
  return s;
}

const Instruction& CanonicalSeq::at(std::size_t pos) const {
  if (pos < prefix_.size()) return prefix_[pos];
  return period_.at(pos - prefix_.size());
}

Term to_term(const CanonicalSeq& s) {
  if (!s.periodic()) return Term::sequence(s.prefix());
  Term t = Term::repeat(Term::sequence(s.period()));
  for (auto it = s.prefix().rbegin(); it != s.prefix().rend(); ++it) {
    t = Term::concat(Term::atom(*it), std::move(t));
  }
  return t;
}

std::string print_canonical(const CanonicalSeq& s) { return print_term(to_term(s)); }

CanonicalSeq to_canonical(const Term& t) {
  Denotation d = denote(t);
  return CanonicalSeq::make(std::move(d.prefix), std::move(d.period));
}

bool structural_eq(const Term& a, const Term& b) {
  return to_canonical(a) == to_canonical(b);
}

CanonicalSeq resolve_jumps(const CanonicalSeq& input) {
  // Shortening can let the prefix shrink on re-canonicalization, which in
  // turn can shorten jumps from the prefix into the period; iterate.
  CanonicalSeq s = input;
  for (;;) {
    const detail::SequenceLayout lay(s);
    const auto landings = detail::resolve_landings(lay);
    const std::size_t n = lay.size();
    const std::size_t loop = s.period().size();

    std::vector<Instruction> body;
    body.reserve(n);
    for (std::size_t p = 0; p < n; ++p) {
      const Instruction& u = s.at(p);
      if (!u.is_jump()) {
        body.push_back(u);
        continue;
      }
      const detail::Landing& l = landings[p];
      switch (l.kind) {
        case detail::Landing::Kind::Instruction:
          // Forward within the body, or around the period when wrapping.
          body.push_back(Instruction::jump(l.pos > p ? l.pos - p : l.pos + loop - p));
          break;
        case detail::Landing::Kind::Zero:
        case detail::Landing::Kind::Cycle:
          body.push_back(Instruction::jump(0));
          break;
        case detail::Landing::Kind::Overshoot:
          body.push_back(Instruction::jump(l.target - p));
          break;
      }
    }
    std::vector<Instruction> prefix(body.begin(),
                                    body.begin() + static_cast<std::ptrdiff_t>(s.prefix().size()));
    std::vector<Instruction> period(body.begin() + static_cast<std::ptrdiff_t>(s.prefix().size()),
                                    body.end());
    CanonicalSeq next = CanonicalSeq::make(std::move(prefix), std::move(period));
    if (next == s) return next;
    s = std::move(next);
  }
}

bool pga_eq(const Term& a, const Term& b) {
  return resolve_jumps(to_canonical(a)) == resolve_jumps(to_canonical(b));
}

}  // namespace pgatt
