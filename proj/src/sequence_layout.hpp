#pragma once

// Position arithmetic over a canonical sequence, optionally wrapped as
// #l ; s ; !^n (the entry/exit context used for behavioural congruence).

#include <cstdint>
#include <optional>
#include <vector>

#include "pgatt/pga.hpp"

namespace pgatt::detail {

class SequenceLayout {
 public:
  explicit SequenceLayout(const CanonicalSeq& s) : seq_(&s) {}

  /// #entry ; s ; !^halts. The halts are dropped when s is periodic.
  SequenceLayout(const CanonicalSeq& s, std::uint64_t entry, std::size_t halts)
      : seq_(&s),
        lead_(true),
        entry_(entry),
        halts_(s.periodic() ? 0 : halts) {}

  std::size_t size() const {
    return (lead_ ? 1 : 0) + seq_->body_size() + halts_;
  }

  /// First position of the repeating part, if any.
  std::optional<std::size_t> loop_start() const {
    if (!seq_->periodic()) return std::nullopt;
    return (lead_ ? 1 : 0) + seq_->prefix().size();
  }

  Instruction at(std::size_t pos) const {
    if (lead_) {
      if (pos == 0) return Instruction::jump(entry_);
      --pos;
    }
    if (pos < seq_->body_size()) return seq_->at(pos);
    return Instruction::halt();
  }

  /// Position k places after pos, or nullopt past the end.
  std::optional<std::size_t> advance(std::size_t pos, std::uint64_t k) const {
    const std::uint64_t target = pos + k;
    if (target < size()) return static_cast<std::size_t>(target);
    if (auto start = loop_start()) {
      const std::uint64_t loop = size() - *start;
      return static_cast<std::size_t>(*start + (target - *start) % loop);
    }
    return std::nullopt;
  }

 private:
  const CanonicalSeq* seq_;
  bool lead_ = false;
  std::uint64_t entry_ = 0;
  std::size_t halts_ = 0;
};

/// Where execution ends up when it arrives at a position.
struct Landing {
  enum class Kind : std::uint8_t {
    Instruction,  // a non-jump instruction at `pos`
    Zero,         // a #0 is reached
    Cycle,        // an infinite chain of jumps
    Overshoot,    // a jump past the end, to absolute position `target`
  };
  Kind kind = Kind::Instruction;
  std::size_t pos = 0;
  std::uint64_t target = 0;
};

/// Landing for every position of the layout, chasing chained jumps.
inline std::vector<Landing> resolve_landings(const SequenceLayout& lay) {
  const std::size_t n = lay.size();
  std::vector<std::optional<Landing>> memo(n);
  std::vector<char> on_path(n, 0);
  std::vector<std::size_t> path;

  for (std::size_t start = 0; start < n; ++start) {
    if (memo[start]) continue;
    path.clear();
    std::size_t p = start;
    Landing result;
    for (;;) {
      if (memo[p]) {
        result = *memo[p];
        break;
      }
      const Instruction u = lay.at(p);
      if (!u.is_jump()) {
        result = Landing{Landing::Kind::Instruction, p, 0};
        memo[p] = result;
        break;
      }
      if (on_path[p]) {
        result = Landing{Landing::Kind::Cycle, 0, 0};
        break;
      }
      on_path[p] = 1;
      path.push_back(p);
      if (u.length == 0) {
        result = Landing{Landing::Kind::Zero, 0, 0};
        break;
      }
      auto next = lay.advance(p, u.length);
      if (!next) {
        result = Landing{Landing::Kind::Overshoot, 0, p + u.length};
        break;
      }
      p = *next;
    }
    for (std::size_t q : path) {
      memo[q] = result;
      on_path[q] = 0;
    }
  }

  std::vector<Landing> out;
  out.reserve(n);
  for (auto& m : memo) out.push_back(*m);
  return out;
}

}  // namespace pgatt::detail
