#include <cassert>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "pgatt/thread.hpp"

namespace pgatt {

std::string to_string(const Action& a) {
  return a.is_tau() ? std::string("tau") : to_string(a.instruction());
}

struct FiniteThread::Node {
  Kind kind;
  Action action = Action::tau();
  std::optional<FiniteThread> on_true;
  std::optional<FiniteThread> on_false;
};

FiniteThread FiniteThread::stop() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Stop, Action::tau(), std::nullopt, std::nullopt});
  return FiniteThread(node);
}

FiniteThread FiniteThread::dead() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Dead, Action::tau(), std::nullopt, std::nullopt});
  return FiniteThread(node);
}

FiniteThread FiniteThread::postcond(Action a, FiniteThread on_true,
                                    FiniteThread on_false) {
  return FiniteThread(std::make_shared<const Node>(
      Node{Kind::PostCond, a, std::move(on_true), std::move(on_false)}));
}

FiniteThread FiniteThread::prefix(Action a, FiniteThread t) {
  FiniteThread copy = t;
  return postcond(a, std::move(t), std::move(copy));
}

FiniteThread::Kind FiniteThread::kind() const { return node_->kind; }

const Action& FiniteThread::action() const {
  assert(node_->kind == Kind::PostCond);
  return node_->action;
}

const FiniteThread& FiniteThread::on_true() const {
  assert(node_->kind == Kind::PostCond);
  return *node_->on_true;
}

const FiniteThread& FiniteThread::on_false() const {
  assert(node_->kind == Kind::PostCond);
  return *node_->on_false;
}

bool operator==(const FiniteThread& a, const FiniteThread& b) {
  // Subtrees are shared and acyclic, so a pair met before has already been
  // proven equal (a mismatch aborts the whole comparison).
  std::set<std::pair<const void*, const void*>> proven;
  auto go = [&proven](auto&& self, const FiniteThread& x,
                      const FiniteThread& y) -> bool {
    if (x.node_ == y.node_) return true;
    if (x.kind() != y.kind()) return false;
    if (x.kind() != FiniteThread::Kind::PostCond) return true;
    if (x.action() != y.action()) return false;
    if (!proven.insert({x.node_.get(), y.node_.get()}).second) return true;
    if (!self(self, x.on_true(), y.on_true())) return false;
    if (x.action().is_tau()) return true;
    return self(self, x.on_false(), y.on_false());
  };
  return go(go, a, b);
}

std::uint64_t depth(const FiniteThread& t) {
  std::unordered_map<const FiniteThread::Node*, std::uint64_t> memo;
  auto go = [&memo](auto&& self, const FiniteThread& x) -> std::uint64_t {
    if (x.kind() != FiniteThread::Kind::PostCond) return 0;
    auto it = memo.find(x.node_.get());
    if (it != memo.end()) return it->second;
    std::uint64_t d = self(self, x.on_true());
    if (!x.action().is_tau()) d = std::max(d, self(self, x.on_false()));
    memo.emplace(x.node_.get(), d + 1);
    return d + 1;
  };
  return go(go, t);
}

std::string to_string(const FiniteThread& t) {
  switch (t.kind()) {
    case FiniteThread::Kind::Stop:
      return "S";
    case FiniteThread::Kind::Dead:
      return "D";
    case FiniteThread::Kind::PostCond:
      if (t.action().is_tau() || t.on_true() == t.on_false()) {
        return to_string(t.action()) + " o " + to_string(t.on_true());
      }
      return "(" + to_string(t.on_true()) + " <| " + to_string(t.action()) +
             " |> " + to_string(t.on_false()) + ")";
  }
  return "?";
}

RegularThread::RegularThread(std::vector<ThreadState> states, std::size_t root)
    : states_(std::move(states)), root_(root) {
  if (states_.empty()) throw std::invalid_argument("thread has no states");
  if (root_ >= states_.size()) throw std::invalid_argument("root out of range");
  for (const auto& s : states_) {
    if (s.kind == ThreadState::Kind::Step &&
        (s.on_true >= states_.size() || s.on_false >= states_.size())) {
      throw std::invalid_argument("successor state out of range");
    }
  }
}

RegularThread RegularThread::stop() { return RegularThread({ThreadState::stop()}, 0); }
RegularThread RegularThread::dead() { return RegularThread({ThreadState::dead()}, 0); }

RegularThread RegularThread::rooted_at(std::size_t root) const {
  return RegularThread(states_, root);
}

RegularThread compact(const RegularThread& r) {
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> id(r.size(), kUnseen);
  std::vector<std::size_t> order;
  std::deque<std::size_t> queue{r.root()};
  id[r.root()] = 0;
  order.push_back(r.root());
  while (!queue.empty()) {
    const ThreadState& s = r.state(queue.front());
    queue.pop_front();
    if (s.kind != ThreadState::Kind::Step) continue;
    for (std::size_t next : {s.on_true, s.on_false}) {
      if (id[next] != kUnseen) continue;
      id[next] = order.size();
      order.push_back(next);
      queue.push_back(next);
    }
  }
  std::vector<ThreadState> states;
  states.reserve(order.size());
  for (std::size_t old : order) {
    ThreadState s = r.state(old);
    if (s.kind == ThreadState::Kind::Step) {
      s.on_true = id[s.on_true];
      s.on_false = id[s.on_false];
    }
    states.push_back(s);
  }
  return RegularThread(std::move(states), 0);
}

FiniteThread projection(std::uint64_t n, const RegularThread& r) {
  std::vector<FiniteThread> layer(r.size(), FiniteThread::dead());
  for (std::uint64_t k = 0; k < n; ++k) {
    std::vector<FiniteThread> next;
    next.reserve(r.size());
    for (const auto& s : r.states()) {
      switch (s.kind) {
        case ThreadState::Kind::Stop:
          next.push_back(FiniteThread::stop());
          break;
        case ThreadState::Kind::Dead:
          next.push_back(FiniteThread::dead());
          break;
        case ThreadState::Kind::Step:
          if (s.action.is_tau()) {
            next.push_back(FiniteThread::prefix(s.action, layer[s.on_true]));
          } else {
            next.push_back(
                FiniteThread::postcond(s.action, layer[s.on_true], layer[s.on_false]));
          }
          break;
      }
    }
    layer = std::move(next);
  }
  return layer[r.root()];
}

RegularThread to_regular(const FiniteThread& t) {
  std::unordered_map<const FiniteThread::Node*, std::size_t> id;
  std::vector<ThreadState> states;
  std::vector<FiniteThread> pending;

  auto intern = [&](const FiniteThread& x) {
    auto [it, fresh] = id.emplace(x.node_.get(), states.size());
    if (fresh) {
      states.emplace_back();
      pending.push_back(x);
    }
    return it->second;
  };

  intern(t);
  while (!pending.empty()) {
    FiniteThread x = pending.back();
    pending.pop_back();
    const std::size_t self = id.at(x.node_.get());
    switch (x.kind()) {
      case FiniteThread::Kind::Stop:
        states[self] = ThreadState::stop();
        break;
      case FiniteThread::Kind::Dead:
        states[self] = ThreadState::dead();
        break;
      case FiniteThread::Kind::PostCond: {
        const std::size_t on_true = intern(x.on_true());
        const std::size_t on_false = intern(x.on_false());
        states[self] = ThreadState::step(x.action(), on_true, on_false);
        break;
      }
    }
  }
  return RegularThread(std::move(states), 0);
}

bool bisim_eq(const RegularThread& a, const RegularThread& b) {
  const std::size_t width = b.size();
  std::vector<char> seen(a.size() * width, 0);
  std::deque<std::pair<std::size_t, std::size_t>> queue;
  auto visit = [&](std::size_t x, std::size_t y) {
    char& mark = seen[x * width + y];
    if (!mark) {
      mark = 1;
      queue.emplace_back(x, y);
    }
  };
  visit(a.root(), b.root());
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    const ThreadState& s = a.state(x);
    const ThreadState& t = b.state(y);
    if (s.kind != t.kind) return false;
    if (s.kind != ThreadState::Kind::Step) continue;
    if (s.action != t.action) return false;
    visit(s.on_true, t.on_true);
    if (!s.action.is_tau()) visit(s.on_false, t.on_false);
  }
  return true;
}

RegularThread normalize_t1(const RegularThread& r) {
  std::vector<ThreadState> states = r.states();
  for (auto& s : states) {
    if (s.kind == ThreadState::Kind::Step && s.action.is_tau()) s.on_false = s.on_true;
  }
  return RegularThread(std::move(states), r.root());
}

RegularThread abstract_tau(const RegularThread& r) {
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  constexpr std::size_t kDiverges = kUnset - 1;
  const std::size_t n = r.size();

  auto is_tau_step = [&r](std::size_t s) {
    const ThreadState& st = r.state(s);
    return st.kind == ThreadState::Kind::Step && st.action.is_tau();
  };

  // Tau edges form a functional graph; follow each chain to its first
  // non-tau state, or detect that it cycles through tau states only.
  std::vector<std::size_t> target(n, kUnset);
  std::vector<char> on_path(n, 0);
  std::vector<std::size_t> path;
  for (std::size_t s = 0; s < n; ++s) {
    if (target[s] != kUnset) continue;
    path.clear();
    std::size_t p = s;
    std::size_t result;
    for (;;) {
      if (target[p] != kUnset) {
        result = target[p];
        break;
      }
      if (!is_tau_step(p)) {
        result = p;
        break;
      }
      if (on_path[p]) {
        result = kDiverges;
        break;
      }
      on_path[p] = 1;
      path.push_back(p);
      p = r.state(p).on_true;
    }
    if (!is_tau_step(p) && target[p] == kUnset) target[p] = p;
    for (std::size_t q : path) {
      target[q] = result;
      on_path[q] = 0;
    }
  }

  std::unordered_map<std::size_t, std::size_t> id;
  std::vector<std::size_t> order;
  auto intern = [&](std::size_t old) {
    auto [it, fresh] = id.emplace(old, order.size());
    if (fresh) order.push_back(old);
    return it->second;
  };
  intern(target[r.root()]);
  std::vector<ThreadState> states;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t old = order[i];
    if (old == kDiverges) {
      states.push_back(ThreadState::dead());
      continue;
    }
    ThreadState s = r.state(old);
    if (s.kind == ThreadState::Kind::Step) {
      s.on_true = intern(target[s.on_true]);
      s.on_false = intern(target[s.on_false]);
    }
    states.push_back(s);
  }
  return RegularThread(std::move(states), 0);
}

}  // namespace pgatt
