#include <cctype>
#include <sstream>
#include <unordered_map>

#include "pgatt/pga.hpp"
#include "pgatt/thread.hpp"

namespace pgatt {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  }
  return true;
}

struct Equation {
  std::size_t line;
  std::string lhs;
  std::string rhs;
};

}  // namespace

RegularThread parse_recursion_system(std::string_view text) {
  std::vector<Equation> equations;
  std::unordered_map<std::string, std::size_t> index;

  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = trim(text.substr(begin, end - begin));
    begin = end + 1;
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ThreadParseError(line_no, "expected 'V = ...'");
    std::string lhs(trim(line.substr(0, eq)));
    if (!is_identifier(lhs)) throw ThreadParseError(line_no, "bad variable name '" + lhs + "'");
    if (!index.emplace(lhs, equations.size()).second) {
      throw ThreadParseError(line_no, "variable '" + lhs + "' defined twice");
    }
    equations.push_back({line_no, lhs, std::string(trim(line.substr(eq + 1)))});
  }
  if (equations.empty()) throw ThreadParseError(line_no, "no equations");

  auto lookup = [&index](const Equation& e, std::string_view name) {
    auto it = index.find(std::string(name));
    if (it == index.end()) {
      throw ThreadParseError(e.line, "undefined variable '" + std::string(name) + "'");
    }
    return it->second;
  };

  std::vector<ThreadState> states;
  states.reserve(equations.size());
  for (const auto& e : equations) {
    std::string_view rhs = e.rhs;
    if (rhs == "S") {
      states.push_back(ThreadState::stop());
      continue;
    }
    if (rhs == "D") {
      states.push_back(ThreadState::dead());
      continue;
    }
    std::size_t open = rhs.find('<');
    std::size_t close = rhs.find('>', open == std::string_view::npos ? 0 : open);
    if (open == std::string_view::npos || close == std::string_view::npos) {
      throw ThreadParseError(e.line, "expected 'S', 'D' or 'V1 <action> V2'");
    }
    std::string_view action_text = trim(rhs.substr(open + 1, close - open - 1));
    Action action = Action::tau();
    if (action_text != "tau") {
      try {
        action = Action::basic(parse_basic_instruction(action_text));
      } catch (const ParseError& err) {
        throw ThreadParseError(e.line, "bad action: " + err.message());
      }
    }
    std::size_t on_true = lookup(e, trim(rhs.substr(0, open)));
    std::size_t on_false = lookup(e, trim(rhs.substr(close + 1)));
    states.push_back(ThreadState::step(action, on_true, on_false));
  }
  return RegularThread(std::move(states), 0);
}

std::string print_recursion_system(const RegularThread& r) {
  const RegularThread c = compact(r);
  std::ostringstream out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const ThreadState& s = c.state(i);
    out << 'V' << i << " = ";
    switch (s.kind) {
      case ThreadState::Kind::Stop:
        out << 'S';
        break;
      case ThreadState::Kind::Dead:
        out << 'D';
        break;
      case ThreadState::Kind::Step:
        out << 'V' << s.on_true << " <" << to_string(s.action) << "> V" << s.on_false;
        break;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace pgatt
