#include <cctype>

#include "pgatt/pga.hpp"
#include "pgatt/tape.hpp"

namespace pgatt {

namespace {

void trim_blanks(std::vector<Symbol>& cells) {
  while (!cells.empty() && cells.back() == Symbol::Blank) cells.pop_back();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

TapeState::TapeState(std::vector<Symbol> cells, std::size_t head)
    : cells_(std::move(cells)), head_(head) {
  if (head_ == 0) throw std::invalid_argument("tape head positions start at 1");
  trim_blanks(cells_);
}

Symbol TapeState::cell(std::size_t i) const {
  if (i == 0 || i > cells_.size()) return Symbol::Blank;
  return cells_[i - 1];
}

TapeState override(const TapeState& tape, std::size_t i, Symbol b) {
  if (i == 0) throw std::invalid_argument("cells are numbered from 1");
  std::vector<Symbol> cells(tape.cells().begin(), tape.cells().end());
  if (i > cells.size()) {
    if (b == Symbol::Blank) return tape;
    cells.resize(i, Symbol::Blank);
  }
  cells[i - 1] = b;
  return TapeState(std::move(cells), tape.head());
}

std::string ctt(const TapeState& tape) {
  std::string out;
  out.reserve(tape.cells().size());
  for (Symbol s : tape.cells()) out += to_char(s);
  return out;
}

TapeState from_args(std::span<const std::string> words) {
  std::vector<Symbol> cells;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) cells.push_back(Symbol::Blank);
    for (char c : words[i]) {
      if (c != '0' && c != '1') {
        throw std::invalid_argument("argument words are over {0,1}: '" + words[i] + "'");
      }
      cells.push_back(c == '0' ? Symbol::Zero : Symbol::One);
    }
  }
  return TapeState(std::move(cells), 1);
}

bool args_collide(std::span<const std::string> words) {
  return !words.empty() && words.back().empty();
}

std::string to_string(const TapeState& tape) {
  std::string content = ctt(tape);
  return (content.empty() ? std::string("-") : content) + "@" +
         std::to_string(tape.head());
}

TapeState parse_tape(std::string_view text) {
  text = trim(text);
  const std::size_t at = text.find('@');
  if (at == std::string_view::npos) {
    throw FamilyParseError("tape literal '" + std::string(text) + "' lacks '@HEAD'");
  }
  std::string_view content = text.substr(0, at);
  std::string_view head_text = text.substr(at + 1);
  std::vector<Symbol> cells;
  if (content != "-") {
    for (char c : content) {
      auto s = symbol_from_char(c);
      if (!s) throw FamilyParseError("bad tape symbol '" + std::string(1, c) + "'");
      cells.push_back(*s);
    }
  }
  std::size_t head = 0;
  if (head_text.empty()) throw FamilyParseError("missing head position");
  for (char c : head_text) {
    if (!std::isdigit(static_cast<unsigned char>(c)) || head > 1'000'000'000) {
      throw FamilyParseError("bad head position '" + std::string(head_text) + "'");
    }
    head = head * 10 + static_cast<std::size_t>(c - '0');
  }
  if (head == 0) throw FamilyParseError("head positions start at 1");
  return TapeState(std::move(cells), head);
}

const TapeSlot* Family::find(Focus f) const {
  auto it = entries_.find(f);
  return it == entries_.end() ? nullptr : &it->second;
}

Family empty_family() { return Family(); }

Family singleton(Focus f, TapeSlot slot) {
  return Family(Family::Map{{f, std::move(slot)}});
}

Family compose(const Family& u, const Family& v) {
  Family::Map out = u.entries();
  for (const auto& [f, slot] : v.entries()) {
    auto [it, fresh] = out.emplace(f, slot);
    if (!fresh) it->second = TapeSlot::inoperative();
  }
  return Family(std::move(out));
}

Family encapsulate(const std::set<Focus>& foci, const Family& u) {
  Family::Map out;
  for (const auto& [f, slot] : u.entries()) {
    if (!foci.contains(f)) out.emplace(f, slot);
  }
  return Family(std::move(out));
}

std::pair<std::optional<TapeSlot>, Family> repr_split(const Family& u, Focus f) {
  std::optional<TapeSlot> slot;
  if (const TapeSlot* s = u.find(f)) slot = *s;
  return {slot, encapsulate({f}, u)};
}

std::string to_string(const Family& u) {
  std::string out;
  for (const auto& [f, slot] : u.entries()) {
    out += to_string(f) + ": ";
    out += slot.is_operative() ? to_string(slot.state()) : std::string("DIV");
    out += '\n';
  }
  return out;
}

Family parse_family(std::string_view text) {
  Family u;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = trim(text.substr(begin, end - begin));
    begin = end + 1;
    if (line.empty()) continue;
    auto where = [line_no](const std::string& msg) {
      return FamilyParseError("line " + std::to_string(line_no) + ": " + msg);
    };
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) throw where("expected 'ttN: CONTENT@HEAD'");
    Focus f;
    try {
      // Reuse the instruction grammar's focus rules.
      f = parse_basic_instruction(std::string(trim(line.substr(0, colon))) + ".test:0").focus;
    } catch (const ParseError& err) {
      throw where(err.message());
    }
    std::string_view rest = trim(line.substr(colon + 1));
    TapeSlot slot = TapeSlot::inoperative();
    if (rest != "DIV") {
      try {
        slot = TapeSlot::operative(parse_tape(rest));
      } catch (const FamilyParseError& err) {
        throw where(err.what());
      }
    }
    u = compose(u, singleton(f, std::move(slot)));
  }
  return u;
}

}  // namespace pgatt
