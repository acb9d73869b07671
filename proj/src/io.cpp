#include "wta/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "wta/error.hpp"

namespace wta {
namespace {

// One logical line with comments stripped; columns are 1-based.
class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  std::size_t column() const { return pos_ + 1; }
  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& msg, std::size_t column) const {
    throw ParseError(msg, line_, column);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, column()); }

  bool accept(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  // A name: maximal run of characters allowed in names.
  std::string_view name() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
          c == ',' || c == '#' || c == ':' || c == '>')
        break;
      if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') break;
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }

  // Everything up to the next whitespace.
  std::string_view word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) fail("expected a value");
    return text_.substr(start, pos_ - start);
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct Line {
  std::string_view text;
  std::size_t number;
};

std::vector<Line> logical_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty() || number == 0) {
    ++number;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    bool blank = true;
    for (char c : line) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (!blank) out.push_back({line, number});
    if (nl == std::string_view::npos) break;
  }
  return out;
}

Weight parse_weight_at(LineCursor& cur, SemifieldKind kind) {
  cur.skip_space();
  std::size_t col = cur.column();
  std::string_view w = cur.word();
  try {
    return Weight::parse(kind, w);
  } catch (const ParseError& e) {
    cur.fail(e.what(), col);
  } catch (const DomainError& e) {
    cur.fail(e.what(), col);
  }
}

}  // namespace

Wta parse_automaton(std::string_view text) {
  std::vector<Line> lines = logical_lines(text);
  std::size_t next = 0;
  std::size_t last_line = lines.empty() ? 1 : lines.back().number;

  auto section = [&](std::string_view keyword) -> LineCursor {
    if (next >= lines.size())
      throw ParseError("missing '" + std::string(keyword) + "' section",
                       last_line, 1);
    LineCursor cur(lines[next].text, lines[next].number);
    ++next;
    cur.skip_space();
    std::size_t col = cur.column();
    if (!cur.accept(keyword))
      cur.fail("expected '" + std::string(keyword) + "'", col);
    return cur;
  };

  // semifield
  LineCursor head = section("semifield:");
  std::size_t col = (head.skip_space(), head.column());
  SemifieldKind kind;
  try {
    kind = semifield_from_string(head.name());
  } catch (const UsageError& e) {
    head.fail(e.what(), col);
  }
  if (!head.at_end()) head.fail("unexpected text after semifield");

  // ranks
  LineCursor ranks = section("ranks:");
  std::vector<std::pair<std::string, unsigned>> symbols;
  std::set<std::string, std::less<>> symbol_names;
  while (!ranks.at_end()) {
    std::size_t c = ranks.column();
    std::string name(ranks.name());
    ranks.expect(":");
    ranks.skip_space();
    std::size_t rc = ranks.column();
    std::string_view digits = ranks.name();
    unsigned rank = 0;
    for (char d : digits) {
      if (!std::isdigit(static_cast<unsigned char>(d)) || rank > 1000)
        ranks.fail("invalid rank '" + std::string(digits) + "'", rc);
      rank = rank * 10 + static_cast<unsigned>(d - '0');
    }
    if (!symbol_names.insert(name).second)
      ranks.fail("symbol '" + name + "' declared twice", c);
    symbols.emplace_back(std::move(name), rank);
  }
  RankedAlphabet alphabet(symbols);

  // states
  LineCursor st = section("states:");
  std::vector<std::string> state_names;
  std::unordered_map<std::string, StateId> state_index;
  while (!st.at_end()) {
    std::size_t c = st.column();
    std::string name(st.name());
    if (alphabet.find(name))
      st.fail("state '" + name + "' has the name of a symbol", c);
    if (!state_index.emplace(name, static_cast<StateId>(state_names.size())).second)
      st.fail("state '" + name + "' declared twice", c);
    state_names.push_back(std::move(name));
  }

  auto lookup_state = [&](LineCursor& cur) {
    cur.skip_space();
    std::size_t c = cur.column();
    std::string name(cur.name());
    auto it = state_index.find(name);
    if (it == state_index.end()) cur.fail("unknown state '" + name + "'", c);
    return it->second;
  };

  // final
  LineCursor fin = section("final:");
  std::vector<StateId> finals;
  std::set<StateId> final_set;
  while (!fin.at_end()) {
    std::size_t c = fin.column();
    StateId q = lookup_state(fin);
    if (!final_set.insert(q).second)
      fin.fail("final state '" + state_names[q] + "' listed twice", c);
    finals.push_back(q);
  }

  // transitions
  LineCursor tr = section("transitions:");
  if (!tr.at_end()) tr.fail("transitions start on the next line");
  std::vector<TransitionSpec> transitions;
  std::set<std::tuple<SymbolId, std::vector<StateId>, StateId>> seen;
  for (; next < lines.size(); ++next) {
    LineCursor cur(lines[next].text, lines[next].number);
    cur.skip_space();
    std::size_t start = cur.column();
    std::string sym(cur.name());
    auto id = alphabet.find(sym);
    if (!id) cur.fail("unknown symbol '" + sym + "'", start);
    std::vector<StateId> sources;
    if (cur.accept("(")) {
      if (!cur.accept(")")) {
        do {
          sources.push_back(lookup_state(cur));
        } while (cur.accept(","));
        cur.expect(")");
      }
    }
    if (sources.size() != alphabet.rank(*id))
      cur.fail("symbol '" + sym + "' has rank " + std::to_string(alphabet.rank(*id)) +
                   " but is applied to " + std::to_string(sources.size()) + " states",
               start);
    cur.expect("->");
    StateId target = lookup_state(cur);
    cur.expect(":");
    cur.skip_space();
    std::size_t weight_col = cur.column();
    Weight w = parse_weight_at(cur, kind);
    if (w.is_zero()) cur.fail("zero weight (absent transitions are implicit)", weight_col);
    if (!cur.at_end()) cur.fail("unexpected text after weight");
    if (!seen.emplace(*id, sources, target).second)
      cur.fail("duplicate transition", start);
    transitions.push_back({*id, std::move(sources), target, std::move(w)});
  }

  return Wta::make(kind, std::move(alphabet), std::move(state_names),
                   std::move(finals), std::move(transitions));
}

std::string print_automaton(const Wta& m) {
  std::ostringstream out;
  const RankedAlphabet& a = m.alphabet();
  out << "semifield: " << to_string(m.semifield()) << '\n';
  out << "ranks:";
  for (SymbolId s = 0; s < a.size(); ++s) out << ' ' << a.name(s) << ':' << a.rank(s);
  out << "\nstates:";
  for (StateId q = 0; q < m.num_states(); ++q) out << ' ' << m.state_name(q);
  out << "\nfinal:";
  for (StateId q : m.finals()) out << ' ' << m.state_name(q);
  out << "\ntransitions:\n";
  for (TransitionId t = 0; t < m.num_transitions(); ++t) {
    out << a.name(m.symbol(t));
    auto src = m.sources(t);
    if (!src.empty()) {
      out << '(';
      for (std::size_t i = 0; i < src.size(); ++i)
        out << (i ? ", " : "") << m.state_name(src[i]);
      out << ')';
    }
    out << " -> " << m.state_name(m.target(t)) << " : " << m.weight(t) << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Wta read_automaton(const std::string& path) {
  return parse_automaton(read_text_file(path));
}

PushWeights parse_push_weights(std::string_view text, const Wta& m) {
  std::vector<Weight> lambda(m.num_states(), Weight::one(m.semifield()));
  std::vector<char> given(m.num_states(), 0);
  for (const Line& line : logical_lines(text)) {
    LineCursor cur(line.text, line.number);
    cur.skip_space();
    std::size_t c = cur.column();
    std::string name(cur.name());
    auto q = m.find_state(name);
    if (!q) cur.fail("unknown state '" + name + "'", c);
    if (given[*q]) cur.fail("state '" + name + "' listed twice", c);
    given[*q] = 1;
    lambda[*q] = parse_weight_at(cur, m.semifield());
    if (lambda[*q].is_zero()) cur.fail("pushing weights must be nonzero", c);
    if (m.is_final(*q) && !lambda[*q].is_one())
      cur.fail("final state '" + name + "' must have weight 1", c);
    if (!cur.at_end()) cur.fail("unexpected text after weight");
  }
  return PushWeights(m, std::move(lambda));
}

}  // namespace wta
