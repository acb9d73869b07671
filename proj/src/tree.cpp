#include "wta/tree.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "wta/error.hpp"

namespace wta {

bool is_valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' ||
           c == ')' || c == ',' || c == '#' || c == ':' || c == '>';
  });
}

RankedAlphabet::RankedAlphabet(
    std::vector<std::pair<std::string, unsigned>> symbols) {
  std::sort(symbols.begin(), symbols.end());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!is_valid_name(symbols[i].first))
      throw UsageError("invalid symbol name '" + symbols[i].first + "'");
    if (i > 0 && symbols[i].first == names_.back())
      throw UsageError("symbol '" + symbols[i].first + "' declared twice");
    names_.push_back(std::move(symbols[i].first));
    ranks_.push_back(symbols[i].second);
  }
}

std::optional<SymbolId> RankedAlphabet::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<SymbolId>(it - names_.begin());
}

unsigned RankedAlphabet::max_rank() const noexcept {
  unsigned m = 0;
  for (unsigned r : ranks_) m = std::max(m, r);
  return m;
}

// --- Tree -------------------------------------------------------------------

Tree Tree::state(StateId q) {
  return Tree(std::make_shared<const Node>(
      Node{Kind::kState, q, {}, 1, 0, 1}));
}

Tree Tree::hole() {
  static const Tree h(
      std::make_shared<const Node>(Node{Kind::kHole, 0, {}, 1, 1, 0}));
  return h;
}

Tree Tree::node(SymbolId symbol, std::vector<Tree> children) {
  std::size_t size = 1, holes = 0, leaves = 0;
  for (const Tree& c : children) {
    size += c.size();
    holes += c.hole_count();
    leaves += c.state_leaf_count();
  }
  return Tree(std::make_shared<const Node>(
      Node{Kind::kSymbol, symbol, std::move(children), size, holes, leaves}));
}

bool operator==(const Tree& a, const Tree& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.label() != b.label() || a.size() != b.size())
    return false;
  return std::equal(a.children().begin(), a.children().end(),
                    b.children().begin(), b.children().end());
}

std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.label() <=> b.label(); c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.children().begin(), a.children().end(), b.children().begin(),
      b.children().end());
}

// --- Contexts ---------------------------------------------------------------

Context::Context(Tree t) : tree_(std::move(t)) {
  if (tree_.hole_count() != 1)
    throw UsageError("a context needs exactly one hole, found " +
                     std::to_string(tree_.hole_count()));
}

namespace {

Tree plug(const Tree& c, const Tree& t) {
  if (c.is_hole()) return t;
  std::vector<Tree> kids(c.children().begin(), c.children().end());
  for (Tree& k : kids) {
    if (k.hole_count() > 0) {
      k = plug(k, t);
      break;
    }
  }
  return Tree::node(c.label(), std::move(kids));
}

}  // namespace

Tree substitute(const Context& c, const Tree& t) { return plug(c.tree(), t); }

Context substitute(const Context& c, const Context& inner) {
  return Context(plug(c.tree(), inner.tree()));
}

Context step_context(SymbolId symbol, std::span<const StateId> args,
                     std::size_t position) {
  std::vector<Tree> kids;
  kids.reserve(args.size());
  for (std::size_t i = 0; i < args.size(); ++i)
    kids.push_back(i == position ? Tree::hole() : Tree::state(args[i]));
  return Context(Tree::node(symbol, std::move(kids)));
}

Tree rename_states(const Tree& t, std::span<const StateId> mapping) {
  return replace_states(t, [&](StateId q) { return Tree::state(mapping[q]); });
}

Context rename_states(const Context& c, std::span<const StateId> mapping) {
  return Context(rename_states(c.tree(), mapping));
}

// --- Text form --------------------------------------------------------------

namespace {

void print_into(std::string& out, const Tree& t, const RankedAlphabet& alphabet,
                std::span<const std::string> states) {
  switch (t.kind()) {
    case Tree::Kind::kHole:
      out += '#';
      return;
    case Tree::Kind::kState:
      if (t.label() < states.size())
        out += states[t.label()];
      else
        out += "<" + std::to_string(t.label()) + ">";
      return;
    case Tree::Kind::kSymbol:
      out += alphabet.name(t.label());
      if (!t.children().empty()) {
        out += '(';
        bool first = true;
        for (const Tree& c : t.children()) {
          if (!first) out += ", ";
          first = false;
          print_into(out, c, alphabet, states);
        }
        out += ')';
      }
      return;
  }
}

class TreeParser {
 public:
  TreeParser(std::string_view text, const RankedAlphabet& alphabet,
             std::span<const std::string> states, bool allow_hole)
      : text_(text), alphabet_(alphabet), allow_hole_(allow_hole) {
    for (std::size_t i = 0; i < states.size(); ++i)
      states_.emplace(states[i], static_cast<StateId>(i));
  }

  Tree parse() {
    Tree t = tree();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, 1, pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string_view name() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' ||
          c == ')' || c == ',' || c == '#' || c == ':' || c == '>')
        break;
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }

  Tree tree() {
    if (peek('#')) {
      if (!allow_hole_) fail("hole '#' not allowed here");
      ++pos_;
      return Tree::hole();
    }
    std::size_t start = pos_;
    std::string_view n = name();
    if (auto s = alphabet_.find(n)) {
      std::vector<Tree> kids;
      if (peek('(')) {
        ++pos_;
        if (!peek(')')) {
          kids.push_back(tree());
          while (peek(',')) {
            ++pos_;
            kids.push_back(tree());
          }
        }
        if (!peek(')')) fail("expected ')' or ','");
        ++pos_;
      }
      if (kids.size() != alphabet_.rank(*s)) {
        pos_ = start;
        fail("rank mismatch: '" + std::string(n) + "' has rank " +
             std::to_string(alphabet_.rank(*s)) + " but " +
             std::to_string(kids.size()) + " arguments were given");
      }
      return Tree::node(*s, std::move(kids));
    }
    if (auto it = states_.find(std::string(n)); it != states_.end()) {
      if (peek('(')) fail("state '" + std::string(n) + "' cannot have arguments");
      return Tree::state(it->second);
    }
    pos_ = start;
    skip_space();
    fail("unknown symbol or state '" + std::string(n) + "'");
  }

  std::string_view text_;
  const RankedAlphabet& alphabet_;
  std::unordered_map<std::string, StateId> states_;
  bool allow_hole_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string print_tree(const Tree& t, const RankedAlphabet& alphabet,
                       std::span<const std::string> state_names) {
  std::string out;
  print_into(out, t, alphabet, state_names);
  return out;
}

Tree parse_tree(std::string_view text, const RankedAlphabet& alphabet,
                std::span<const std::string> state_names, bool allow_hole) {
  return TreeParser(text, alphabet, state_names, allow_hole).parse();
}

Context parse_context(std::string_view text, const RankedAlphabet& alphabet,
                      std::span<const std::string> state_names) {
  Tree t = parse_tree(text, alphabet, state_names, true);
  if (t.hole_count() != 1)
    throw ParseError("a context needs exactly one '#', found " +
                         std::to_string(t.hole_count()),
                     1, 1);
  return Context(std::move(t));
}

}  // namespace wta
