#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wta {

using SymbolId = std::uint32_t;
using StateId = std::uint32_t;

/// True for tokens usable as symbol or state names: nonempty, no whitespace
/// and none of `( ) , # : >`.
bool is_valid_name(std::string_view name);

/// A finite ranked alphabet. Symbols are kept sorted by name, so symbol ids
/// follow the lexicographic order of the names.
class RankedAlphabet {
 public:
  RankedAlphabet() = default;
  /// Throws UsageError on invalid names or a symbol declared twice.
  explicit RankedAlphabet(std::vector<std::pair<std::string, unsigned>> symbols);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::string& name(SymbolId s) const { return names_[s]; }
  unsigned rank(SymbolId s) const { return ranks_[s]; }
  std::optional<SymbolId> find(std::string_view name) const;
  unsigned max_rank() const noexcept;

  friend bool operator==(const RankedAlphabet&, const RankedAlphabet&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<unsigned> ranks_;
};

/// Immutable tree over a ranked alphabet whose leaves may also be states or
/// the hole `#`. Labels are ids: symbol ids into a RankedAlphabet and state
/// ids into an automaton's state list. Copies share structure.
class Tree {
 public:
  enum class Kind : std::uint8_t { kState, kSymbol, kHole };

  static Tree state(StateId q);
  static Tree hole();
  static Tree node(SymbolId symbol, std::vector<Tree> children = {});

  Kind kind() const noexcept { return node_->kind; }
  bool is_state() const noexcept { return kind() == Kind::kState; }
  bool is_symbol() const noexcept { return kind() == Kind::kSymbol; }
  bool is_hole() const noexcept { return kind() == Kind::kHole; }
  /// State id for state leaves, symbol id for symbol nodes, 0 for the hole.
  std::uint32_t label() const noexcept { return node_->label; }
  std::span<const Tree> children() const noexcept { return node_->children; }

  /// |t|: number of nodes, counting state leaves and the hole.
  std::size_t size() const noexcept { return node_->size; }
  std::size_t hole_count() const noexcept { return node_->holes; }
  std::size_t state_leaf_count() const noexcept { return node_->state_leaves; }
  bool is_ground() const noexcept {
    return node_->holes == 0 && node_->state_leaves == 0;
  }

  friend bool operator==(const Tree& a, const Tree& b);
  friend std::strong_ordering operator<=>(const Tree& a, const Tree& b);

 private:
  struct Node {
    Kind kind;
    std::uint32_t label;
    std::vector<Tree> children;
    std::size_t size;
    std::size_t holes;
    std::size_t state_leaves;
  };
  explicit Tree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// A tree with exactly one hole.
class Context {
 public:
  /// The trivial context `#`.
  Context() : tree_(Tree::hole()) {}
  /// Throws UsageError unless `t` has exactly one hole.
  explicit Context(Tree t);

  const Tree& tree() const noexcept { return tree_; }
  std::size_t size() const noexcept { return tree_.size(); }
  bool is_trivial() const noexcept { return tree_.is_hole(); }

  friend bool operator==(const Context&, const Context&) = default;
  friend auto operator<=>(const Context& a, const Context& b) {
    return a.tree_ <=> b.tree_;
  }

 private:
  Tree tree_;
};

/// c[t]: replaces the hole of `c` by `t`.
Tree substitute(const Context& c, const Tree& t);
/// c[c']: the result is again a context.
Context substitute(const Context& c, const Context& inner);

/// The context sigma(q_1, ..., q_{i-1}, #, q_{i+1}, ..., q_k) where the
/// entries of `args` other than `position` become state leaves.
Context step_context(SymbolId symbol, std::span<const StateId> args,
                     std::size_t position);

/// Replaces every state leaf q by `mapping[q]`.
Tree rename_states(const Tree& t, std::span<const StateId> mapping);
Context rename_states(const Context& c, std::span<const StateId> mapping);

/// Replaces every state leaf q by `leaf(q)`.
template <class F>
Tree replace_states(const Tree& t, F&& leaf) {
  if (t.is_state()) return leaf(static_cast<StateId>(t.label()));
  if (!t.is_symbol() || t.state_leaf_count() == 0) return t;
  std::vector<Tree> kids;
  kids.reserve(t.children().size());
  for (const Tree& c : t.children()) kids.push_back(replace_states(c, leaf));
  return Tree::node(t.label(), std::move(kids));
}

/// Text form `NAME` / `NAME(T, ..., T)`; the hole is written `#`.
std::string print_tree(const Tree& t, const RankedAlphabet& alphabet,
                       std::span<const std::string> state_names = {});

/// Parses the text form. Names resolve to symbols first, then to states.
/// Throws ParseError (unknown name, rank mismatch, syntax) with the column.
Tree parse_tree(std::string_view text, const RankedAlphabet& alphabet,
                std::span<const std::string> state_names = {},
                bool allow_hole = false);
Context parse_context(std::string_view text, const RankedAlphabet& alphabet,
                      std::span<const std::string> state_names = {});

}  // namespace wta
