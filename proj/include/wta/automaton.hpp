#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wta/semifield.hpp"
#include "wta/tree.hpp"

namespace wta {

using TransitionId = std::uint32_t;

/// A transition sigma(q_1..q_k) -> q with its weight, addressed by ids.
struct TransitionSpec {
  SymbolId symbol;
  std::vector<StateId> sources;
  StateId target;
  Weight weight;
};

/// Position of a state among the sources of a transition.
struct Occurrence {
  TransitionId transition;
  std::uint32_t position;
};

/// Weighted tree automaton (Q, Sigma, mu, F) with final states.
///
/// Immutable after construction; copies share the underlying tables.
/// States are sorted by name and transitions by (symbol, sources, target),
/// so every iteration order below is stable and name-ordered. Only the
/// support of mu is stored: absent transitions have weight zero.
class Wta {
 public:
  /// Empty automaton over the empty alphabet.
  Wta();

  /// Validates and canonicalizes. State and transition ids in `finals` and
  /// `transitions` refer to positions in `state_names`; the result renumbers
  /// states in name order. Throws UsageError on unknown ids, rank mismatches,
  /// zero weights, weights from another semifield, duplicate transitions, or
  /// names shared between states and symbols.
  static Wta make(SemifieldKind kind, RankedAlphabet alphabet,
                  std::vector<std::string> state_names,
                  std::vector<StateId> finals,
                  std::vector<TransitionSpec> transitions);

  SemifieldKind semifield() const noexcept;
  const RankedAlphabet& alphabet() const noexcept;

  std::size_t num_states() const noexcept;
  const std::string& state_name(StateId q) const;
  std::span<const std::string> state_names() const noexcept;
  std::optional<StateId> find_state(std::string_view name) const;
  bool is_final(StateId q) const;
  std::vector<StateId> finals() const;

  std::size_t num_transitions() const noexcept;
  SymbolId symbol(TransitionId t) const;
  std::span<const StateId> sources(TransitionId t) const;
  StateId target(TransitionId t) const;
  const Weight& weight(TransitionId t) const;
  TransitionSpec transition(TransitionId t) const;

  /// Transitions whose target is q, in sorted order.
  std::span<const TransitionId> incoming(StateId q) const;
  /// Every (transition, position) where q occurs as a source.
  std::span<const Occurrence> occurrences(StateId q) const;
  /// All transitions with left-hand side sigma(args) (contiguous id range).
  std::pair<TransitionId, TransitionId> lhs_range(
      SymbolId symbol, std::span<const StateId> args) const;
  /// Transitions with the given symbol (contiguous id range).
  std::pair<TransitionId, TransitionId> symbol_range(SymbolId symbol) const;

  /// No left-hand side has two targets.
  bool is_deterministic() const noexcept;
  /// |M| = sum over supported transitions of (|lhs| + 1).
  std::size_t size() const noexcept;

  friend bool operator==(const Wta& a, const Wta& b);

 private:
  struct Data;
  explicit Wta(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Sparse vector state -> nonzero weight, sorted by state.
using StateVector = std::vector<std::pair<StateId, Weight>>;

/// h_mu(t -> q) for every q with a nonzero value. State leaves evaluate to
/// unit vectors; for nondeterministic automata all runs are summed.
StateVector evaluate(const Wta& m, const Tree& t);

/// M(t) = sum over final q of h_mu(t -> q).
Weight recognize(const Wta& m, const Tree& t);

bool is_deterministic(const Wta& m);

/// Target state and weight of a deterministic step or of a whole run.
struct Step {
  StateId state;
  Weight weight;
  friend bool operator==(const Step&, const Step&) = default;
};

/// mu(sigma(args)) as the pair (mu^(1), mu^(2)); nullopt is "undefined".
/// Throws UsageError on a nondeterministic automaton.
std::optional<Step> dwta_step(const Wta& m, SymbolId symbol,
                              std::span<const StateId> args);

/// h_mu(t) for a dwta as (h^(1), h^(2)); nullopt when undefined.
std::optional<Step> run(const Wta& m, const Tree& t);

/// unw(M): the same structure over the Boolean semifield, all weights 1.
Wta unweighted(const Wta& m);

/// States reachable by some ground tree.
std::vector<bool> accessible_states(const Wta& m);
/// States from which a final state is reachable through some context.
std::vector<bool> coaccessible_states(const Wta& m);
bool is_accessible(const Wta& m);

/// Keeps the states with keep[q] set and the transitions among them.
Wta restrict_states(const Wta& m, const std::vector<bool>& keep);

/// Removes inaccessible states (linear worklist saturation).
Wta trim_accessible(const Wta& m);
/// Removes states that are inaccessible or cannot reach a final state.
Wta trim_useful(const Wta& m);

/// Access trees a(q) stored flat: each reachable state refers to one
/// transition whose sources were resolved strictly earlier.
struct AccessTreeTable {
  std::vector<std::optional<TransitionId>> entry;
  /// States in the order they were resolved.
  std::vector<StateId> order;

  /// Unfolds every a(q); subtrees are shared.
  std::vector<Tree> unfold_all(const Wta& m) const;
  Tree unfold(const Wta& m, StateId q) const;
};

/// Breadth-first access trees. Requires a deterministic accessible automaton;
/// throws PreconditionError when a state is unreachable.
AccessTreeTable access_trees(const Wta& m);

}  // namespace wta
