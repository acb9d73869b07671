#pragma once

#include <optional>
#include <vector>

#include "wta/automaton.hpp"
#include "wta/partition.hpp"

namespace wta {

/// Weight-blind congruence test: for every symbol and argument tuples that
/// are blockwise equivalent, the targets are equivalent or both undefined.
/// Requires a deterministic automaton.
bool is_congruence(const Wta& m, const Partition& p);

/// The coarsest congruence of the dwta `m` that refines `initial` and
/// respects the final states. With `initial` universal this is the weak
/// equivalence ~_M (classical equivalence of unw(M)).
///
/// Partition refinement in O(|M| log |Q|): the dwta is viewed as a partial
/// DFA whose letters are (symbol, argument position, remaining arguments),
/// refined with block splitters, processing the smaller half.
Partition coarsest_congruence(const Wta& m, const Partition& initial);

/// coarsest_congruence(m, universal).
Partition weak_equivalence(const Wta& m);

/// Independent Moore-style fixpoint used to cross-check coarsest_congruence.
/// Splits blocks until all members agree on every one-position context with
/// concrete co-arguments. Quadratic; meant for small automata.
Partition naive_congruence_oracle(const Wta& m, const Partition& initial);

/// Result of the bounded Myhill-Nerode check.
struct MyhillNerodeResult {
  Partition partition;
  /// scale[p][q] = s with h(c[p]) chi_F = s * h(c[q]) chi_F for all explored
  /// contexts c, or nullopt when p and q are not equivalent.
  std::vector<std::vector<std::optional<Weight>>> scale;
};

/// Brute-force Myhill-Nerode equivalence: explores contexts with state
/// co-arguments up to `depth` symbols on the hole path, memoizing on
/// (state pair, accumulated weight ratio). Exact for depth >= |Q|.
MyhillNerodeResult myhill_nerode_oracle(const Wta& m, std::size_t depth);

}  // namespace wta
