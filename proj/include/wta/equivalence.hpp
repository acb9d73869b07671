#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wta/automaton.hpp"
#include "wta/partition.hpp"
#include "wta/sign_of_life.hpp"
#include "wta/transform.hpp"

namespace wta {

/// g: Q -> Q' with g(q) = h'^(1)(a(q)).
struct Correspondence {
  std::vector<StateId> map;
  /// h'^(2)(a(q)), the weight of the access tree in the second automaton.
  std::vector<Weight> weight;
  /// Set when some access tree a(q) is rejected by M'; `map` is then partial.
  std::optional<StateId> rejected;

  bool complete() const noexcept { return !rejected.has_value(); }
};

/// Runs every access tree of `m` through `other`, reusing the results for
/// subtrees. O(|M|). Throws UsageError on alphabet mismatch.
Correspondence compute_correspondence(const Wta& m, const AccessTreeTable& access,
                                      const Wta& other);
Correspondence compute_correspondence(const Wta& m, const Wta& other);

/// The block map induced by g and its inverse.
struct BlockCorrespondence {
  std::vector<BlockId> forward;   // Q/~_M  -> Q'/~_M'
  std::vector<BlockId> backward;  // Q'/~_M' -> Q/~_M
};

/// Succeeds iff g maps ~_M blocks into ~_M' blocks and the induced map is a
/// bijection. O(|Q| + |Q'|).
std::optional<BlockCorrespondence> check_compatibility(
    std::span<const StateId> g, const Partition& sim, const Partition& other_sim);

/// h^(2)(a(q)) for every state, following the access table.
std::vector<Weight> access_weights(const Wta& m, const AccessTreeTable& access);

/// Pushing weights from the signs of life with every state leaf p replaced
/// by its access tree a(p): lambda(q) = h^(2)(sol([q])[a(.)][q]). Unlike the
/// weights of compute_sol, these depend only on the ground context, so two
/// equivalent automata push to equal weights. Dead states get one.
PushWeights ground_pushing_weights(const Wta& m, const SolTable& sol,
                                   std::span<const Weight> access_weight);

/// The same for M' through the transferred signs of life:
/// lambda'(q') = h'^(2)(ren_g(sol(gbar^-1([q'])))[a(.)][q']), evaluated step
/// by step along the parent chain. Reports why the transferred context is
/// not a sign of life when it is not.
struct TransferResult {
  std::optional<PushWeights> lambda;
  /// Why the transferred context is not a sign of life, when it is not.
  std::string failure;
};

TransferResult transfer_pushing_weights(const Wta& other,
                                        const Partition& other_sim,
                                        const BlockCorrespondence& blocks,
                                        const Wta& m, const SolTable& sol,
                                        const Correspondence& g);

/// Isomorphism of deterministic accessible Boolean automata by canonical
/// numbering: the least ready transition (symbol name, canonical sources)
/// numbers its target next. O(|N| log |N|).
bool fta_isomorphic(const Wta& a, const Wta& b);

struct EquivalenceResult {
  bool equivalent = false;
  /// Stage that decided a negative answer.
  std::string reason;
  /// Ground tree t with A(t) != B(t); only filled when requested.
  std::optional<Tree> witness;
};

/// Equivalence of two dwta over the same alphabet and semifield: useful-state
/// trim, correspondence, ~_M and ~_M', ComputeSoL, compatibility, ground
/// pushing weights on both sides, minimization of both alphabetic automata,
/// isomorphism.
EquivalenceResult check_equivalence(const Wta& a, const Wta& b,
                                    bool want_witness = false);

bool equivalent(const Wta& a, const Wta& b);

/// Searches a ground tree on which the two dwta disagree, exploring the
/// product of both automata (O(|M| |M'|) pairs). Every returned tree has been
/// checked with recognize. nullopt if the automata are equivalent or the
/// search budget is exhausted.
std::optional<Tree> find_witness(const Wta& a, const Wta& b);

}  // namespace wta
