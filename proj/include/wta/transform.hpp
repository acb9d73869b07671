#pragma once

#include <span>
#include <string>
#include <vector>

#include "wta/automaton.hpp"
#include "wta/partition.hpp"
#include "wta/sign_of_life.hpp"

namespace wta {

/// Total map lambda: Q -> S \ {0} with lambda(q) = 1 on final states.
class PushWeights {
 public:
  /// Throws PreconditionError if the size is wrong, some value is zero, a
  /// final state gets a value other than one, or the semifield differs.
  PushWeights(const Wta& m, std::vector<Weight> lambda);

  static PushWeights ones(const Wta& m);

  const Weight& operator[](StateId q) const { return lambda_[q]; }
  std::span<const Weight> values() const noexcept { return lambda_; }
  std::size_t size() const noexcept { return lambda_.size(); }
  /// Pointwise inverse; still one on final states.
  PushWeights inverse() const;

 private:
  PushWeights() = default;
  std::vector<Weight> lambda_;
};

/// lambda from a SolTable; dead states (no sign of life) get one.
PushWeights pushing_weights(const Wta& m, const SolTable& sol);

/// push_lambda(M): every transition sigma(q_1..q_k) -> q is rescaled to
/// lambda(q) * mu * prod lambda(q_i)^-1. Works for nondeterministic automata
/// and preserves the recognized weighted tree language. O(|M|).
Wta push(const Wta& m, const PushWeights& lambda);

/// Name of the symbol <sigma, s> in syn(M): `sigma@s`.
std::string alphabetic_symbol_name(const std::string& symbol, const Weight& w);

/// syn(M): the Boolean dwta over symbols <sigma, s> with
/// <sigma, s>(q_1..q_k) -> q iff mu(sigma(q_1..q_k) -> q) = s. Only pairs that
/// occur in M are put in the alphabet.
Wta alphabetic(const Wta& m);

/// Quotient of push_lambda(M) by `cong`: one state per live block, named
/// after its least member. Dead blocks are dropped. Throws PreconditionError
/// if `cong` is not a congruence respecting F or if two blockwise equivalent
/// transitions carry different pushed weights.
Wta merge_states(const Wta& m, const Partition& cong, const PushWeights& lambda);

/// ≡_M for a dwta without useless states: the coarsest congruence of
/// syn(push_lambda(M)) refining ~_M, with lambda from ComputeSoL(M, ~_M).
Partition myhill_nerode_congruence(const Wta& m);

/// Minimal equivalent dwta. Trims useless states, then ~_M, ComputeSoL,
/// syn(push), the refined congruence ≡_M, and merge. O(|M| log |Q|).
Wta minimize(const Wta& m);

}  // namespace wta
