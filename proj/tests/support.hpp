// Shared generators and brute-force oracles for the test suites.
#pragma once

#include <map>
#include <random>
#include <vector>

#include "wta/automaton.hpp"
#include "wta/partition.hpp"

namespace wta::testing {

using Rng = std::mt19937_64;

/// a:0 b:0 g:1 f:2.
RankedAlphabet small_alphabet();

/// Every ground tree with at most `max_size` nodes, smallest first.
std::vector<Tree> all_trees(const RankedAlphabet& a, std::size_t max_size);

/// Every context with at most `max_size` nodes (hole included) whose other
/// leaves are ground.
std::vector<Context> all_contexts(const RankedAlphabet& a, std::size_t max_size);

/// Bottom-up sum over runs; state leaves count as unit vectors. Written against the transition list only.
std::map<StateId, Weight> brute_force_states(const Wta& m, const Tree& t);
Weight brute_force_weight(const Wta& m, const Tree& t);

/// Random nonzero weight valid in `kind`: small fractions, signed for the
/// rationals, nonnegative for Viterbi.
Weight random_weight(Rng& rng, SemifieldKind kind);
/// Random positive rational different from one.
Weight random_scale(Rng& rng, SemifieldKind kind);

struct WtaShape {
  SemifieldKind kind = SemifieldKind::kRational;
  std::size_t states = 4;
  double density = 0.6;      // probability that a left-hand side is defined
  double final_rate = 0.35;
  bool deterministic = true;
};

Wta random_wta(Rng& rng, const WtaShape& shape);
/// Random dwta restricted to its useful states.
Wta random_trim_dwta(Rng& rng, std::size_t max_states,
                     SemifieldKind kind = SemifieldKind::kRational);

/// Splits every state of a dwta into `copies` states recognizing scaled
/// versions of it (final states keep scale one, so the language is
/// unchanged); copies that are targets are picked at random.
Wta inflate(Rng& rng, const Wta& m, std::size_t copies);

/// Random pushing weights: one on final states.
std::vector<Weight> random_lambda(Rng& rng, const Wta& m);

/// Same automaton with transition `t` reweighted.
Wta with_weight(const Wta& m, TransitionId t, const Weight& w);

/// Random partition of n states into at most `blocks` blocks.
Partition random_partition(Rng& rng, std::size_t n, std::size_t blocks);

}  // namespace wta::testing
