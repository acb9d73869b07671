#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wta/automaton.hpp"
#include "wta/partition.hpp"
#include "wta/tree.hpp"

namespace wta {

/// How a block's sign of life was obtained: sol(block) = sol(parent)[c] where
/// c is the context of `transition` with the hole at `position`.
struct SolStep {
  BlockId parent;
  TransitionId transition;
  std::uint32_t position;
};

/// Live blocks, their signs of life and the per-state pushing weights.
///
/// Signs of life are stored as parent chains and materialized on demand.
/// For every live q: h^(1)(sol([q])[q]) is final and
/// lambda(q) = h^(2)(sol([q])[q]).
class SolTable {
 public:
  const Partition& partition() const noexcept { return partition_; }

  bool is_live_block(BlockId b) const { return live_[b] != 0; }
  bool is_live(StateId q) const { return is_live_block(partition_.block_of(q)); }
  /// Live blocks in discovery order.
  const std::vector<BlockId>& live_blocks() const noexcept { return order_; }

  /// nullopt for final blocks (sign of life #) and for dead blocks.
  const std::optional<SolStep>& step(BlockId b) const { return step_[b]; }
  /// lambda(q); nullopt for dead states.
  const std::optional<Weight>& lambda(StateId q) const { return lambda_[q]; }

  /// Materializes sol(b). Throws UsageError for dead blocks.
  Context sign_of_life(const Wta& m, BlockId b) const;

 private:
  friend SolTable compute_sol(const Wta& m, const Partition& cong);

  Partition partition_;
  std::vector<char> live_;
  std::vector<BlockId> order_;
  std::vector<std::optional<SolStep>> step_;
  std::vector<std::optional<Weight>> lambda_;
};

/// ComputeSoL: explores blocks backwards from the final blocks, FIFO, scanning
/// each block's members in order and their incoming transitions in sorted
/// order. O(|M| + |Q|).
///
/// Throws UsageError for nondeterministic automata and PreconditionError if
/// `cong` is not a congruence of `m` respecting F.
SolTable compute_sol(const Wta& m, const Partition& cong);

}  // namespace wta
