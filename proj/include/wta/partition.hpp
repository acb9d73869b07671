#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wta/tree.hpp"

namespace wta {

class Wta;

using BlockId = std::uint32_t;

/// An equivalence relation on the states {0, ..., n-1}, stored as blocks.
///
/// Blocks are numbered by their least member and members are sorted, so two
/// partitions describing the same relation compare equal.
class Partition {
 public:
  Partition() = default;

  /// Any labelling works; states with equal labels share a block.
  static Partition from_labels(std::span<const std::uint32_t> labels);
  /// Throws UsageError unless the blocks cover 0..n-1 exactly once.
  static Partition from_blocks(std::size_t n,
                               const std::vector<std::vector<StateId>>& blocks);
  static Partition discrete(std::size_t n);
  static Partition universal(std::size_t n);
  /// {F, Q \ F} (empty parts omitted).
  static Partition by_finality(const Wta& m);

  std::size_t num_states() const noexcept { return block_of_.size(); }
  std::size_t num_blocks() const noexcept { return begin_.empty() ? 0 : begin_.size() - 1; }
  BlockId block_of(StateId q) const { return block_of_[q]; }
  std::span<const StateId> members(BlockId b) const {
    return {members_.data() + begin_[b], members_.data() + begin_[b + 1]};
  }
  StateId representative(BlockId b) const { return members_[begin_[b]]; }
  bool same_block(StateId a, StateId b) const {
    return block_of_[a] == block_of_[b];
  }

  /// Every block lies inside F or inside Q \ F.
  bool respects_finals(const Wta& m) const;
  /// Every block of *this is contained in a block of `coarser`.
  bool refines(const Partition& coarser) const;
  /// Intersection of the two relations.
  Partition meet(const Partition& other) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<BlockId> block_of_;
  std::vector<StateId> members_;
  std::vector<std::uint32_t> begin_;
};

/// `{a, b} {c}` using the automaton's state names.
std::string to_string(const Partition& p, const Wta& m);

}  // namespace wta
