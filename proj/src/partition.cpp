#include "wta/partition.hpp"

#include <algorithm>
#include <unordered_map>

#include "wta/automaton.hpp"
#include "wta/error.hpp"

namespace wta {

Partition Partition::from_labels(std::span<const std::uint32_t> labels) {
  Partition p;
  const std::size_t n = labels.size();
  p.block_of_.resize(n);
  std::unordered_map<std::uint32_t, BlockId> seen;
  for (StateId q = 0; q < n; ++q) {
    auto [it, inserted] =
        seen.try_emplace(labels[q], static_cast<BlockId>(seen.size()));
    p.block_of_[q] = it->second;
  }
  const std::size_t k = seen.size();
  p.begin_.assign(k + 1, 0);
  for (BlockId b : p.block_of_) ++p.begin_[b + 1];
  for (std::size_t b = 0; b < k; ++b) p.begin_[b + 1] += p.begin_[b];
  p.members_.resize(n);
  std::vector<std::uint32_t> fill(p.begin_.begin(), p.begin_.end() - 1);
  for (StateId q = 0; q < n; ++q) p.members_[fill[p.block_of_[q]]++] = q;
  return p;
}

Partition Partition::from_blocks(
    std::size_t n, const std::vector<std::vector<StateId>>& blocks) {
  std::vector<std::uint32_t> labels(n, UINT32_MAX);
  for (std::uint32_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw UsageError("empty block in partition");
    for (StateId q : blocks[b]) {
      if (q >= n || labels[q] != UINT32_MAX)
        throw UsageError("blocks do not partition the state set");
      labels[q] = b;
    }
  }
  if (std::find(labels.begin(), labels.end(), UINT32_MAX) != labels.end())
    throw UsageError("blocks do not cover the state set");
  return from_labels(labels);
}

Partition Partition::discrete(std::size_t n) {
  std::vector<std::uint32_t> labels(n);
  for (std::uint32_t q = 0; q < n; ++q) labels[q] = q;
  return from_labels(labels);
}

Partition Partition::universal(std::size_t n) {
  std::vector<std::uint32_t> labels(n, 0);
  return from_labels(labels);
}

Partition Partition::by_finality(const Wta& m) {
  std::vector<std::uint32_t> labels(m.num_states());
  for (StateId q = 0; q < m.num_states(); ++q) labels[q] = m.is_final(q) ? 1 : 0;
  return from_labels(labels);
}

bool Partition::respects_finals(const Wta& m) const {
  if (m.num_states() != num_states()) return false;
  for (BlockId b = 0; b < num_blocks(); ++b) {
    const bool f = m.is_final(representative(b));
    for (StateId q : members(b))
      if (m.is_final(q) != f) return false;
  }
  return true;
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.num_states() != num_states()) return false;
  for (BlockId b = 0; b < num_blocks(); ++b) {
    const BlockId c = coarser.block_of(representative(b));
    for (StateId q : members(b))
      if (coarser.block_of(q) != c) return false;
  }
  return true;
}

Partition Partition::meet(const Partition& other) const {
  if (other.num_states() != num_states())
    throw UsageError("partitions over different state sets");
  std::vector<std::uint32_t> labels(num_states());
  const auto width = static_cast<std::uint64_t>(other.num_blocks());
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  for (StateId q = 0; q < num_states(); ++q) {
    std::uint64_t key = block_of_[q] * width + other.block_of(q);
    labels[q] = ids.try_emplace(key, static_cast<std::uint32_t>(ids.size()))
                    .first->second;
  }
  return from_labels(labels);
}

std::string to_string(const Partition& p, const Wta& m) {
  std::string out;
  for (BlockId b = 0; b < p.num_blocks(); ++b) {
    if (b > 0) out += ' ';
    out += '{';
    bool first = true;
    for (StateId q : p.members(b)) {
      if (!first) out += ", ";
      first = false;
      out += m.state_name(q);
    }
    out += '}';
  }
  return out;
}

}  // namespace wta
