#include "wta/congruence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "wta/error.hpp"

namespace wta {

namespace {

void require_dwta(const Wta& m, const char* what) {
  if (!m.is_deterministic())
    throw UsageError(std::string(what) + " needs a deterministic automaton");
}

/// Restricts `initial` so that it respects F.
Partition split_by_finality(const Wta& m, const Partition& initial) {
  if (initial.num_states() != m.num_states())
    throw UsageError("initial partition has " +
                     std::to_string(initial.num_states()) +
                     " states, automaton has " +
                     std::to_string(m.num_states()));
  return initial.meet(Partition::by_finality(m));
}

}  // namespace

bool is_congruence(const Wta& m, const Partition& p) {
  require_dwta(m, "is_congruence");
  if (p.num_states() != m.num_states()) return false;
  // Transitions grouped by (symbol, source blocks). Every group must have a
  // single target block and define all blockwise-equivalent tuples.
  std::map<std::pair<SymbolId, std::vector<BlockId>>,
           std::pair<BlockId, std::size_t>>
      groups;
  for (TransitionId t = 0; t < m.num_transitions(); ++t) {
    std::vector<BlockId> key;
    for (StateId q : m.sources(t)) key.push_back(p.block_of(q));
    const BlockId target = p.block_of(m.target(t));
    auto [it, inserted] =
        groups.try_emplace({m.symbol(t), std::move(key)}, target, 0);
    if (it->second.first != target) return false;
    ++it->second.second;
  }
  for (const auto& [key, value] : groups) {
    std::size_t expected = 1;
    for (BlockId b : key.second) {
      expected *= p.members(b).size();
      if (expected > value.second) return false;
    }
    if (expected != value.second) return false;
  }
  return true;
}

// --- Hopcroft-style refinement ----------------------------------------------

namespace {

class RefinablePartition {
 public:
  RefinablePartition(const Partition& initial)
      : elems_(initial.num_states()),
        loc_(initial.num_states()),
        block_(initial.num_states()) {
    std::uint32_t pos = 0;
    for (BlockId b = 0; b < initial.num_blocks(); ++b) {
      first_.push_back(pos);
      for (StateId q : initial.members(b)) {
        elems_[pos] = q;
        loc_[q] = pos;
        block_[q] = b;
        ++pos;
      }
      end_.push_back(pos);
    }
    mid_ = first_;
  }

  std::size_t num_blocks() const { return first_.size(); }
  std::span<const StateId> members(BlockId b) const {
    return {elems_.data() + first_[b], elems_.data() + end_[b]};
  }
  BlockId block_of(StateId q) const { return block_[q]; }

  void mark(StateId q) {
    const BlockId b = block_[q];
    const std::uint32_t i = loc_[q];
    if (i < mid_[b]) return;  // already marked
    if (mid_[b] == first_[b]) touched_.push_back(b);
    const std::uint32_t j = mid_[b]++;
    std::swap(elems_[i], elems_[j]);
    loc_[elems_[i]] = i;
    loc_[elems_[j]] = j;
  }

  /// Splits every touched block into marked / unmarked parts. The smaller
  /// part gets the new id, which is passed to `on_new`.
  template <class OnNew>
  void split_touched(OnNew&& on_new) {
    for (BlockId b : touched_) {
      const std::uint32_t f = first_[b], m = mid_[b], e = end_[b];
      mid_[b] = f;
      if (m == e) continue;
      const BlockId nb = static_cast<BlockId>(first_.size());
      if (m - f <= e - m) {
        first_.push_back(f);
        end_.push_back(m);
        first_[b] = m;
      } else {
        first_.push_back(m);
        end_.push_back(e);
        end_[b] = m;
      }
      mid_[b] = first_[b];
      mid_.push_back(first_[nb]);
      for (std::uint32_t i = first_[nb]; i < end_[nb]; ++i)
        block_[elems_[i]] = nb;
      on_new(nb);
    }
    touched_.clear();
  }

  Partition result() const {
    return Partition::from_labels(std::span<const std::uint32_t>(block_));
  }

 private:
  std::vector<StateId> elems_;
  std::vector<std::uint32_t> loc_;
  std::vector<BlockId> block_;
  std::vector<std::uint32_t> first_, end_, mid_;
  std::vector<BlockId> touched_;
};

/// Assigns an id to each (transition, position) such that two pairs share an
/// id iff they have the same symbol, position and co-arguments.
std::vector<std::uint32_t> position_letters(const Wta& m,
                                            std::vector<std::uint32_t>& offset,
                                            std::uint32_t& num_letters) {
  offset.assign(m.num_transitions() + 1, 0);
  for (TransitionId t = 0; t < m.num_transitions(); ++t)
    offset[t + 1] = offset[t] + static_cast<std::uint32_t>(m.sources(t).size());

  using Key = std::pair<TransitionId, std::uint32_t>;
  auto hash = [&](const Key& k) {
    auto src = m.sources(k.first);
    std::size_t h = (m.symbol(k.first) * 0x9e3779b97f4a7c15ULL) ^ (k.second + 1);
    for (std::uint32_t i = 0; i < src.size(); ++i)
      if (i != k.second) h = (h ^ src[i]) * 0x100000001b3ULL + (h >> 31);
    return h;
  };
  auto eq = [&](const Key& a, const Key& b) {
    if (a.second != b.second || m.symbol(a.first) != m.symbol(b.first))
      return false;
    auto x = m.sources(a.first);
    auto y = m.sources(b.first);
    for (std::uint32_t i = 0; i < x.size(); ++i)
      if (i != a.second && x[i] != y[i]) return false;
    return true;
  };
  std::unordered_map<Key, std::uint32_t, decltype(hash), decltype(eq)> ids(
      offset.back() + 1, hash, eq);
  std::vector<std::uint32_t> letter(offset.back());
  for (TransitionId t = 0; t < m.num_transitions(); ++t)
    for (std::uint32_t i = 0; i < m.sources(t).size(); ++i)
      letter[offset[t] + i] =
          ids.try_emplace(Key{t, i}, static_cast<std::uint32_t>(ids.size()))
              .first->second;
  num_letters = static_cast<std::uint32_t>(ids.size());
  return letter;
}

}  // namespace

Partition coarsest_congruence(const Wta& m, const Partition& initial) {
  require_dwta(m, "coarsest_congruence");
  const Partition start = split_by_finality(m, initial);

  std::vector<std::uint32_t> offset;
  std::uint32_t num_letters = 0;
  const std::vector<std::uint32_t> letter =
      position_letters(m, offset, num_letters);

  RefinablePartition part(start);
  // With partial transition functions every initial block must be used as
  // a splitter; afterwards only the smaller half of each split is enqueued.
  std::vector<BlockId> queue;
  std::vector<char> queued(part.num_blocks(), 1);
  for (BlockId b = 0; b < part.num_blocks(); ++b) queue.push_back(b);

  std::vector<std::uint32_t> count(num_letters, 0), begin(num_letters, 0);
  std::vector<std::uint32_t> touched;
  std::vector<std::pair<std::uint32_t, StateId>> edges;
  std::vector<StateId> bucket;
  std::vector<StateId> splitter;

  while (!queue.empty()) {
    const BlockId c = queue.back();
    queue.pop_back();
    queued[c] = 0;
    auto mem = part.members(c);
    splitter.assign(mem.begin(), mem.end());

    edges.clear();
    for (StateId t : splitter)
      for (TransitionId tr : m.incoming(t)) {
        auto src = m.sources(tr);
        for (std::uint32_t i = 0; i < src.size(); ++i)
          edges.emplace_back(letter[offset[tr] + i], src[i]);
      }
    if (edges.empty()) continue;

    touched.clear();
    for (const auto& [a, p] : edges)
      if (count[a]++ == 0) touched.push_back(a);
    std::uint32_t pos = 0;
    for (std::uint32_t a : touched) {
      begin[a] = pos;
      pos += count[a];
      count[a] = 0;
    }
    bucket.resize(pos);
    for (const auto& [a, p] : edges) bucket[begin[a] + count[a]++] = p;

    for (std::uint32_t a : touched) {
      for (std::uint32_t j = begin[a]; j < begin[a] + count[a]; ++j)
        part.mark(bucket[j]);
      count[a] = 0;
      part.split_touched([&](BlockId nb) {
        queued.push_back(1);
        queue.push_back(nb);
      });
    }
  }
  return part.result();
}

Partition weak_equivalence(const Wta& m) {
  return coarsest_congruence(m, Partition::universal(m.num_states()));
}

// --- Naive oracle -----------------------------------------------------------

Partition naive_congruence_oracle(const Wta& m, const Partition& initial) {
  require_dwta(m, "naive_congruence_oracle");
  Partition current = split_by_finality(m, initial);
  const std::size_t n = m.num_states();
  const auto& sigma = m.alphabet();
  constexpr std::uint32_t kUndefined = UINT32_MAX;

  while (true) {
    // Signature of q: current block, then for every symbol, position and
    // tuple of co-arguments the block of the target (or undefined).
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> labels(n);
    for (StateId q = 0; q < n; ++q) {
      std::vector<std::uint32_t> sig{current.block_of(q)};
      for (SymbolId s = 0; s < sigma.size(); ++s) {
        const unsigned k = sigma.rank(s);
        for (unsigned i = 0; i < k; ++i) {
          std::vector<StateId> args(k, 0);
          args[i] = q;
          // Odometer over the other k-1 positions.
          while (true) {
            auto step = dwta_step(m, s, args);
            sig.push_back(step ? current.block_of(step->state) : kUndefined);
            unsigned j = 0;
            for (; j < k; ++j) {
              if (j == i) continue;
              if (++args[j] < n) break;
              args[j] = 0;
            }
            if (j == k) break;
          }
        }
      }
      labels[q] = ids.try_emplace(std::move(sig),
                                  static_cast<std::uint32_t>(ids.size()))
                      .first->second;
    }
    Partition next = Partition::from_labels(labels);
    if (next.num_blocks() == current.num_blocks()) return next;
    current = std::move(next);
  }
}

// --- Myhill-Nerode oracle ---------------------------------------------------

namespace {

constexpr StateId kBottom = UINT32_MAX;

struct PairKey {
  StateId p1, p2;
  Weight ratio;
  friend bool operator<(const PairKey& a, const PairKey& b) {
    if (a.p1 != b.p1) return a.p1 < b.p1;
    if (a.p2 != b.p2) return a.p2 < b.p2;
    return a.ratio < b.ratio;
  }
};

/// Checks whether a single s works for q1 and q2 over all explored contexts.
std::optional<Weight> scaling_factor(const Wta& m, StateId q1, StateId q2,
                                     const std::vector<bool>& live,
                                     std::size_t depth) {
  const Weight one = Weight::one(m.semifield());
  const auto& sigma = m.alphabet();
  const std::size_t n = m.num_states();
  std::optional<Weight> s;
  std::set<PairKey> seen;
  std::vector<PairKey> frontier{{q1, q2, one}};
  seen.insert(frontier.front());

  for (std::size_t level = 0; !frontier.empty(); ++level) {
    std::vector<PairKey> next;
    for (const PairKey& cur : frontier) {
      const bool live1 = cur.p1 != kBottom && live[cur.p1];
      const bool live2 = cur.p2 != kBottom && live[cur.p2];
      if (!live1 && !live2) continue;
      if (live1 != live2) return std::nullopt;
      const bool f1 = m.is_final(cur.p1), f2 = m.is_final(cur.p2);
      if (f1 != f2) return std::nullopt;
      if (f1) {
        if (s && *s != cur.ratio) return std::nullopt;
        s = cur.ratio;
      }
      if (level == depth) continue;
      for (SymbolId sym = 0; sym < sigma.size(); ++sym) {
        const unsigned k = sigma.rank(sym);
        for (unsigned i = 0; i < k; ++i) {
          std::vector<StateId> a1(k, 0), a2(k, 0);
          while (true) {
            a1[i] = cur.p1;
            a2[i] = cur.p2;
            auto x = dwta_step(m, sym, a1);
            auto y = dwta_step(m, sym, a2);
            PairKey nk{x ? x->state : kBottom, y ? y->state : kBottom, one};
            if (x && y) nk.ratio = cur.ratio * divide(x->weight, y->weight);
            if (seen.insert(nk).second) next.push_back(std::move(nk));
            unsigned j = 0;
            for (; j < k; ++j) {
              if (j == i) continue;
              if (++a1[j] < n) {
                a2[j] = a1[j];
                break;
              }
              a1[j] = a2[j] = 0;
            }
            if (j == k) break;
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return s ? s : std::optional<Weight>(one);
}

}  // namespace

MyhillNerodeResult myhill_nerode_oracle(const Wta& m, std::size_t depth) {
  require_dwta(m, "myhill_nerode_oracle");
  const std::size_t n = m.num_states();

  // Liveness by backward search over transitions (any co-arguments).
  std::vector<bool> live(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (TransitionId t = 0; t < m.num_transitions(); ++t) {
      const bool target_live = live[m.target(t)] || m.is_final(m.target(t));
      if (!target_live) continue;
      for (StateId p : m.sources(t))
        if (!live[p]) live[p] = changed = true;
    }
  }
  for (StateId q = 0; q < n; ++q)
    if (m.is_final(q)) live[q] = true;

  MyhillNerodeResult result;
  result.scale.assign(n, std::vector<std::optional<Weight>>(n));
  for (StateId p = 0; p < n; ++p)
    for (StateId q = 0; q < n; ++q)
      result.scale[p][q] = scaling_factor(m, p, q, live, depth);

  std::vector<std::uint32_t> labels(n);
  std::vector<StateId> reps;
  for (StateId q = 0; q < n; ++q) {
    std::uint32_t label = static_cast<std::uint32_t>(reps.size());
    for (std::uint32_t r = 0; r < reps.size(); ++r)
      if (result.scale[q][reps[r]]) {
        label = r;
        break;
      }
    if (label == reps.size()) reps.push_back(q);
    labels[q] = label;
  }
  result.partition = Partition::from_labels(labels);
  return result;
}

}  // namespace wta
