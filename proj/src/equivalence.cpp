#include "wta/equivalence.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "wta/congruence.hpp"
#include "wta/error.hpp"

namespace wta {
namespace {

constexpr BlockId kUnset = std::numeric_limits<BlockId>::max();

void require_comparable(const Wta& a, const Wta& b) {
  if (a.semifield() != b.semifield())
    throw UsageError("automata are over different semifields (" +
                     std::string(to_string(a.semifield())) + " vs " +
                     std::string(to_string(b.semifield())) +
                     ")");
  if (!(a.alphabet() == b.alphabet()))
    throw UsageError("automata are over different ranked alphabets");
}

void require_deterministic(const Wta& m, const char* what) {
  if (!m.is_deterministic())
    throw UsageError(std::string(what) + " is not deterministic");
}

// Canonical form of a deterministic accessible automaton, independent of
// state names.
struct CanonicalForm {
  std::size_t states = 0;
  std::vector<std::tuple<std::string, std::vector<StateId>, StateId>> transitions;
  std::vector<StateId> finals;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonical_form(const Wta& n) {
  constexpr StateId kNone = std::numeric_limits<StateId>::max();
  std::vector<StateId> id(n.num_states(), kNone);
  std::vector<std::uint32_t> missing(n.num_transitions());

  using Key = std::pair<std::string_view, std::vector<StateId>>;
  using Item = std::pair<Key, TransitionId>;
  auto later = [](const Item& a, const Item& b) { return a.first > b.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(later)> ready(later);

  auto push_ready = [&](TransitionId t) {
    std::vector<StateId> src;
    for (StateId q : n.sources(t)) src.push_back(id[q]);
    ready.push({{n.alphabet().name(n.symbol(t)), std::move(src)}, t});
  };
  for (TransitionId t = 0; t < n.num_transitions(); ++t) {
    missing[t] = static_cast<std::uint32_t>(n.sources(t).size());
    if (missing[t] == 0) push_ready(t);
  }

  StateId next = 0;
  while (!ready.empty()) {
    TransitionId t = ready.top().second;
    ready.pop();
    StateId q = n.target(t);
    if (id[q] != kNone) continue;
    id[q] = next++;
    for (const Occurrence& o : n.occurrences(q))
      if (--missing[o.transition] == 0) push_ready(o.transition);
  }
  if (next != n.num_states())
    throw PreconditionError("fta_isomorphic needs accessible automata");

  CanonicalForm f;
  f.states = n.num_states();
  for (TransitionId t = 0; t < n.num_transitions(); ++t) {
    std::vector<StateId> src;
    for (StateId q : n.sources(t)) src.push_back(id[q]);
    f.transitions.emplace_back(n.alphabet().name(n.symbol(t)), std::move(src),
                               id[n.target(t)]);
  }
  std::sort(f.transitions.begin(), f.transitions.end());
  for (StateId q : n.finals()) f.finals.push_back(id[q]);
  std::sort(f.finals.begin(), f.finals.end());
  return f;
}

// Minimize(syn(push_lambda(M)), ~): the unweighted quotient by the coarsest
// congruence of the alphabetic automaton refining ~.
Wta minimal_alphabetic(const Wta& m, const Partition& sim, const PushWeights& lambda) {
  Wta s = alphabetic(push(m, lambda));
  Partition eq = coarsest_congruence(s, sim);
  return merge_states(s, eq, PushWeights::ones(s));
}

}  // namespace

Correspondence compute_correspondence(const Wta& m, const AccessTreeTable& access,
                                      const Wta& other) {
  require_comparable(m, other);
  require_deterministic(other, "second automaton");
  Correspondence c;
  c.map.assign(m.num_states(), 0);
  c.weight.assign(m.num_states(), Weight::one(other.semifield()));
  std::vector<StateId> args;
  for (StateId q : access.order) {
    TransitionId t = *access.entry[q];
    args.clear();
    Weight w = Weight::one(other.semifield());
    for (StateId p : m.sources(t)) {
      args.push_back(c.map[p]);
      w = w * c.weight[p];
    }
    auto step = dwta_step(other, m.symbol(t), args);
    if (!step) {
      c.rejected = q;
      return c;
    }
    c.map[q] = step->state;
    c.weight[q] = w * step->weight;
  }
  return c;
}

Correspondence compute_correspondence(const Wta& m, const Wta& other) {
  return compute_correspondence(m, access_trees(m), other);
}

std::optional<BlockCorrespondence> check_compatibility(
    std::span<const StateId> g, const Partition& sim, const Partition& other_sim) {
  if (g.size() != sim.num_states())
    throw UsageError("state map does not match the partition");
  BlockCorrespondence bc;
  bc.forward.assign(sim.num_blocks(), kUnset);
  bc.backward.assign(other_sim.num_blocks(), kUnset);
  for (StateId q = 0; q < g.size(); ++q) {
    BlockId b = sim.block_of(q);
    BlockId b2 = other_sim.block_of(g[q]);
    if (bc.forward[b] == kUnset) {
      if (bc.backward[b2] != kUnset) return std::nullopt;  // not injective
      bc.forward[b] = b2;
      bc.backward[b2] = b;
    } else if (bc.forward[b] != b2) {
      return std::nullopt;  // not well defined
    }
  }
  for (BlockId b2 : bc.backward)
    if (b2 == kUnset) return std::nullopt;  // not surjective
  return bc;
}

std::vector<Weight> access_weights(const Wta& m, const AccessTreeTable& access) {
  std::vector<Weight> w(m.num_states(), Weight::one(m.semifield()));
  for (StateId q : access.order) {
    TransitionId t = *access.entry[q];
    Weight v = m.weight(t);
    for (StateId p : m.sources(t)) v = v * w[p];
    w[q] = v;
  }
  return w;
}

PushWeights ground_pushing_weights(const Wta& m, const SolTable& sol,
                                   std::span<const Weight> access_weight) {
  const Partition& sim = sol.partition();
  std::vector<Weight> lambda(m.num_states(), Weight::one(m.semifield()));
  for (BlockId b : sol.live_blocks()) {
    const auto& st = sol.step(b);
    if (!st) continue;
    auto src = m.sources(st->transition);
    Weight co = Weight::one(m.semifield());
    for (std::size_t j = 0; j < src.size(); ++j)
      if (j != st->position) co = co * access_weight[src[j]];
    std::vector<StateId> args(src.begin(), src.end());
    for (StateId q : sim.members(b)) {
      args[st->position] = q;
      auto step = dwta_step(m, m.symbol(st->transition), args);
      if (!step) throw PreconditionError("sign of life is undefined");
      lambda[q] = lambda[step->state] * step->weight * co;
    }
  }
  return PushWeights(m, std::move(lambda));
}

TransferResult transfer_pushing_weights(const Wta& other,
                                        const Partition& other_sim,
                                        const BlockCorrespondence& blocks,
                                        const Wta& m, const SolTable& sol,
                                        const Correspondence& g) {
  require_deterministic(other, "second automaton");
  const Partition& sim = sol.partition();
  std::vector<Weight> lambda(other.num_states(), Weight::one(other.semifield()));
  TransferResult r;

  for (BlockId b : sol.live_blocks()) {
    BlockId b2 = blocks.forward[b];
    bool final_block = m.is_final(sim.representative(b));
    const auto& st = sol.step(b);
    for (StateId q2 : other_sim.members(b2)) {
      if (other.is_final(q2) != final_block) {
        r.failure = "state " + other.state_name(q2) +
                    " disagrees in finality with its corresponding block";
        return r;
      }
      if (!st) continue;  // final block, sign of life #
      std::vector<StateId> args;
      Weight co = Weight::one(other.semifield());
      auto src = m.sources(st->transition);
      for (std::size_t j = 0; j < src.size(); ++j) {
        args.push_back(g.map[src[j]]);
        if (j != st->position) co = co * g.weight[src[j]];
      }
      args[st->position] = q2;
      auto step = dwta_step(other, m.symbol(st->transition), args);
      if (!step) {
        r.failure = "transferred sign of life is undefined on state " +
                    other.state_name(q2);
        return r;
      }
      if (other_sim.block_of(step->state) != blocks.forward[st->parent]) {
        r.failure = "transferred sign of life leaves the corresponding block at state " +
                    other.state_name(q2);
        return r;
      }
      lambda[q2] = lambda[step->state] * step->weight * co;
    }
  }
  r.lambda.emplace(other, std::move(lambda));
  return r;
}

bool fta_isomorphic(const Wta& a, const Wta& b) {
  for (const Wta* n : {&a, &b}) {
    if (n->semifield() != SemifieldKind::kBoolean)
      throw UsageError("fta_isomorphic expects Boolean automata");
    require_deterministic(*n, "automaton");
  }
  if (a.num_states() != b.num_states() ||
      a.num_transitions() != b.num_transitions())
    return false;
  return canonical_form(a) == canonical_form(b);
}

EquivalenceResult check_equivalence(const Wta& a, const Wta& b, bool want_witness) {
  require_comparable(a, b);
  require_deterministic(a, "first automaton");
  require_deterministic(b, "second automaton");

  EquivalenceResult res;
  auto reject = [&](std::string reason) {
    res.equivalent = false;
    res.reason = std::move(reason);
    if (want_witness) res.witness = find_witness(a, b);
    return res;
  };

  Wta m = trim_useful(a);
  Wta m2 = trim_useful(b);

  AccessTreeTable access = access_trees(m);
  Correspondence corr = compute_correspondence(m, access, m2);
  if (!corr.complete())
    return reject("access tree of state " + m.state_name(*corr.rejected) +
                  " has no run in the second automaton");

  Partition sim = weak_equivalence(m);
  Partition sim2 = weak_equivalence(m2);
  auto blocks = check_compatibility(corr.map, sim, sim2);
  if (!blocks) return reject("state correspondence is not compatible with ~");

  SolTable sol = compute_sol(m, sim);
  PushWeights lambda = ground_pushing_weights(m, sol, access_weights(m, access));
  TransferResult tr = transfer_pushing_weights(m2, sim2, *blocks, m, sol, corr);
  if (!tr.lambda) return reject(tr.failure);

  Wta n = minimal_alphabetic(m, sim, lambda);
  Wta n2 = minimal_alphabetic(m2, sim2, *tr.lambda);
  if (!fta_isomorphic(n, n2))
    return reject("minimal alphabetic automata are not isomorphic");

  res.equivalent = true;
  return res;
}

bool equivalent(const Wta& a, const Wta& b) {
  return check_equivalence(a, b, false).equivalent;
}

namespace {

// Pairs (p, p') reached by a common ground tree, grown to a fixpoint. Any
// disagreement between the automata shows up as a pair with mismatched
// finality or weight, a one-sided step, or two trees reaching the same pair
// with different weight ratios; the tree is then completed by a ground sign
// of life.
class WitnessSearch {
 public:
  WitnessSearch(const Wta& a, const Wta& b)
      : a_(a), b_(b), m_{trim_useful(a), trim_useful(b)} {
    for (int side = 0; side < 2; ++side) {
      const Wta& m = m_[side];
      std::vector<Tree> access = access_trees(m).unfold_all(m);
      SolTable sol = compute_sol(m, weak_equivalence(m));
      auto& ctx = ground_sol_[side];
      for (StateId q = 0; q < m.num_states(); ++q) {
        Context c = sol.sign_of_life(m, sol.partition().block_of(q));
        ctx.emplace_back(replace_states(c.tree(), [&](StateId p) { return access[p]; }));
      }
      by_state_[side].resize(m.num_states());
    }
  }

  std::optional<Tree> run() {
    constexpr std::size_t kBudget = 20'000'000;
    bool grown = true;
    while (grown && work_ < kBudget) {
      grown = false;
      std::vector<Pending> pending;
      for (int side = 0; side < 2; ++side) {
        if (auto w = pass(side, pending)) return w;
      }
      for (Pending& p : pending) {
        if (auto w = add_pair(std::move(p))) return w;
        grown = true;
      }
      if (work_ >= kBudget) return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  struct Pair {
    StateId q[2];
    Tree tree;
    Weight w[2];
  };
  struct Pending {
    StateId q[2];
    Tree tree;
    Weight w[2];
  };

  std::optional<Tree> check(const Tree& t) {
    if (recognize(a_, t) != recognize(b_, t)) return t;
    return std::nullopt;
  }

  std::optional<Tree> complete(int side, StateId q, const Tree& t) {
    return check(substitute(Context(ground_sol_[side][q]), t));
  }

  std::optional<std::size_t> find(StateId p, StateId p2) const {
    auto it = index_.find(key(p, p2));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  static std::uint64_t key(StateId p, StateId p2) {
    return (static_cast<std::uint64_t>(p) << 32) | p2;
  }

  std::optional<Tree> add_pair(Pending p) {
    if (auto i = find(p.q[0], p.q[1])) return compare(*i, p.tree, p.w);
    bool f0 = m_[0].is_final(p.q[0]);
    bool f1 = m_[1].is_final(p.q[1]);
    if (f0 != f1 || (f0 && p.w[0] != p.w[1])) {
      if (auto w = check(p.tree)) return w;
    }
    std::size_t id = pairs_.size();
    index_.emplace(key(p.q[0], p.q[1]), id);
    by_state_[0][p.q[0]].push_back(id);
    by_state_[1][p.q[1]].push_back(id);
    pairs_.push_back({{p.q[0], p.q[1]}, std::move(p.tree), {p.w[0], p.w[1]}});
    return std::nullopt;
  }

  // Two trees reaching the same pair with different ratios w/w'.
  std::optional<Tree> compare(std::size_t i, const Tree& t, const Weight* w) {
    const Pair& old = pairs_[i];
    if (old.w[0] * w[1] == old.w[1] * w[0]) return std::nullopt;
    if (auto r = complete(0, old.q[0], old.tree)) return r;
    return complete(0, old.q[0], t);
  }

  // Extends known pairs by every transition of one side, run in lockstep on
  // the other side.
  std::optional<Tree> pass(int side, std::vector<Pending>& pending) {
    const Wta& m = m_[side];
    const Wta& o = m_[1 - side];
    const std::size_t known = pairs_.size();
    std::vector<std::size_t> pick;
    std::vector<StateId> args;
    for (TransitionId t = 0; t < m.num_transitions(); ++t) {
      auto src = m.sources(t);
      std::vector<std::span<const std::size_t>> choices;
      bool empty = false;
      for (StateId q : src) {
        const auto& list = by_state_[side][q];
        std::size_t n = std::count_if(list.begin(), list.end(),
                                      [&](std::size_t i) { return i < known; });
        if (n == 0) empty = true;
        choices.emplace_back(list.data(), n);
      }
      if (empty) continue;
      pick.assign(src.size(), 0);
      while (true) {
        if (++work_ > 20'000'000) return std::nullopt;
        args.clear();
        std::vector<Tree> kids;
        Weight w[2] = {m.weight(t), Weight::one(m.semifield())};
        for (std::size_t j = 0; j < src.size(); ++j) {
          const Pair& p = pairs_[choices[j][pick[j]]];
          args.push_back(p.q[1 - side]);
          kids.push_back(p.tree);
          w[0] = w[0] * p.w[side];
          w[1] = w[1] * p.w[1 - side];
        }
        Tree tree = Tree::node(m.symbol(t), std::move(kids));
        auto step = dwta_step(o, m.symbol(t), args);
        if (!step) {
          if (auto r = complete(side, m.target(t), tree)) return r;
        } else {
          Weight other_w = w[1] * step->weight;
          Pending np = side == 0
              ? Pending{{m.target(t), step->state}, tree, {w[0], other_w}}
              : Pending{{step->state, m.target(t)}, tree, {other_w, w[0]}};
          if (auto i = find(np.q[0], np.q[1])) {
            if (auto r = compare(*i, np.tree, np.w)) return r;
          } else if (side == 0) {
            pending.push_back(std::move(np));
          }
        }
        std::size_t j = 0;
        while (j < pick.size() && ++pick[j] == choices[j].size()) pick[j++] = 0;
        if (j == pick.size()) break;
      }
    }
    return std::nullopt;
  }

  const Wta& a_;
  const Wta& b_;
  Wta m_[2];
  std::vector<Tree> ground_sol_[2];
  std::vector<std::vector<std::size_t>> by_state_[2];
  std::vector<Pair> pairs_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::size_t work_ = 0;
};

}  // namespace

std::optional<Tree> find_witness(const Wta& a, const Wta& b) {
  require_comparable(a, b);
  require_deterministic(a, "first automaton");
  require_deterministic(b, "second automaton");
  return WitnessSearch(a, b).run();
}

}  // namespace wta
