#include "wta/transform.hpp"

#include <unordered_map>

#include "wta/congruence.hpp"
#include "wta/error.hpp"

namespace wta {

PushWeights::PushWeights(const Wta& m, std::vector<Weight> lambda)
    : lambda_(std::move(lambda)) {
  if (lambda_.size() != m.num_states())
    throw PreconditionError("pushing weights must cover every state");
  for (StateId q = 0; q < lambda_.size(); ++q) {
    if (lambda_[q].kind() != m.semifield())
      throw PreconditionError("pushing weight from another semifield");
    if (lambda_[q].is_zero())
      throw PreconditionError("pushing weight of '" + m.state_name(q) +
                              "' is zero");
    if (m.is_final(q) && !lambda_[q].is_one())
      throw PreconditionError("pushing weight of final state '" +
                              m.state_name(q) + "' must be 1");
  }
}

PushWeights PushWeights::ones(const Wta& m) {
  return PushWeights(
      m, std::vector<Weight>(m.num_states(), Weight::one(m.semifield())));
}

PushWeights PushWeights::inverse() const {
  PushWeights out;
  out.lambda_.reserve(lambda_.size());
  for (const Weight& w : lambda_) out.lambda_.push_back(wta::inverse(w));
  return out;
}

PushWeights pushing_weights(const Wta& m, const SolTable& sol) {
  std::vector<Weight> lambda;
  lambda.reserve(m.num_states());
  for (StateId q = 0; q < m.num_states(); ++q)
    lambda.push_back(sol.lambda(q) ? *sol.lambda(q) : Weight::one(m.semifield()));
  return PushWeights(m, std::move(lambda));
}

namespace {

Weight pushed_weight(const Wta& m, TransitionId t, const PushWeights& lambda) {
  Weight w = lambda[m.target(t)] * m.weight(t);
  for (StateId q : m.sources(t)) w = divide(w, lambda[q]);
  return w;
}

std::vector<std::string> names_of(const Wta& m) {
  return {m.state_names().begin(), m.state_names().end()};
}

}  // namespace

Wta push(const Wta& m, const PushWeights& lambda) {
  if (lambda.size() != m.num_states())
    throw PreconditionError("pushing weights do not match the automaton");
  std::vector<TransitionSpec> ts;
  ts.reserve(m.num_transitions());
  for (TransitionId t = 0; t < m.num_transitions(); ++t) {
    TransitionSpec spec = m.transition(t);
    spec.weight = pushed_weight(m, t, lambda);
    ts.push_back(std::move(spec));
  }
  return Wta::make(m.semifield(), m.alphabet(), names_of(m), m.finals(),
                   std::move(ts));
}

std::string alphabetic_symbol_name(const std::string& symbol, const Weight& w) {
  return symbol + "@" + w.to_string();
}

Wta alphabetic(const Wta& m) {
  if (!m.is_deterministic())
    throw UsageError("alphabetic needs a deterministic automaton");
  std::unordered_map<std::string, unsigned> symbols;
  std::vector<std::string> name_of(m.num_transitions());
  for (TransitionId t = 0; t < m.num_transitions(); ++t) {
    name_of[t] = alphabetic_symbol_name(m.alphabet().name(m.symbol(t)),
                                        m.weight(t));
    symbols.try_emplace(name_of[t], m.alphabet().rank(m.symbol(t)));
  }
  RankedAlphabet alphabet(
      std::vector<std::pair<std::string, unsigned>>(symbols.begin(),
                                                    symbols.end()));
  const Weight one = Weight::one(SemifieldKind::kBoolean);
  std::vector<TransitionSpec> ts;
  ts.reserve(m.num_transitions());
  for (TransitionId t = 0; t < m.num_transitions(); ++t) {
    auto src = m.sources(t);
    ts.push_back(TransitionSpec{*alphabet.find(name_of[t]),
                                {src.begin(), src.end()},
                                m.target(t),
                                one});
  }
  return Wta::make(SemifieldKind::kBoolean, std::move(alphabet), names_of(m),
                   m.finals(), std::move(ts));
}

namespace {

struct BlockLhs {
  SymbolId symbol;
  std::vector<BlockId> blocks;
  friend bool operator==(const BlockLhs&, const BlockLhs&) = default;
};

struct BlockLhsHash {
  std::size_t operator()(const BlockLhs& k) const noexcept {
    std::size_t h = k.symbol * 0x9e3779b97f4a7c15ULL;
    for (BlockId b : k.blocks) h = (h ^ b) * 0x100000001b3ULL + (h >> 29);
    return h;
  }
};

}  // namespace

Wta merge_states(const Wta& m, const Partition& cong,
                 const PushWeights& lambda) {
  if (!m.is_deterministic())
    throw UsageError("merge_states needs a deterministic automaton");
  if (lambda.size() != m.num_states())
    throw PreconditionError("pushing weights do not match the automaton");
  if (cong.num_states() != m.num_states() || !cong.respects_finals(m) ||
      !is_congruence(m, cong))
    throw PreconditionError(
        "merge_states: partition is not a congruence respecting F");

  const std::vector<bool> live = coaccessible_states(m);
  std::vector<StateId> new_id(cong.num_blocks(), UINT32_MAX);
  std::vector<std::string> names;
  std::vector<StateId> finals;
  for (BlockId b = 0; b < cong.num_blocks(); ++b) {
    const StateId rep = cong.representative(b);
    if (!live[rep]) continue;
    new_id[b] = static_cast<StateId>(names.size());
    if (m.is_final(rep)) finals.push_back(new_id[b]);
    names.push_back(m.state_name(rep));
  }

  std::unordered_map<BlockLhs, TransitionId, BlockLhsHash> seen;
  std::vector<TransitionSpec> ts;
  std::vector<Weight> pushed;
  for (TransitionId t = 0; t < m.num_transitions(); ++t) {
    const BlockId target = cong.block_of(m.target(t));
    if (new_id[target] == UINT32_MAX) continue;
    BlockLhs key{m.symbol(t), {}};
    bool all_live = true;
    for (StateId q : m.sources(t)) {
      key.blocks.push_back(cong.block_of(q));
      all_live = all_live && new_id[key.blocks.back()] != UINT32_MAX;
    }
    if (!all_live) continue;
    Weight w = pushed_weight(m, t, lambda);
    auto [it, inserted] =
        seen.try_emplace(key, static_cast<TransitionId>(ts.size()));
    if (!inserted) {
      if (ts[it->second].weight != w)
        throw PreconditionError(
            "merge_states: equivalent transitions have different pushed "
            "weights (" + ts[it->second].weight.to_string() + " vs " +
            w.to_string() + ")");
      continue;
    }
    std::vector<StateId> src;
    for (BlockId b : key.blocks) src.push_back(new_id[b]);
    ts.push_back(TransitionSpec{m.symbol(t), std::move(src), new_id[target],
                                std::move(w)});
  }
  return Wta::make(m.semifield(), m.alphabet(), std::move(names),
                   std::move(finals), std::move(ts));
}

Partition myhill_nerode_congruence(const Wta& m) {
  const Partition sim = weak_equivalence(m);
  const SolTable sol = compute_sol(m, sim);
  const Wta syn = alphabetic(push(m, pushing_weights(m, sol)));
  return coarsest_congruence(syn, sim);
}

Wta minimize(const Wta& m) {
  if (!m.is_deterministic())
    throw UsageError("minimize needs a deterministic automaton");
  const Wta useful = trim_useful(m);
  const Partition sim = weak_equivalence(useful);
  const SolTable sol = compute_sol(useful, sim);
  const PushWeights lambda = pushing_weights(useful, sol);
  const Wta syn = alphabetic(push(useful, lambda));
  const Partition equiv = coarsest_congruence(syn, sim);
  return merge_states(useful, equiv, lambda);
}

}  // namespace wta
