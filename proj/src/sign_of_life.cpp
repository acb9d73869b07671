#include "wta/sign_of_life.hpp"

#include <deque>

#include "wta/congruence.hpp"
#include "wta/error.hpp"

namespace wta {

SolTable compute_sol(const Wta& m, const Partition& cong) {
  if (!m.is_deterministic())
    throw UsageError("compute_sol needs a deterministic automaton");
  if (cong.num_states() != m.num_states() || !cong.respects_finals(m))
    throw PreconditionError("compute_sol: partition does not respect F");
  if (!is_congruence(m, cong))
    throw PreconditionError("compute_sol: partition is not a congruence");

  SolTable sol;
  sol.partition_ = cong;
  const std::size_t blocks = cong.num_blocks();
  sol.live_.assign(blocks, 0);
  sol.step_.assign(blocks, std::nullopt);
  sol.lambda_.assign(m.num_states(), std::nullopt);

  std::deque<BlockId> unexplored;
  for (BlockId b = 0; b < blocks; ++b) {
    if (!m.is_final(cong.representative(b))) continue;
    sol.live_[b] = 1;
    sol.order_.push_back(b);
    for (StateId q : cong.members(b))
      sol.lambda_[q] = Weight::one(m.semifield());
    unexplored.push_back(b);
  }

  std::vector<StateId> args;
  while (!unexplored.empty()) {
    const BlockId b = unexplored.front();
    unexplored.pop_front();
    for (StateId target : cong.members(b)) {
      for (TransitionId t : m.incoming(target)) {
        auto src = m.sources(t);
        for (std::uint32_t i = 0; i < src.size(); ++i) {
          const BlockId bi = cong.block_of(src[i]);
          if (sol.live_[bi]) continue;
          sol.live_[bi] = 1;
          sol.order_.push_back(bi);
          unexplored.push_back(bi);
          sol.step_[bi] = SolStep{b, t, i};
          // lambda(q) = lambda(mu1(c[q])) * mu2(c[q]) for all q in the block.
          args.assign(src.begin(), src.end());
          for (StateId q : cong.members(bi)) {
            args[i] = q;
            auto step = dwta_step(m, m.symbol(t), args);
            if (!step || cong.block_of(step->state) != b)
              throw PreconditionError(
                  "compute_sol: partition is not a congruence");
            sol.lambda_[q] = *sol.lambda_[step->state] * step->weight;
          }
        }
      }
    }
  }
  return sol;
}

Context SolTable::sign_of_life(const Wta& m, BlockId b) const {
  if (!is_live_block(b)) throw UsageError("dead block has no sign of life");
  // sol(b) = sol(parent)[c_b]; fold the chain from b towards the root.
  Context acc;
  for (BlockId cur = b; step_[cur]; cur = step_[cur]->parent) {
    const SolStep& s = *step_[cur];
    acc = substitute(step_context(m.symbol(s.transition),
                                  m.sources(s.transition), s.position),
                     acc);
  }
  return acc;
}

}  // namespace wta
