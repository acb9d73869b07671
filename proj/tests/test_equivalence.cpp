#include <doctest.h>

#include "support.hpp"
#include "wta/congruence.hpp"
#include "wta/equivalence.hpp"
#include "wta/error.hpp"
#include "wta/io.hpp"

using namespace wta;
using namespace wta::testing;

namespace {

Wta example() { return read_automaton(WTA_TEST_DATA "/example.wta"); }

bool agree_on(const Wta& a, const Wta& b, const std::vector<Tree>& trees) {
  for (const Tree& t : trees)
    if (brute_force_weight(a, t) != brute_force_weight(b, t)) return false;
  return true;
}

}  // namespace

TEST_CASE("the fixture is equivalent to itself and its normal forms") {
  Wta m = example();
  CHECK(equivalent(m, m));
  CHECK(equivalent(m, minimize(m)));
  CHECK(equivalent(m, push(m, pushing_weights(m, compute_sol(m, weak_equivalence(m))))));
}

TEST_CASE("a perturbed fixture differs and the witness shows it") {
  Wta m = example();
  Wta p = with_weight(m, 0, Weight::from_integer(SemifieldKind::kRational, 5));
  EquivalenceResult res = check_equivalence(m, p, true);
  CHECK_FALSE(res.equivalent);
  CHECK_FALSE(res.reason.empty());
  REQUIRE(res.witness);
  CHECK(res.witness->is_ground());
  CHECK(recognize(m, *res.witness) != recognize(p, *res.witness));
}

TEST_CASE("correspondence maps access trees") {
  Wta m = example();
  Wta min = minimize(m);
  Correspondence c = compute_correspondence(m, min);
  REQUIRE(c.complete());
  CHECK(min.state_name(c.map[*m.find_state("q_b")]) == "q_2");
  CHECK(min.state_name(c.map[*m.find_state("q_f")]) == "q_f");
}

TEST_CASE("compatibility needs a bijection on blocks") {
  Partition a = Partition::from_blocks(3, {{0, 1}, {2}});
  Partition b = Partition::from_blocks(2, {{0}, {1}});
  StateId good[] = {0, 0, 1};
  auto bc = check_compatibility(good, a, b);
  REQUIRE(bc);
  CHECK(bc->forward == std::vector<BlockId>{0, 1});
  CHECK(bc->backward == std::vector<BlockId>{0, 1});
  StateId split[] = {0, 1, 1};
  CHECK_FALSE(check_compatibility(split, a, b));
  StateId not_onto[] = {0, 0, 0};
  CHECK_FALSE(check_compatibility(not_onto, a, b));
}

TEST_CASE("isomorphism ignores state names") {
  Wta m = example();
  Wta s = alphabetic(m);
  std::vector<std::string> renamed;
  for (StateId q = 0; q < s.num_states(); ++q) renamed.push_back("z" + std::to_string(3 - q));
  std::vector<TransitionSpec> trs;
  for (TransitionId t = 0; t < s.num_transitions(); ++t) trs.push_back(s.transition(t));
  Wta s2 = Wta::make(SemifieldKind::kBoolean, s.alphabet(), renamed, s.finals(), trs);
  CHECK(fta_isomorphic(s, s2));
  Wta fewer = Wta::make(SemifieldKind::kBoolean, s.alphabet(), renamed, {0}, trs);
  CHECK_FALSE(fta_isomorphic(s, fewer));
  CHECK_THROWS_AS(fta_isomorphic(m, m), UsageError);
}

TEST_CASE("decisions match enumeration on random pairs") {
  Rng rng(61);
  auto trees = all_trees(small_alphabet(), 6);
  int positives = 0, negatives = 0;
  for (int i = 0; i < 300; ++i) {
    Wta a = random_trim_dwta(rng, 4);
    Wta b;
    switch (i % 4) {
      case 0: b = random_trim_dwta(rng, 4); break;
      case 1: b = inflate(rng, a, 2); break;
      case 2: b = push(a, PushWeights(a, random_lambda(rng, a))); break;
      default:
        b = a.num_transitions() ? with_weight(a, std::uniform_int_distribution<TransitionId>(
                                                     0, a.num_transitions() - 1)(rng),
                                              random_weight(rng, a.semifield()))
                                : a;
    }
    EquivalenceResult res = check_equivalence(a, b, true);
    bool oracle = agree_on(a, b, trees);
    if (res.equivalent) {
      ++positives;
      CHECK(oracle);
    } else {
      ++negatives;
      REQUIRE(res.witness);
      CHECK(recognize(a, *res.witness) != recognize(b, *res.witness));
      // within the enumerated sizes the oracle must see the difference too
      if (res.witness->size() <= 6) CHECK_FALSE(oracle);
    }
    CHECK(equivalent(b, a) == res.equivalent);
  }
  CHECK(positives > 50);
  CHECK(negatives > 50);
}

TEST_CASE("the witness search finds every difference") {
  Rng rng(67);
  auto trees = all_trees(small_alphabet(), 6);
  for (int i = 0; i < 200; ++i) {
    Wta a = random_trim_dwta(rng, 3);
    Wta b = i % 2 ? random_trim_dwta(rng, 3) : inflate(rng, a, 2);
    auto w = find_witness(a, b);
    if (w) CHECK(recognize(a, *w) != recognize(b, *w));
    CHECK(w.has_value() == !equivalent(a, b));
    if (!agree_on(a, b, trees)) CHECK(w);
  }
}

TEST_CASE("empty languages") {
  Wta none = Wta::make(SemifieldKind::kRational, small_alphabet(), {}, {}, {});
  Wta dead = Wta::make(SemifieldKind::kRational, small_alphabet(), {"p"}, {},
                       {{0, {}, 0, Weight::one(SemifieldKind::kRational)}});
  CHECK(equivalent(none, dead));
  Wta one = Wta::make(SemifieldKind::kRational, small_alphabet(), {"p"}, {0},
                      {{0, {}, 0, Weight::one(SemifieldKind::kRational)}});
  EquivalenceResult res = check_equivalence(none, one, true);
  CHECK_FALSE(res.equivalent);
  REQUIRE(res.witness);
  CHECK(print_tree(*res.witness, small_alphabet()) == "a");
}

TEST_CASE("mismatched inputs are usage errors") {
  Wta m = example();
  Rng rng(1);
  Wta other = random_trim_dwta(rng, 2);
  CHECK_THROWS_AS(equivalent(m, other), UsageError);
  Wta nd = Wta::make(SemifieldKind::kRational, m.alphabet(), {"p", "q"}, {0},
                     {{0, {}, 0, Weight::one(SemifieldKind::kRational)},
                      {0, {}, 1, Weight::one(SemifieldKind::kRational)}});
  CHECK_THROWS_AS(equivalent(m, nd), UsageError);
  Wta v = Wta::make(SemifieldKind::kViterbi, m.alphabet(), {}, {}, {});
  CHECK_THROWS_AS(equivalent(m, v), UsageError);
}

TEST_CASE("pushing weights are the weights of grounded signs of life") {
  Rng rng(73);
  for (int i = 0; i < 80; ++i) {
    Wta m = random_trim_dwta(rng, 4);
    Wta other = i % 2 ? inflate(rng, m, 2) : push(m, PushWeights(m, random_lambda(rng, m)));
    AccessTreeTable access = access_trees(m);
    std::vector<Tree> a = access.unfold_all(m);
    Correspondence g = compute_correspondence(m, access, other);
    REQUIRE(g.complete());
    Partition sim = weak_equivalence(m), sim2 = weak_equivalence(other);
    auto blocks = check_compatibility(g.map, sim, sim2);
    REQUIRE(blocks);
    SolTable sol = compute_sol(m, sim);
    PushWeights lambda = ground_pushing_weights(m, sol, access_weights(m, access));
    TransferResult tr = transfer_pushing_weights(other, sim2, *blocks, m, sol, g);
    REQUIRE(tr.lambda);

    auto ground = [&](BlockId b) {
      Tree c = sol.sign_of_life(m, b).tree();
      return Context(replace_states(c, [&](StateId p) { return a[p]; }));
    };
    for (StateId q = 0; q < m.num_states(); ++q) {
      auto res = run(m, substitute(ground(sim.block_of(q)), Tree::state(q)));
      REQUIRE(res);
      CHECK(res->weight == lambda[q]);
      CHECK(g.weight[q] == run(other, a[q])->weight);
    }
    for (StateId q2 = 0; q2 < other.num_states(); ++q2) {
      BlockId b = blocks->backward[sim2.block_of(q2)];
      auto res = run(other, substitute(ground(b), Tree::state(q2)));
      REQUIRE(res);
      CHECK(res->weight == (*tr.lambda)[q2]);
    }
  }
}

TEST_CASE("signs of life with state co-arguments") {
  // sol(q) = f(r, #): the leaf r weighs 1 in the context but stands for a
  // tree whose weight changes under pushing
  Weight one = Weight::one(SemifieldKind::kRational);
  Wta m = Wta::make(SemifieldKind::kRational, small_alphabet(), {"p", "q", "r"}, {0},
                    {{0, {}, 2, one}, {1, {}, 1, one}, {2, {2, 1}, 0, one}});
  SolTable sol = compute_sol(m, weak_equivalence(m));
  CHECK(print_tree(sol.sign_of_life(m, sol.partition().block_of(1)).tree(), m.alphabet(),
                   m.state_names()) == "f(r, #)");
  Wta pushed = push(m, PushWeights(m, {one, Weight::from_integer(SemifieldKind::kRational, 3),
                                       Weight::from_integer(SemifieldKind::kRational, 2)}));
  CHECK(equivalent(m, pushed));
  CHECK(equivalent(pushed, m));
}

TEST_CASE("transfer onto the same automaton") {
  Wta m = example();
  AccessTreeTable access = access_trees(m);
  Correspondence g = compute_correspondence(m, access, m);
  for (StateId q = 0; q < m.num_states(); ++q) CHECK(g.map[q] == q);
  Partition sim = weak_equivalence(m);
  auto blocks = check_compatibility(g.map, sim, sim);
  REQUIRE(blocks);
  SolTable sol = compute_sol(m, sim);
  TransferResult tr = transfer_pushing_weights(m, sim, *blocks, m, sol, g);
  REQUIRE(tr.lambda);
  PushWeights own = ground_pushing_weights(m, sol, access_weights(m, access));
  for (StateId q = 0; q < m.num_states(); ++q) CHECK((*tr.lambda)[q] == own[q]);
  // the fixture's signs of life have no state leaves, so both notions agree
  PushWeights leaf = pushing_weights(m, sol);
  for (StateId q = 0; q < m.num_states(); ++q) CHECK(leaf[q] == own[q]);
}

TEST_CASE("one changed annotation breaks isomorphism") {
  Wta m = example();
  Wta p = with_weight(m, 3, Weight::from_integer(SemifieldKind::kRational, 7));
  CHECK_FALSE(fta_isomorphic(alphabetic(m), alphabetic(p)));
  CHECK(fta_isomorphic(alphabetic(m), alphabetic(m)));
}

TEST_CASE("early answers") {
  Wta m = example();
  // drop beta: a(q_b) = beta has no run
  std::vector<TransitionSpec> trs;
  for (TransitionId t = 0; t < m.num_transitions(); ++t)
    if (m.alphabet().name(m.symbol(t)) != "beta") trs.push_back(m.transition(t));
  std::vector<std::string> names(m.state_names().begin(), m.state_names().end());
  Wta no_beta = Wta::make(m.semifield(), m.alphabet(), names, m.finals(), trs);
  Correspondence c = compute_correspondence(m, no_beta);
  REQUIRE_FALSE(c.complete());
  CHECK(m.state_name(*c.rejected) == "q_b");
  EquivalenceResult r = check_equivalence(m, no_beta, true);
  CHECK_FALSE(r.equivalent);
  CHECK(r.reason.find("access tree") != std::string::npos);
  REQUIRE(r.witness);
  CHECK(recognize(m, *r.witness) != recognize(no_beta, *r.witness));

  // q_1 no longer final
  Wta flipped = Wta::make(m.semifield(), m.alphabet(), names, {*m.find_state("q_f")},
                          [&] {
                            std::vector<TransitionSpec> all;
                            for (TransitionId t = 0; t < m.num_transitions(); ++t)
                              all.push_back(m.transition(t));
                            return all;
                          }());
  Correspondence g = compute_correspondence(m, flipped);
  REQUIRE(g.complete());
  CHECK_FALSE(check_compatibility(g.map, weak_equivalence(m),
                                  weak_equivalence(flipped)).has_value());
  EquivalenceResult r2 = check_equivalence(m, flipped, true);
  CHECK_FALSE(r2.equivalent);
  REQUIRE(r2.witness);
  CHECK(recognize(m, *r2.witness) != recognize(flipped, *r2.witness));
}
