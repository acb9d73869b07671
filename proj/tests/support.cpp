#include "support.hpp"

#include <algorithm>
#include <functional>

namespace wta::testing {

RankedAlphabet small_alphabet() {
  return RankedAlphabet({{"a", 0}, {"b", 0}, {"g", 1}, {"f", 2}});
}

std::vector<Tree> all_trees(const RankedAlphabet& a, std::size_t max_size) {
  // by_size[n]: trees with exactly n nodes.
  std::vector<std::vector<Tree>> by_size(max_size + 1);
  for (std::size_t n = 1; n <= max_size; ++n) {
    for (SymbolId s = 0; s < a.size(); ++s) {
      unsigned k = a.rank(s);
      if (k == 0) {
        if (n == 1) by_size[n].push_back(Tree::node(s));
        continue;
      }
      // distribute n-1 nodes over k children, each at least 1
      std::vector<std::size_t> sizes(k, 1);
      std::function<void(unsigned, std::size_t)> split = [&](unsigned i, std::size_t left) {
        if (i + 1 == k) {
          if (left == 0 || left >= by_size.size()) return;
          sizes[i] = left;
          std::vector<std::size_t> pick(k, 0);
          while (true) {
            bool empty = false;
            for (unsigned j = 0; j < k; ++j) empty = empty || by_size[sizes[j]].empty();
            if (empty) return;
            std::vector<Tree> kids;
            for (unsigned j = 0; j < k; ++j) kids.push_back(by_size[sizes[j]][pick[j]]);
            by_size[n].push_back(Tree::node(s, std::move(kids)));
            unsigned j = 0;
            while (j < k && ++pick[j] == by_size[sizes[j]].size()) pick[j++] = 0;
            if (j == k) return;
          }
        }
        for (std::size_t sz = 1; sz + (k - i - 1) <= left; ++sz) {
          sizes[i] = sz;
          split(i + 1, left - sz);
        }
      };
      if (n >= 1 + k) split(0, n - 1);
    }
  }
  std::vector<Tree> out;
  for (auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::map<StateId, Weight> brute_force_states(const Wta& m, const Tree& t) {
  if (t.is_state()) return {{static_cast<StateId>(t.label()), Weight::one(m.semifield())}};
  std::vector<std::map<StateId, Weight>> kids;
  for (const Tree& c : t.children()) kids.push_back(brute_force_states(m, c));
  std::map<StateId, Weight> out;
  for (TransitionId id = 0; id < m.num_transitions(); ++id) {
    TransitionSpec tr = m.transition(id);
    if (tr.symbol != t.label()) continue;
    Weight w = tr.weight;
    bool ok = true;
    for (std::size_t i = 0; i < tr.sources.size() && ok; ++i) {
      auto it = kids[i].find(tr.sources[i]);
      if (it == kids[i].end())
        ok = false;
      else
        w = w * it->second;
    }
    if (!ok) continue;
    auto [it, fresh] = out.emplace(tr.target, w);
    if (!fresh) it->second = it->second + w;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

Weight brute_force_weight(const Wta& m, const Tree& t) {
  Weight sum = Weight::zero(m.semifield());
  for (const auto& [q, w] : brute_force_states(m, t))
    if (m.is_final(q)) sum = sum + w;
  return sum;
}

Weight random_weight(Rng& rng, SemifieldKind kind) {
  if (kind == SemifieldKind::kBoolean) return Weight::one(kind);
  std::uniform_int_distribution<int> num(1, 6), den(1, 4), sign(0, 3);
  long n = num(rng);
  if (kind == SemifieldKind::kRational && sign(rng) == 0) n = -n;
  return Weight::from_fraction(kind, n, den(rng));
}

Weight random_scale(Rng& rng, SemifieldKind kind) {
  if (kind == SemifieldKind::kBoolean) return Weight::one(kind);
  static const std::pair<long, long> choices[] = {{2, 1}, {3, 1}, {1, 2}, {5, 3}, {3, 4}, {7, 2}};
  auto [n, d] = choices[std::uniform_int_distribution<std::size_t>(0, 5)(rng)];
  return Weight::from_fraction(kind, n, d);
}

Wta random_wta(Rng& rng, const WtaShape& shape) {
  RankedAlphabet alpha = small_alphabet();
  std::size_t n = shape.states;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
  std::bernoulli_distribution defined(shape.density), final(shape.final_rate), extra(0.3);
  std::uniform_int_distribution<StateId> state(0, static_cast<StateId>(n ? n - 1 : 0));
  std::vector<StateId> finals;
  for (StateId q = 0; q < n; ++q)
    if (final(rng)) finals.push_back(q);
  std::vector<TransitionSpec> trs;
  if (n == 0) return Wta::make(shape.kind, alpha, names, finals, trs);
  for (SymbolId s = 0; s < alpha.size(); ++s) {
    unsigned k = alpha.rank(s);
    std::vector<StateId> args(k, 0);
    while (true) {
      // nullary symbols are always defined so that something is accessible
      if (k == 0 || defined(rng)) {
        StateId target = state(rng);
        trs.push_back({s, args, target, random_weight(rng, shape.kind)});
        if (!shape.deterministic && extra(rng)) {
          StateId other = state(rng);
          if (other != target) trs.push_back({s, args, other, random_weight(rng, shape.kind)});
        }
      }
      unsigned j = 0;
      while (j < k && ++args[j] == n) args[j++] = 0;
      if (j == k) break;
    }
  }
  return Wta::make(shape.kind, alpha, names, finals, trs);
}

Wta random_trim_dwta(Rng& rng, std::size_t max_states, SemifieldKind kind) {
  WtaShape shape;
  shape.kind = kind;
  shape.states = std::uniform_int_distribution<std::size_t>(1, max_states)(rng);
  shape.density = std::uniform_real_distribution<double>(0.3, 0.9)(rng);
  return trim_useful(random_wta(rng, shape));
}

Wta inflate(Rng& rng, const Wta& m, std::size_t copies) {
  SemifieldKind kind = m.semifield();
  std::size_t n = m.num_states();
  auto copy_id = [&](StateId q, std::size_t i) { return static_cast<StateId>(q * copies + i); };
  std::vector<std::string> names;
  std::vector<Weight> scale;
  std::vector<StateId> finals;
  for (StateId q = 0; q < n; ++q) {
    for (std::size_t i = 0; i < copies; ++i) {
      names.push_back(m.state_name(q) + "_" + std::to_string(i));
      bool fin = m.is_final(q);
      scale.push_back(fin || i == 0 ? Weight::one(kind) : random_scale(rng, kind));
      if (fin) finals.push_back(copy_id(q, i));
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, copies - 1);
  std::vector<TransitionSpec> trs;
  for (TransitionId t = 0; t < m.num_transitions(); ++t) {
    TransitionSpec tr = m.transition(t);
    std::size_t k = tr.sources.size();
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      // h(t -> q_i) = scale(q_i) * h(t -> q)
      std::vector<StateId> src;
      Weight w = tr.weight;
      for (std::size_t j = 0; j < k; ++j) {
        StateId c = copy_id(tr.sources[j], idx[j]);
        src.push_back(c);
        w = w * inverse(scale[c]);
      }
      StateId target = copy_id(tr.target, pick(rng));
      w = w * scale[target];
      trs.push_back({tr.symbol, std::move(src), target, w});
      std::size_t j = 0;
      while (j < k && ++idx[j] == copies) idx[j++] = 0;
      if (j == k) break;
    }
  }
  return Wta::make(kind, m.alphabet(), names, finals, trs);
}

std::vector<Weight> random_lambda(Rng& rng, const Wta& m) {
  std::vector<Weight> l;
  for (StateId q = 0; q < m.num_states(); ++q)
    l.push_back(m.is_final(q) ? Weight::one(m.semifield())
                              : random_weight(rng, m.semifield()));
  return l;
}

Wta with_weight(const Wta& m, TransitionId t, const Weight& w) {
  std::vector<TransitionSpec> trs;
  for (TransitionId i = 0; i < m.num_transitions(); ++i) {
    trs.push_back(m.transition(i));
    if (i == t) trs.back().weight = w;
  }
  std::vector<std::string> names(m.state_names().begin(), m.state_names().end());
  return Wta::make(m.semifield(), m.alphabet(), names, m.finals(), trs);
}

Partition random_partition(Rng& rng, std::size_t n, std::size_t blocks) {
  std::vector<std::uint32_t> labels(n);
  std::uniform_int_distribution<std::uint32_t> d(0, static_cast<std::uint32_t>(blocks ? blocks - 1 : 0));
  for (auto& l : labels) l = d(rng);
  return Partition::from_labels(labels);
}

}  // namespace wta::testing

namespace wta::testing {

std::vector<Context> all_contexts(const RankedAlphabet& a, std::size_t max_size) {
  std::vector<Tree> ground = all_trees(a, max_size);
  std::vector<std::vector<Tree>> by_size(max_size + 1);
  for (const Tree& t : ground) by_size[t.size()].push_back(t);
  // ctx[n]: contexts with n nodes
  std::vector<std::vector<Context>> ctx(max_size + 1);
  if (max_size >= 1) ctx[1].push_back(Context());
  for (std::size_t n = 2; n <= max_size; ++n) {
    for (SymbolId s = 0; s < a.size(); ++s) {
      unsigned k = a.rank(s);
      for (unsigned hole = 0; hole < k; ++hole) {
        // sizes: hole child gets h, the others share n-1-h
        std::vector<std::size_t> sizes(k, 1);
        std::function<void(unsigned, std::size_t)> fill = [&](unsigned i, std::size_t left) {
          if (i == k) {
            if (left != 0) return;
            std::vector<std::size_t> pick(k, 0);
            while (true) {
              bool empty = false;
              for (unsigned j = 0; j < k; ++j) {
                std::size_t avail = j == hole ? ctx[sizes[j]].size() : by_size[sizes[j]].size();
                empty = empty || avail == 0;
              }
              if (empty) return;
              std::vector<Tree> kids;
              for (unsigned j = 0; j < k; ++j)
                kids.push_back(j == hole ? ctx[sizes[j]][pick[j]].tree()
                                         : by_size[sizes[j]][pick[j]]);
              ctx[n].emplace_back(Tree::node(s, std::move(kids)));
              unsigned j = 0;
              while (j < k) {
                std::size_t avail = j == hole ? ctx[sizes[j]].size() : by_size[sizes[j]].size();
                if (++pick[j] < avail) break;
                pick[j++] = 0;
              }
              if (j == k) return;
            }
          }
          for (std::size_t sz = 1; sz <= left; ++sz) {
            sizes[i] = sz;
            fill(i + 1, left - sz);
          }
        };
        fill(0, n - 1);
      }
    }
  }
  std::vector<Context> out;
  for (auto& v : ctx) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace wta::testing
