#include "wta/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "wta/error.hpp"

namespace wta {

namespace {

struct LhsView {
  SymbolId symbol;
  std::span<const StateId> args;
};

struct LhsHash {
  std::size_t operator()(const LhsView& v) const noexcept {
    std::size_t h = v.symbol * 0x9e3779b97f4a7c15ULL;
    for (StateId q : v.args) h = (h ^ q) * 0x100000001b3ULL + (h >> 29);
    return h;
  }
};

struct LhsEq {
  bool operator()(const LhsView& a, const LhsView& b) const noexcept {
    return a.symbol == b.symbol &&
           std::equal(a.args.begin(), a.args.end(), b.args.begin(),
                      b.args.end());
  }
};

}  // namespace

struct Wta::Data {
  SemifieldKind kind = SemifieldKind::kRational;
  RankedAlphabet alphabet;
  std::vector<std::string> names;
  std::vector<char> final;

  std::vector<SymbolId> symbol;
  std::vector<std::uint32_t> src_begin;  // size num_transitions + 1
  std::vector<StateId> pool;
  std::vector<StateId> target;
  std::vector<Weight> weight;

  std::vector<std::uint32_t> in_begin;  // CSR by target
  std::vector<TransitionId> in_list;
  std::vector<std::uint32_t> occ_begin;  // CSR by source state
  std::vector<Occurrence> occ_list;
  std::vector<TransitionId> sym_begin;  // size |Sigma| + 1

  std::unordered_map<LhsView, std::pair<TransitionId, TransitionId>, LhsHash,
                     LhsEq>
      lhs;
  bool deterministic = true;
  std::size_t size = 0;

  std::span<const StateId> sources(TransitionId t) const {
    return {pool.data() + src_begin[t], pool.data() + src_begin[t + 1]};
  }

  void index() {
    const std::size_t n = names.size();
    const std::size_t m = symbol.size();
    in_begin.assign(n + 1, 0);
    occ_begin.assign(n + 1, 0);
    for (TransitionId t = 0; t < m; ++t) {
      ++in_begin[target[t] + 1];
      for (StateId q : sources(t)) ++occ_begin[q + 1];
    }
    std::partial_sum(in_begin.begin(), in_begin.end(), in_begin.begin());
    std::partial_sum(occ_begin.begin(), occ_begin.end(), occ_begin.begin());
    in_list.resize(m);
    occ_list.resize(pool.size());
    std::vector<std::uint32_t> in_fill(in_begin.begin(), in_begin.end() - 1);
    std::vector<std::uint32_t> occ_fill(occ_begin.begin(), occ_begin.end() - 1);
    for (TransitionId t = 0; t < m; ++t) {
      in_list[in_fill[target[t]]++] = t;
      auto src = sources(t);
      for (std::uint32_t i = 0; i < src.size(); ++i)
        occ_list[occ_fill[src[i]]++] = Occurrence{t, i};
    }

    sym_begin.assign(alphabet.size() + 1, 0);
    for (SymbolId s : symbol) ++sym_begin[s + 1];
    std::partial_sum(sym_begin.begin(), sym_begin.end(), sym_begin.begin());

    lhs.clear();
    lhs.reserve(m);
    deterministic = true;
    size = 0;
    for (TransitionId t = 0; t < m; ++t) {
      size += sources(t).size() + 2;
      LhsView key{symbol[t], sources(t)};
      auto [it, inserted] = lhs.try_emplace(key, t, t + 1);
      if (!inserted) {
        it->second.second = t + 1;
        deterministic = false;
      }
    }
  }
};

Wta::Wta() : d_(std::make_shared<const Data>()) {}

Wta Wta::make(SemifieldKind kind, RankedAlphabet alphabet,
              std::vector<std::string> state_names,
              std::vector<StateId> finals,
              std::vector<TransitionSpec> transitions) {
  const std::size_t n = state_names.size();
  for (const std::string& name : state_names) {
    if (!is_valid_name(name))
      throw UsageError("invalid state name '" + name + "'");
    if (alphabet.find(name))
      throw UsageError("name '" + name + "' used both as state and symbol");
  }

  // Renumber states in name order.
  std::vector<StateId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](StateId a, StateId b) {
    return state_names[a] < state_names[b];
  });
  std::vector<StateId> rename(n);
  for (StateId i = 0; i < n; ++i) rename[perm[i]] = i;

  auto d = std::make_shared<Data>();
  d->kind = kind;
  d->alphabet = std::move(alphabet);
  d->names.reserve(n);
  for (StateId i = 0; i < n; ++i) {
    if (i > 0 && state_names[perm[i]] == d->names.back())
      throw UsageError("state '" + state_names[perm[i]] + "' declared twice");
    d->names.push_back(std::move(state_names[perm[i]]));
  }
  d->final.assign(n, 0);
  for (StateId f : finals) {
    if (f >= n) throw UsageError("final state id out of range");
    d->final[rename[f]] = 1;
  }

  for (TransitionSpec& t : transitions) {
    if (t.symbol >= d->alphabet.size())
      throw UsageError("transition symbol id out of range");
    if (t.sources.size() != d->alphabet.rank(t.symbol))
      throw UsageError("rank mismatch for symbol '" +
                       d->alphabet.name(t.symbol) + "'");
    if (t.target >= n) throw UsageError("transition target out of range");
    for (StateId& q : t.sources) {
      if (q >= n) throw UsageError("transition source out of range");
      q = rename[q];
    }
    t.target = rename[t.target];
    if (t.weight.kind() != kind)
      throw UsageError("transition weight from the " +
                       std::string(to_string(t.weight.kind())) +
                       " semifield in a " + std::string(to_string(kind)) +
                       " automaton");
    if (t.weight.is_zero())
      throw UsageError("zero-weight transitions are not stored");
  }
  std::sort(transitions.begin(), transitions.end(),
            [](const TransitionSpec& a, const TransitionSpec& b) {
              if (a.symbol != b.symbol) return a.symbol < b.symbol;
              if (a.sources != b.sources) return a.sources < b.sources;
              return a.target < b.target;
            });
  for (std::size_t i = 1; i < transitions.size(); ++i) {
    const auto& a = transitions[i - 1];
    const auto& b = transitions[i];
    if (a.symbol == b.symbol && a.sources == b.sources && a.target == b.target)
      throw UsageError("duplicate transition for symbol '" +
                       d->alphabet.name(a.symbol) + "' into state '" +
                       d->names[a.target] + "'");
  }

  const std::size_t m = transitions.size();
  d->symbol.reserve(m);
  d->target.reserve(m);
  d->weight.reserve(m);
  d->src_begin.reserve(m + 1);
  d->src_begin.push_back(0);
  for (TransitionSpec& t : transitions) {
    d->symbol.push_back(t.symbol);
    d->pool.insert(d->pool.end(), t.sources.begin(), t.sources.end());
    d->src_begin.push_back(static_cast<std::uint32_t>(d->pool.size()));
    d->target.push_back(t.target);
    d->weight.push_back(std::move(t.weight));
  }
  d->index();
  return Wta(std::move(d));
}

SemifieldKind Wta::semifield() const noexcept { return d_->kind; }
const RankedAlphabet& Wta::alphabet() const noexcept { return d_->alphabet; }
std::size_t Wta::num_states() const noexcept { return d_->names.size(); }
const std::string& Wta::state_name(StateId q) const { return d_->names[q]; }
std::span<const std::string> Wta::state_names() const noexcept {
  return d_->names;
}

std::optional<StateId> Wta::find_state(std::string_view name) const {
  auto it = std::lower_bound(d_->names.begin(), d_->names.end(), name);
  if (it == d_->names.end() || *it != name) return std::nullopt;
  return static_cast<StateId>(it - d_->names.begin());
}

bool Wta::is_final(StateId q) const { return d_->final[q] != 0; }

std::vector<StateId> Wta::finals() const {
  std::vector<StateId> out;
  for (StateId q = 0; q < d_->final.size(); ++q)
    if (d_->final[q]) out.push_back(q);
  return out;
}

std::size_t Wta::num_transitions() const noexcept { return d_->symbol.size(); }
SymbolId Wta::symbol(TransitionId t) const { return d_->symbol[t]; }
std::span<const StateId> Wta::sources(TransitionId t) const {
  return d_->sources(t);
}
StateId Wta::target(TransitionId t) const { return d_->target[t]; }
const Weight& Wta::weight(TransitionId t) const { return d_->weight[t]; }

TransitionSpec Wta::transition(TransitionId t) const {
  auto src = sources(t);
  return TransitionSpec{symbol(t), {src.begin(), src.end()}, target(t),
                        weight(t)};
}

std::span<const TransitionId> Wta::incoming(StateId q) const {
  return {d_->in_list.data() + d_->in_begin[q],
          d_->in_list.data() + d_->in_begin[q + 1]};
}

std::span<const Occurrence> Wta::occurrences(StateId q) const {
  return {d_->occ_list.data() + d_->occ_begin[q],
          d_->occ_list.data() + d_->occ_begin[q + 1]};
}

std::pair<TransitionId, TransitionId> Wta::lhs_range(
    SymbolId symbol, std::span<const StateId> args) const {
  auto it = d_->lhs.find(LhsView{symbol, args});
  if (it == d_->lhs.end()) return {0, 0};
  return it->second;
}

std::pair<TransitionId, TransitionId> Wta::symbol_range(SymbolId symbol) const {
  return {d_->sym_begin[symbol], d_->sym_begin[symbol + 1]};
}

bool Wta::is_deterministic() const noexcept { return d_->deterministic; }
std::size_t Wta::size() const noexcept { return d_->size; }

bool operator==(const Wta& a, const Wta& b) {
  if (a.d_ == b.d_) return true;
  const auto& x = *a.d_;
  const auto& y = *b.d_;
  return x.kind == y.kind && x.alphabet == y.alphabet && x.names == y.names &&
         x.final == y.final && x.symbol == y.symbol &&
         x.src_begin == y.src_begin && x.pool == y.pool &&
         x.target == y.target && x.weight == y.weight;
}

// --- Semantics --------------------------------------------------------------

namespace {

void check_tree_ids(const Wta& m, const Tree& t) {
  if (t.is_hole())
    throw UsageError("cannot evaluate a tree containing the hole");
  if (t.is_state()) {
    if (t.label() >= m.num_states())
      throw UsageError("state leaf not in the automaton");
    return;
  }
  if (t.label() >= m.alphabet().size())
    throw UsageError("symbol not in the automaton's alphabet");
}

const Weight* lookup(const StateVector& v, StateId q) {
  auto it = std::lower_bound(
      v.begin(), v.end(), q,
      [](const std::pair<StateId, Weight>& e, StateId s) { return e.first < s; });
  if (it == v.end() || it->first != q) return nullptr;
  return &it->second;
}

}  // namespace

StateVector evaluate(const Wta& m, const Tree& t) {
  check_tree_ids(m, t);
  if (t.is_state()) return {{t.label(), Weight::one(m.semifield())}};

  std::vector<StateVector> kids;
  kids.reserve(t.children().size());
  for (const Tree& c : t.children()) {
    kids.push_back(evaluate(m, c));
    if (kids.back().empty()) return {};
  }

  std::map<StateId, Weight> acc;
  auto add = [&](TransitionId tr, const Weight& w) {
    auto [it, inserted] = acc.try_emplace(m.target(tr), w);
    if (!inserted) it->second = it->second + w;
  };

  // Enumerate source tuples from the children's supports or scan the
  // symbol's transitions, whichever is smaller.
  const auto [lo, hi] = m.symbol_range(t.label());
  double combos = 1;
  for (const auto& k : kids) combos *= static_cast<double>(k.size());
  if (combos <= static_cast<double>(hi - lo)) {
    std::vector<std::size_t> idx(kids.size(), 0);
    std::vector<StateId> args(kids.size());
    while (true) {
      Weight w = Weight::one(m.semifield());
      for (std::size_t i = 0; i < kids.size(); ++i) {
        args[i] = kids[i][idx[i]].first;
        w = w * kids[i][idx[i]].second;
      }
      auto [a, b] = m.lhs_range(t.label(), args);
      for (TransitionId tr = a; tr < b; ++tr) add(tr, m.weight(tr) * w);
      std::size_t i = 0;
      while (i < kids.size() && ++idx[i] == kids[i].size()) idx[i++] = 0;
      if (i == kids.size()) break;
    }
  } else {
    for (TransitionId tr = lo; tr < hi; ++tr) {
      Weight w = m.weight(tr);
      auto src = m.sources(tr);
      bool ok = true;
      for (std::size_t i = 0; i < src.size() && ok; ++i) {
        const Weight* x = lookup(kids[i], src[i]);
        if (x == nullptr)
          ok = false;
        else
          w = w * *x;
      }
      if (ok) add(tr, w);
    }
  }

  StateVector out;
  for (auto& [q, w] : acc)
    if (!w.is_zero()) out.emplace_back(q, std::move(w));
  return out;
}

Weight recognize(const Wta& m, const Tree& t) {
  Weight sum = Weight::zero(m.semifield());
  for (const auto& [q, w] : evaluate(m, t))
    if (m.is_final(q)) sum = sum + w;
  return sum;
}

bool is_deterministic(const Wta& m) { return m.is_deterministic(); }

std::optional<Step> dwta_step(const Wta& m, SymbolId symbol,
                              std::span<const StateId> args) {
  if (!m.is_deterministic())
    throw UsageError("dwta_step needs a deterministic automaton");
  auto [a, b] = m.lhs_range(symbol, args);
  if (a == b) return std::nullopt;
  return Step{m.target(a), m.weight(a)};
}

std::optional<Step> run(const Wta& m, const Tree& t) {
  if (!m.is_deterministic())
    throw UsageError("run needs a deterministic automaton");
  check_tree_ids(m, t);
  if (t.is_state()) return Step{t.label(), Weight::one(m.semifield())};
  std::vector<StateId> args;
  args.reserve(t.children().size());
  Weight w = Weight::one(m.semifield());
  for (const Tree& c : t.children()) {
    auto r = run(m, c);
    if (!r) return std::nullopt;
    args.push_back(r->state);
    w = w * r->weight;
  }
  auto s = dwta_step(m, t.label(), args);
  if (!s) return std::nullopt;
  return Step{s->state, s->weight * w};
}

Wta unweighted(const Wta& m) {
  std::vector<TransitionSpec> ts;
  ts.reserve(m.num_transitions());
  const Weight one = Weight::one(SemifieldKind::kBoolean);
  for (TransitionId t = 0; t < m.num_transitions(); ++t) {
    TransitionSpec spec = m.transition(t);
    spec.weight = one;
    ts.push_back(std::move(spec));
  }
  std::vector<std::string> names(m.state_names().begin(),
                                 m.state_names().end());
  return Wta::make(SemifieldKind::kBoolean, m.alphabet(), std::move(names),
                   m.finals(), std::move(ts));
}

// --- Accessibility ----------------------------------------------------------

namespace {

/// Bottom-up saturation. Calls on_fire(t) the first time every source of
/// transition t is reached and on_reach(q) when q is first reached.
template <class OnFire>
std::vector<bool> saturate(const Wta& m, OnFire&& on_fire) {
  std::vector<bool> reached(m.num_states(), false);
  std::vector<std::uint32_t> missing(m.num_transitions());
  std::deque<StateId> queue;
  auto fire = [&](TransitionId t) {
    on_fire(t);
    StateId q = m.target(t);
    if (!reached[q]) {
      reached[q] = true;
      queue.push_back(q);
    }
  };
  for (TransitionId t = 0; t < m.num_transitions(); ++t) {
    missing[t] = static_cast<std::uint32_t>(m.sources(t).size());
  }
  for (TransitionId t = 0; t < m.num_transitions(); ++t)
    if (missing[t] == 0) fire(t);
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (const Occurrence& o : m.occurrences(q))
      if (--missing[o.transition] == 0) fire(o.transition);
  }
  return reached;
}

}  // namespace

std::vector<bool> accessible_states(const Wta& m) {
  return saturate(m, [](TransitionId) {});
}

std::vector<bool> coaccessible_states(const Wta& m) {
  std::vector<bool> live(m.num_states(), false);
  std::deque<StateId> queue;
  for (StateId q = 0; q < m.num_states(); ++q)
    if (m.is_final(q)) {
      live[q] = true;
      queue.push_back(q);
    }
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (TransitionId t : m.incoming(q))
      for (StateId p : m.sources(t))
        if (!live[p]) {
          live[p] = true;
          queue.push_back(p);
        }
  }
  return live;
}

bool is_accessible(const Wta& m) {
  auto acc = accessible_states(m);
  return std::all_of(acc.begin(), acc.end(), [](bool b) { return b; });
}

Wta restrict_states(const Wta& m, const std::vector<bool>& keep) {
  std::vector<StateId> renum(m.num_states(), 0);
  std::vector<std::string> names;
  for (StateId q = 0; q < m.num_states(); ++q)
    if (keep[q]) {
      renum[q] = static_cast<StateId>(names.size());
      names.push_back(m.state_name(q));
    }
  std::vector<StateId> finals;
  for (StateId q = 0; q < m.num_states(); ++q)
    if (keep[q] && m.is_final(q)) finals.push_back(renum[q]);
  std::vector<TransitionSpec> ts;
  for (TransitionId t = 0; t < m.num_transitions(); ++t) {
    if (!keep[m.target(t)]) continue;
    auto src = m.sources(t);
    if (!std::all_of(src.begin(), src.end(), [&](StateId q) { return keep[q]; }))
      continue;
    TransitionSpec spec = m.transition(t);
    for (StateId& q : spec.sources) q = renum[q];
    spec.target = renum[spec.target];
    ts.push_back(std::move(spec));
  }
  return Wta::make(m.semifield(), m.alphabet(), std::move(names),
                   std::move(finals), std::move(ts));
}

Wta trim_accessible(const Wta& m) {
  auto acc = accessible_states(m);
  if (std::all_of(acc.begin(), acc.end(), [](bool b) { return b; })) return m;
  return restrict_states(m, acc);
}

Wta trim_useful(const Wta& m) {
  Wta acc = trim_accessible(m);
  auto live = coaccessible_states(acc);
  if (std::all_of(live.begin(), live.end(), [](bool b) { return b; }))
    return acc;
  return restrict_states(acc, live);
}

// --- Access trees -----------------------------------------------------------

AccessTreeTable access_trees(const Wta& m) {
  if (!m.is_deterministic())
    throw PreconditionError("access trees need a deterministic automaton");
  AccessTreeTable table;
  table.entry.assign(m.num_states(), std::nullopt);
  saturate(m, [&](TransitionId t) {
    StateId q = m.target(t);
    if (!table.entry[q]) {
      table.entry[q] = t;
      table.order.push_back(q);
    }
  });
  if (table.order.size() != m.num_states()) {
    for (StateId q = 0; q < m.num_states(); ++q)
      if (!table.entry[q])
        throw PreconditionError("state '" + m.state_name(q) +
                                "' is not accessible; trim the automaton first");
  }
  return table;
}

std::vector<Tree> AccessTreeTable::unfold_all(const Wta& m) const {
  std::vector<Tree> trees(m.num_states(), Tree::hole());
  for (StateId q : order) {
    TransitionId t = *entry[q];
    std::vector<Tree> kids;
    for (StateId p : m.sources(t)) kids.push_back(trees[p]);
    trees[q] = Tree::node(m.symbol(t), std::move(kids));
  }
  return trees;
}

Tree AccessTreeTable::unfold(const Wta& m, StateId q) const {
  if (q >= entry.size() || !entry[q])
    throw PreconditionError("no access tree for the requested state");
  return unfold_all(m)[q];
}

}  // namespace wta
