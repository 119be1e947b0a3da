#include "dham/dirac_maker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "dham/combinators.hpp"

namespace dham {

namespace {

std::vector<int> components(const Graph& m) {
  std::vector<int> comp(static_cast<std::size_t>(m.n()), -1);
  int c = 0;
  for (Vertex s = 0; s < m.n(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Vertex> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex u : m.neighbors(v))
        if (comp[u] < 0) {
          comp[u] = c;
          stack.push_back(u);
        }
    }
    ++c;
  }
  return comp;
}

std::vector<int> free_degrees(const Graph& h, const std::vector<Owner>& own) {
  std::vector<int> fd(static_cast<std::size_t>(h.n()), 0);
  const auto& edges = h.edges();
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (own[e] == Owner::none) {
      ++fd[edges[e].first];
      ++fd[edges[e].second];
    }
  return fd;
}

Element lowest_free(const std::vector<Owner>& own) {
  for (std::size_t e = 0; e < own.size(); ++e)
    if (own[e] == Owner::none) return static_cast<Element>(e);
  return -1;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

CoreMaker::CoreMaker(Graph h, std::uint64_t seed, double beta, std::int64_t max_steps, ExtraEdges extra)
    : h_(std::move(h)), seed_(seed), max_steps_(max_steps), extra_(std::move(extra)) {
  if (beta < 0) throw DomainError("beta must be nonnegative");
  const double n = h_.n();
  switch_after_ = n >= 2 ? static_cast<std::int64_t>(std::ceil(beta * n * std::log(n) - 1e-9)) : 0;
}

Element CoreMaker::stage_one(const std::vector<Owner>& own, const Graph& m) const {
  const int n = h_.n();
  const std::vector<int> fd = free_degrees(h_, own);
  const std::vector<int> comp = components(m);
  Vertex best = -1;
  for (Vertex v = 0; v < n; ++v) {
    if (m.degree(v) >= 2 || fd[v] == 0) continue;
    if (best < 0 || std::pair(m.degree(v), fd[v]) < std::pair(m.degree(best), fd[best])) best = v;
  }
  if (best >= 0) {
    Element pick = -1;
    std::tuple<int, int, Vertex> key{};
    for (Vertex u : h_.neighbors(best)) {
      const Element e = h_.edge_id(best, u);
      if (own[e] != Owner::none) continue;
      const std::tuple<int, int, Vertex> k{m.degree(u), comp[u] == comp[best] ? 1 : 0, u};
      if (pick < 0 || k < key) {
        pick = e;
        key = k;
      }
    }
    return pick;
  }
  const auto& edges = h_.edges();
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (own[e] == Owner::none && comp[edges[e].first] != comp[edges[e].second]) return static_cast<Element>(e);
  return -1;
}

std::optional<Element> CoreMaker::defend(const std::vector<Owner>& own, const Graph& m, int breaker_bias) const {
  const std::vector<int> fd = free_degrees(h_, own);
  Vertex best = -1;
  int best_margin = 0;
  for (Vertex v = 0; v < h_.n(); ++v) {
    const int need = 2 - m.degree(v);
    if (need <= 0 || fd[v] == 0) continue;
    const int margin = fd[v] - need;
    if (margin >= breaker_bias) continue;
    if (best < 0 || margin < best_margin) {
      best = v;
      best_margin = margin;
    }
  }
  if (best < 0) return std::nullopt;
  Element pick = -1;
  std::pair<int, Vertex> key{};
  for (Vertex u : h_.neighbors(best)) {
    const Element e = h_.edge_id(best, u);
    if (own[e] != Owner::none) continue;
    const std::pair<int, Vertex> k{m.degree(u), u};
    if (pick < 0 || k < key) {
      pick = e;
      key = k;
    }
  }
  return pick;
}

std::optional<Element> CoreMaker::booster(const std::vector<Owner>& own, const Graph& m) {
  const int n = h_.n();
  std::vector<Vertex> seq = long_path(m, mix(seed_ ^ calls_), std::max<std::int64_t>(1000, max_steps_ / 4));
  if (seq.size() < 2) return std::nullopt;
  PathState ps(std::move(seq));
  for (int guard = 0; guard <= n; ++guard) {
    StepResult r = extend_or_close(m, ps);
    if (r.kind == StepKind::extended) {
      ps = std::move(*r.path);
      continue;
    }
    if (r.kind == StepKind::closed) return std::nullopt;  // spanning, or Maker's graph is disconnected
    break;
  }
  if (!is_maximal(m, ps)) return std::nullopt;
  ClosureCaps caps;
  caps.max_steps = max_steps_;
  const EndpointAtlas atlas = endpoint_closure(m, ps, true, caps);
  Element pick = -1;
  Vertex pick_v = -1;
  for (const auto& [v, tmap] : atlas.t)
    for (const auto& entry : tmap) {
      const Vertex w = entry.first;
      if (v == w || !h_.has_edge(v, w)) continue;
      const Element e = h_.edge_id(v, w);
      if (own[e] == Owner::none && (pick < 0 || e < pick)) {
        pick = e;
        pick_v = v;
      }
    }
  if (pick < 0) return std::nullopt;
  boosters_.push_back({h_.edges()[pick], pick_v, atlas.s_p(), atlas.t_of(pick_v)});
  return pick;
}

Element CoreMaker::pick(const std::vector<Owner>& own, int maker_moves, int breaker_bias) {
  std::vector<int> mine;
  for (std::size_t e = 0; e < own.size(); ++e)
    if (own[e] == Owner::maker) mine.push_back(static_cast<int>(e));
  Graph m = edge_subgraph(h_, mine);
  if (extra_) {
    const std::vector<Edge> ex = extra_();
    if (!ex.empty()) m = with_edges(m, ex);
  }
  if (h_.n() < 3) {
    ++fallbacks_;
    return lowest_free(own);
  }
  if (stage_ == 1 && (maker_moves >= switch_after_ || (min_degree(m) >= 2 && is_connected(m)))) stage_ = 2;
  if (auto e = defend(own, m, breaker_bias)) {
    ++defences_;
    return *e;
  }
  if (stage_ == 1) {
    const Element e = stage_one(own, m);
    if (e >= 0) return e;
  }
  if (auto e = booster(own, m)) return *e;
  ++fallbacks_;
  const Element e = stage_one(own, m);
  return e >= 0 ? e : lowest_free(own);
}

std::vector<Element> CoreMaker::move(const GameState& state) {
  if (state.board_size() != static_cast<int>(h_.m())) throw PreconditionError("board does not match the graph");
  std::vector<Owner> own(static_cast<std::size_t>(state.board_size()));
  for (Element e = 0; e < state.board_size(); ++e) own[e] = state.owner(e);
  const int made = static_cast<int>(state.claims(Player::maker).size());
  std::vector<Element> out;
  for (int k = 0; k < state.remaining_in_turn(); ++k) {
    const Element e = pick(own, made + k, state.bias().breaker);
    if (e < 0) break;
    own[e] = Owner::maker;
    out.push_back(e);
  }
  ++calls_;
  return out;
}

std::vector<Edge> DisjointEdgesMaker::held(const GameState& state) const {
  std::vector<Edge> out;
  std::vector<char> used(static_cast<std::size_t>(h_.n()), 0);
  for (Element e : state.claims(Player::maker)) {
    const Edge ed = h_.edges()[e];
    if (used[ed.first] || used[ed.second]) continue;
    used[ed.first] = used[ed.second] = 1;
    out.push_back(ed);
  }
  return out;
}

std::vector<Element> DisjointEdgesMaker::move(const GameState& state) {
  std::vector<char> used(static_cast<std::size_t>(h_.n()), 0);
  const std::vector<Edge> have = held(state);
  for (const Edge& e : have) used[e.first] = used[e.second] = 1;
  int count = static_cast<int>(have.size());
  std::vector<Element> out;
  std::vector<char> taken(static_cast<std::size_t>(state.board_size()), 0);
  const auto& edges = h_.edges();
  while (static_cast<int>(out.size()) < state.remaining_in_turn()) {
    Element pick = -1;
    if (count < target_)
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (state.is_free(static_cast<Element>(e)) && !taken[e] && !used[edges[e].first] && !used[edges[e].second]) {
          pick = static_cast<Element>(e);
          used[edges[e].first] = used[edges[e].second] = 1;
          ++count;
          break;
        }
    if (pick < 0)
      for (Element e = 0; e < state.board_size(); ++e)
        if (state.is_free(e) && !taken[e]) {
          pick = e;
          break;
        }
    if (pick < 0) break;
    taken[pick] = 1;
    out.push_back(pick);
  }
  return out;
}

struct DiracMaker::Shared {
  const SplitBoard* split = nullptr;
  const DisjointEdgesMaker* disjoint = nullptr;
  int disjoint_board = 0;

  std::vector<Edge> held() const {
    const GameState* vs = split ? split->virtual_state(disjoint_board) : nullptr;
    return vs ? disjoint->held(*vs) : std::vector<Edge>{};
  }
};

namespace {

/// Global edge ids of H's edges, H labelled through `to_parent`.
std::vector<Element> global_ids(const Graph& g, const Graph& h, const std::vector<Vertex>& to_parent) {
  std::vector<Element> out;
  for (const Edge& e : h.edges()) out.push_back(g.edge_id(to_parent[e.first], to_parent[e.second]));
  return out;
}

std::vector<Vertex> identity(int n) {
  std::vector<Vertex> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

DiracMaker::DiracMaker(const Graph& g, int b, std::uint64_t seed, DiracMakerOptions opts)
    : g_(g), b_(b), shared_(std::make_shared<Shared>()) {
  if (b < 1) throw DomainError("Breaker bias must be positive");
  if (g.n() < 3 || !is_dirac(g)) throw PreconditionError("maker_dirac_strategy needs a Dirac graph");
  if (opts.forced) {
    cls_ = *opts.forced;
  } else {
    try {
      cls_ = classify(g, opts.classifier, g.n() <= kExactHalfSetMaxN ? SearchMode::exact : SearchMode::local_search, seed);
    } catch (const ClassificationFailed& ex) {
      cls_ = ex.attempt();
      cls_.kind = StructureCase::dense_crossing;
    }
  }
  if (cls_.kind == StructureCase::dense_crossing || !cls_.a) {
    auto core = std::make_unique<CoreMaker>(g, seed, opts.beta, opts.max_steps);
    core_ = core.get();
    impl_ = std::move(core);
    return;
  }

  const VertexSet a = *cls_.a, bset = cls_.a->complement(g.n());
  std::vector<char> in_a(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v : a) in_a[v] = 1;
  const auto& edges = g.edges();
  std::vector<int> inside_a, rest, cross;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const bool ua = in_a[edges[e].first], va = in_a[edges[e].second];
    if (ua && va) inside_a.push_back(static_cast<int>(e));
    else rest.push_back(static_cast<int>(e));
    if (ua != va) cross.push_back(static_cast<int>(e));
  }
  std::vector<std::vector<Element>> parts;
  std::vector<std::unique_ptr<Strategy>> subs;
  auto sh = shared_;

  if (cls_.kind == StructureCase::near_disconnected) {
    for (const VertexSet* side : {&a, &bset}) {
      InducedSubgraph ind = induced_subgraph(g, *side);
      std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
      for (std::size_t i = 0; i < ind.to_parent.size(); ++i) local[ind.to_parent[i]] = static_cast<int>(i);
      const bool side_a = side == &a;
      parts.push_back(global_ids(g, ind.graph, ind.to_parent));
      auto terminals = [sh, local, in_a, side_a]() -> std::vector<Edge> {
        const std::vector<Edge> held = sh->held();
        if (held.size() < 2) return {};
        Vertex t[2];
        for (int i = 0; i < 2; ++i) {
          const Edge e = held[i];
          const bool first_in_a = in_a[e.first];
          t[i] = (first_in_a == side_a) ? e.first : e.second;
        }
        return {make_edge(local[t[0]], local[t[1]])};
      };
      subs.push_back(std::make_unique<CoreMaker>(ind.graph, mix(seed + parts.size()), opts.beta, opts.max_steps, terminals));
    }
    const Graph cg = edge_subgraph(g, cross);
    parts.push_back(global_ids(g, cg, identity(g.n())));
    auto dis = std::make_unique<DisjointEdgesMaker>(cg, 2);
    sh->disjoint = dis.get();
    sh->disjoint_board = 2;
    subs.push_back(std::move(dis));
  } else {
    const int k = static_cast<int>(a.size()) - static_cast<int>(bset.size());
    const Graph ag = edge_subgraph(g, inside_a);
    parts.push_back(global_ids(g, ag, identity(g.n())));
    auto dis = std::make_unique<DisjointEdgesMaker>(ag, 2 * k);
    sh->disjoint = dis.get();
    sh->disjoint_board = 0;
    subs.push_back(std::move(dis));
    const Graph rg = edge_subgraph(g, rest);
    parts.push_back(global_ids(g, rg, identity(g.n())));
    subs.push_back(std::make_unique<CoreMaker>(rg, seed, opts.beta, opts.max_steps, [sh] { return sh->held(); }));
  }
  auto split = split_board(static_cast<int>(g.m()), std::move(parts), std::move(subs));
  sh->split = split.get();
  impl_ = std::move(split);
}

DiracMaker::~DiracMaker() = default;

std::vector<Element> DiracMaker::move(const GameState& state) {
  if (state.board_size() != static_cast<int>(g_.m())) throw PreconditionError("board does not match the graph");
  return impl_->move(state);
}

std::unique_ptr<DiracMaker> maker_dirac_strategy(const Graph& g, int b, std::uint64_t seed, DiracMakerOptions opts) {
  return std::make_unique<DiracMaker>(g, b, seed, std::move(opts));
}

}  // namespace dham
