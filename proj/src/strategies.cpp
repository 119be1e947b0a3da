#include "dham/strategies.hpp"

#include <algorithm>
#include <tuple>

namespace dham {

std::vector<Element> RandomStrategy::move(const GameState& state) {
  std::vector<Element> pool = state.free_elements();
  const int k = std::min<int>(state.remaining_in_turn(), static_cast<int>(pool.size()));
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), pool.size() - 1);
    std::swap(pool[i], pool[pick(rng_)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

std::vector<Element> FirstFreeStrategy::move(const GameState& state) {
  std::vector<Element> out;
  for (Element e = 0; e < state.board_size() && static_cast<int>(out.size()) < state.remaining_in_turn(); ++e)
    if (state.is_free(e)) out.push_back(e);
  return out;
}

std::vector<Element> GreedyBlockBreaker::move(const GameState& state) {
  if (state.board_size() != static_cast<int>(g_.m())) throw PreconditionError("board does not match the graph");
  const auto& edges = g_.edges();
  std::vector<int> avail(static_cast<std::size_t>(g_.n()), 0);
  std::vector<char> taken(edges.size(), 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    taken[e] = state.owner(static_cast<Element>(e)) == Owner::breaker;
    if (!taken[e]) {
      ++avail[edges[e].first];
      ++avail[edges[e].second];
    }
  }
  std::vector<Element> out;
  for (int k = 0; k < state.remaining_in_turn(); ++k) {
    Element best = -1;
    std::tuple<int, int> key{};
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (taken[e] || !state.is_free(static_cast<Element>(e))) continue;
      const auto [u, v] = edges[e];
      const std::tuple<int, int> cand{std::min(avail[u], avail[v]), std::max(avail[u], avail[v])};
      if (best < 0 || cand < key) {
        best = static_cast<Element>(e);
        key = cand;
      }
    }
    taken[best] = 1;
    --avail[edges[best].first];
    --avail[edges[best].second];
    out.push_back(best);
  }
  return out;
}

}  // namespace dham
