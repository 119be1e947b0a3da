#include "dham/hamilton_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "dham/errors.hpp"

namespace dham::oracle {

namespace {

void check_size(const Graph& g) {
  if (g.n() > kMaxOracleN)
    throw BudgetExceeded("exact Hamiltonicity oracle supports n <= " + std::to_string(kMaxOracleN) +
                         ", got n=" + std::to_string(g.n()));
}

std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(g.n()), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= 1U << v;
    adj[v] |= 1U << u;
  }
  return adj;
}

// ends[mask] = set of vertices v such that some path starting at `start`
// visits exactly `mask` and ends at v.
std::vector<std::uint32_t> path_table(const std::vector<std::uint32_t>& adj, int n, Vertex start) {
  const std::uint32_t full = (n == 32) ? ~0U : ((1U << n) - 1);
  std::vector<std::uint32_t> ends(static_cast<std::size_t>(full) + 1, 0);
  ends[1U << start] = 1U << start;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t e = ends[mask];
    while (e) {
      const int v = std::countr_zero(e);
      e &= e - 1;
      std::uint32_t ext = adj[v] & ~mask;
      while (ext) {
        const int w = std::countr_zero(ext);
        ext &= ext - 1;
        ends[mask | (1U << w)] |= 1U << w;
      }
    }
    if (mask == full) break;
  }
  return ends;
}

std::vector<Vertex> rebuild(const std::vector<std::uint32_t>& ends, const std::vector<std::uint32_t>& adj,
                            std::uint32_t mask, Vertex last) {
  std::vector<Vertex> seq{last};
  while (std::popcount(mask) > 1) {
    const std::uint32_t prev_mask = mask & ~(1U << last);
    const std::uint32_t cand = ends[prev_mask] & adj[last];
    const int prev = std::countr_zero(cand);
    seq.push_back(prev);
    mask = prev_mask;
    last = prev;
  }
  std::reverse(seq.begin(), seq.end());
  return seq;
}

}  // namespace

std::optional<std::vector<Vertex>> hamilton_cycle(const Graph& g) {
  check_size(g);
  const int n = g.n();
  if (n < 3) return std::nullopt;
  const auto adj = adjacency_masks(g);
  for (Vertex v = 0; v < n; ++v)
    if (std::popcount(adj[v]) < 2) return std::nullopt;
  const auto ends = path_table(adj, n, 0);
  const std::uint32_t full = (1U << n) - 1;
  const std::uint32_t closers = ends[full] & adj[0];
  if (!closers) return std::nullopt;
  return rebuild(ends, adj, full, std::countr_zero(closers));
}

std::optional<std::vector<Vertex>> hamilton_path(const Graph& g, Vertex u, Vertex v) {
  check_size(g);
  if (u == v) throw PreconditionError("hamilton_path needs distinct endpoints");
  const int n = g.n();
  if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidSet("endpoint out of range");
  const auto adj = adjacency_masks(g);
  const auto ends = path_table(adj, n, u);
  const std::uint32_t full = (1U << n) - 1;
  if (!((ends[full] >> v) & 1U)) return std::nullopt;
  return rebuild(ends, adj, full, v);
}

std::vector<std::vector<int>> enumerate_hamilton_cycles(const Graph& g, std::size_t cap) {
  const int n = g.n();
  if (n > 12) throw BudgetExceeded("Hamilton cycle enumeration supports n <= 12");
  std::vector<std::vector<int>> out;
  if (n < 3) return out;
  std::vector<Vertex> seq{0};
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  used[0] = 1;
  // Fix vertex 0 first and require seq[1] < seq.back() so each cycle is
  // produced exactly once.
  auto dfs = [&](auto&& self) -> void {
    if (static_cast<int>(seq.size()) == n) {
      if (g.has_edge(seq.back(), 0) && seq[1] < seq.back()) {
        std::vector<int> ids;
        for (int i = 0; i < n; ++i) ids.push_back(g.edge_id(seq[i], seq[(i + 1) % n]));
        std::sort(ids.begin(), ids.end());
        out.push_back(std::move(ids));
        if (out.size() > cap) throw BudgetExceeded("more than " + std::to_string(cap) + " Hamilton cycles");
      }
      return;
    }
    for (Vertex w : g.neighbors(seq.back())) {
      if (used[w]) continue;
      used[w] = 1;
      seq.push_back(w);
      self(self);
      seq.pop_back();
      used[w] = 0;
    }
  };
  dfs(dfs);
  return out;
}

}  // namespace dham::oracle
