#include "dham/generators.hpp"

#include <algorithm>
#include <random>

#include "dham/errors.hpp"

namespace dham::gen {

Graph complete(int n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, edges);
}

Graph cycle(int n) {
  if (n < 3) throw DomainError("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back(make_edge(v, (v + 1) % n));
  return Graph(n, edges);
}

Graph path(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

Graph star(int leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph(leaves + 1, edges);
}

Graph empty(int n) { return Graph(n); }

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = a; v < a + b; ++v) edges.emplace_back(u, v);
  return Graph(a + b, edges);
}

namespace {

std::vector<Edge> two_cliques(int k) {
  std::vector<Edge> edges;
  for (int base : {0, k})
    for (Vertex u = 0; u < k; ++u)
      for (Vertex v = u + 1; v < k; ++v) edges.emplace_back(base + u, base + v);
  return edges;
}

}  // namespace

Graph two_cliques_bridge(int k) {
  auto edges = two_cliques(k);
  edges.emplace_back(k - 1, k);
  return Graph(2 * k, edges);
}

Graph two_cliques_matching(int k) {
  auto edges = two_cliques(k);
  for (Vertex i = 0; i < k; ++i) edges.emplace_back(i, k + i);
  return Graph(2 * k, edges);
}

Graph gnp(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph(n, edges);
}

Graph random_dirac(int n, std::uint64_t seed) {
  if (n < 3) throw DomainError("random_dirac needs n >= 3");
  std::mt19937_64 rng(seed);
  const double q = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
  std::bernoulli_distribution coin(q);
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) {
        adj[u][v] = adj[v][u] = 1;
        ++deg[u];
        ++deg[v];
      }
  const int target = (n + 1) / 2;
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  std::shuffle(order.begin(), order.end(), rng);
  for (Vertex u : order) {
    while (deg[u] < target) {
      std::vector<Vertex> cand;
      for (Vertex v = 0; v < n; ++v)
        if (v != u && !adj[u][v]) cand.push_back(v);
      // Prefer partners that are themselves deficient so the result stays sparse.
      std::vector<Vertex> needy;
      for (Vertex v : cand)
        if (deg[v] < target) needy.push_back(v);
      const auto& pool = needy.empty() ? cand : needy;
      Vertex v = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      adj[u][v] = adj[v][u] = 1;
      ++deg[u];
      ++deg[v];
    }
  }
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (adj[u][v]) edges.emplace_back(u, v);
  return Graph(n, edges);
}

}  // namespace dham::gen
