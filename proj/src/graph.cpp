#include "dham/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dham/errors.hpp"

namespace dham {

VertexSet::VertexSet(std::initializer_list<Vertex> vs) : VertexSet(std::vector<Vertex>(vs)) {}

VertexSet::VertexSet(std::vector<Vertex> vs) : members_(std::move(vs)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw InvalidSet("vertex set contains a duplicate id");
  if (!members_.empty() && members_.front() < 0)
    throw InvalidSet("vertex set contains a negative id");
}

VertexSet VertexSet::range(Vertex lo, Vertex hi) {
  std::vector<Vertex> vs(static_cast<std::size_t>(std::max(0, hi - lo)));
  std::iota(vs.begin(), vs.end(), lo);
  return VertexSet(std::move(vs));
}

VertexSet VertexSet::from_mask(std::uint64_t mask) {
  std::vector<Vertex> vs;
  for (int v = 0; mask != 0; ++v, mask >>= 1)
    if (mask & 1U) vs.push_back(v);
  return VertexSet(std::move(vs));
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

VertexSet VertexSet::complement(int n) const {
  std::vector<Vertex> out;
  std::size_t i = 0;
  for (Vertex v = 0; v < n; ++v) {
    while (i < members_.size() && members_[i] < v) ++i;
    if (i < members_.size() && members_[i] == v) continue;
    out.push_back(v);
  }
  return VertexSet(std::move(out));
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Graph::Graph(int n) : Graph(n, std::span<const Edge>{}) {}

Graph::Graph(int n, std::span<const Edge> edges) : n_(n) {
  if (n < 0) throw DomainError("negative vertex count");
  words_ = (static_cast<std::size_t>(n) + 63) / 64;
  adj_.assign(static_cast<std::size_t>(n), {});
  bits_.assign(static_cast<std::size_t>(n) * words_, 0);
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InvalidSet("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
    if (u == v) throw InvalidSet("self-loop at vertex " + std::to_string(u));
    if (has_edge(u, v))
      throw InvalidSet("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    edges_.push_back(make_edge(u, v));
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  std::sort(edges_.begin(), edges_.end());
}

int Graph::edge_id(Vertex u, Vertex v) const {
  const Edge e = make_edge(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return static_cast<int>(it - edges_.begin());
}

bool GraphBuilder::try_add_edge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v || has_edge(u, v)) return false;
  edges_.push_back(make_edge(u, v));
  return true;
}

GraphBuilder& GraphBuilder::add_edge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw InvalidSet("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
  if (u == v) throw InvalidSet("self-loop at vertex " + std::to_string(u));
  if (has_edge(u, v))
    throw InvalidSet("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  edges_.push_back(make_edge(u, v));
  return *this;
}

bool GraphBuilder::has_edge(Vertex u, Vertex v) const {
  return std::find(edges_.begin(), edges_.end(), make_edge(u, v)) != edges_.end();
}

Graph GraphBuilder::build() const { return Graph(n_, edges_); }

void check_valid(const Graph& g, const VertexSet& x) {
  if (!x.empty() && x.members().back() >= g.n())
    throw InvalidSet("vertex " + std::to_string(x.members().back()) + " out of range for n=" +
                     std::to_string(g.n()));
}

std::int64_t pair_count(const Graph& g, const VertexSet& x, const VertexSet& y) {
  check_valid(g, x);
  check_valid(g, y);
  std::vector<char> in_y(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v : y) in_y[v] = 1;
  std::int64_t count = 0;
  for (Vertex u : x)
    for (Vertex w : g.neighbors(u)) count += in_y[w];
  return count;
}

VertexSet neighborhood(const Graph& g, const VertexSet& x) {
  check_valid(g, x);
  std::vector<char> hit(static_cast<std::size_t>(g.n()), 0);
  for (Vertex u : x)
    for (Vertex w : g.neighbors(u)) hit[w] = 1;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.n(); ++v)
    if (hit[v]) out.push_back(v);
  return VertexSet(std::move(out));
}

int min_degree(const Graph& g) {
  if (g.n() == 0) throw DomainError("min degree of the empty graph");
  int d = g.degree(0);
  for (Vertex v = 1; v < g.n(); ++v) d = std::min(d, g.degree(v));
  return d;
}

int max_degree(const Graph& g) {
  int d = 0;
  for (Vertex v = 0; v < g.n(); ++v) d = std::max(d, g.degree(v));
  return d;
}

bool is_dirac(const Graph& g) {
  if (g.n() < 3) throw DomainError("Dirac condition needs n >= 3, got n=" + std::to_string(g.n()));
  return 2 * min_degree(g) >= g.n();
}

bool is_connected(const Graph& g) {
  if (g.n() == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(u))
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == g.n();
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& x) {
  check_valid(g, x);
  if (x.empty()) throw PreconditionError("induced subgraph of an empty vertex set");
  std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
  InducedSubgraph out;
  out.to_parent = x.members();
  for (std::size_t i = 0; i < out.to_parent.size(); ++i) local[out.to_parent[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (local[u] >= 0 && local[v] >= 0) edges.emplace_back(local[u], local[v]);
  out.graph = Graph(static_cast<int>(x.size()), edges);
  return out;
}

namespace {

bool is_permutation_of_vertices(const Graph& g, std::span<const Vertex> seq) {
  if (static_cast<int>(seq.size()) != g.n()) return false;
  std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v : seq) {
    if (v < 0 || v >= g.n() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

}  // namespace

bool verify_hamilton_path(const Graph& g, std::span<const Vertex> seq) {
  if (g.n() == 0 || !is_permutation_of_vertices(g, seq)) return false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!g.has_edge(seq[i], seq[i + 1])) return false;
  return true;
}

bool verify_hamilton_cycle(const Graph& g, std::span<const Vertex> seq) {
  if (g.n() < 3) return false;
  return verify_hamilton_path(g, seq) && g.has_edge(seq.back(), seq.front());
}

Graph with_edges(const Graph& g, std::span<const Edge> extra) {
  std::vector<Edge> edges = g.edges();
  for (auto [u, v] : extra)
    if (!g.has_edge(u, v) &&
        std::find(edges.begin(), edges.end(), make_edge(u, v)) == edges.end())
      edges.push_back(make_edge(u, v));
  return Graph(g.n(), edges);
}

Graph edge_subgraph(const Graph& g, std::span<const int> edge_ids) {
  std::vector<Edge> edges;
  edges.reserve(edge_ids.size());
  for (int id : edge_ids) edges.push_back(g.edges().at(static_cast<std::size_t>(id)));
  return Graph(g.n(), edges);
}

}  // namespace dham
