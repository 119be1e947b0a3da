#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace dham {

using Vertex = int;

/// Undirected edge in canonical orientation (first < second).
using Edge = std::pair<Vertex, Vertex>;

inline Edge make_edge(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/**
   Sorted set of vertex ids. Construction sorts and rejects duplicates and
   negative ids; range against a particular graph is checked by the graph
   operations themselves (see check_valid).
 */
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> vs);
  explicit VertexSet(std::vector<Vertex> vs);

  static VertexSet range(Vertex lo, Vertex hi);
  static VertexSet all(int n) { return range(0, n); }
  static VertexSet from_mask(std::uint64_t mask);

  bool contains(Vertex v) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  const std::vector<Vertex>& members() const { return members_; }
  Vertex operator[](std::size_t i) const { return members_[i]; }

  VertexSet complement(int n) const;

  bool operator==(const VertexSet&) const = default;

 private:
  std::vector<Vertex> members_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);

/**
   Immutable simple undirected graph on vertices 0..n-1.

   Keeps sorted adjacency lists, a dense adjacency bit matrix for O(1)
   edge tests and the canonical sorted edge list. The index of an edge in
   edges() is its edge id, which the game board uses as element id.
 */
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, std::span<const Edge> edges);

  int n() const { return n_; }
  std::int64_t m() const { return static_cast<std::int64_t>(edges_.size()); }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(Vertex u, Vertex v) const {
    return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1U;
  }

  const std::vector<Edge>& edges() const { return edges_; }
  /// Edge id of {u,v}, or -1 when absent.
  int edge_id(Vertex u, Vertex v) const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> bits_;
  std::vector<Edge> edges_;
};

/// Mutable accumulator producing a Graph. Rejects loops, duplicates and
/// out-of-range endpoints.
class GraphBuilder {
 public:
  explicit GraphBuilder(int n) : n_(n) {}
  GraphBuilder& add_edge(Vertex u, Vertex v);
  bool try_add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;
  int n() const { return n_; }
  Graph build() const;

 private:
  int n_;
  std::vector<Edge> edges_;
};

/// Throws InvalidSet when X has a member outside 0..n-1.
void check_valid(const Graph& g, const VertexSet& x);

/// e(X,Y): ordered pairs (x,y), x in X, y in Y, {x,y} an edge.
std::int64_t pair_count(const Graph& g, const VertexSet& x, const VertexSet& y);

/// N(X): vertices with at least one neighbor in X (may intersect X).
VertexSet neighborhood(const Graph& g, const VertexSet& x);

int min_degree(const Graph& g);
int max_degree(const Graph& g);
/// 2*delta(G) >= n. Throws DomainError for n < 3.
bool is_dirac(const Graph& g);

bool is_connected(const Graph& g);

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;  // local id -> parent id
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& x);

bool verify_hamilton_cycle(const Graph& g, std::span<const Vertex> seq);
bool verify_hamilton_path(const Graph& g, std::span<const Vertex> seq);

/// Graph with the given extra edges added (existing ones ignored).
Graph with_edges(const Graph& g, std::span<const Edge> extra);

/// Spanning subgraph keeping the edges whose ids are listed.
Graph edge_subgraph(const Graph& g, std::span<const int> edge_ids);

}  // namespace dham
