#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dham/errors.hpp"
#include "dham/graph.hpp"
#include "dham/rotation.hpp"

namespace dham {

/// (V1, V2, S_V, S_E): |V1| = |V2| + k, k disjoint special edges inside V1,
/// one special vertex per special edge.
struct SpecialFrame {
  VertexSet v1;
  VertexSet v2;
  VertexSet special_vertices;
  std::vector<Edge> special_edges;

  int k() const { return static_cast<int>(special_edges.size()); }
  VertexSet v1_prime() const;         // V1 minus S_V
  VertexSet v1_double_prime() const;  // V1 minus V(S_E)
  /// Other endpoint of v's special edge, or -1.
  Vertex special_partner(Vertex v) const;
  bool is_special_edge(Vertex a, Vertex b) const;

  /// Throws PreconditionError when the frame axioms fail for G.
  void validate(const Graph& g) const;
};

/// A special frame with a perfect matching f between V1' and V2.
struct MatchedFrame {
  SpecialFrame frame;
  std::vector<Vertex> f;  // indexed by vertex, -1 for special vertices

  Vertex mate(Vertex v) const { return f[v]; }
};

/// Hall's condition fails: |N(violator) ∩ right| < |violator|.
class HallViolation : public DomainError {
 public:
  HallViolation(const std::string& what, VertexSet violator, VertexSet neighbors)
      : DomainError(what), violator_(std::move(violator)), neighbors_(std::move(neighbors)) {}
  const VertexSet& violator() const { return violator_; }
  const VertexSet& neighbors() const { return neighbors_; }

 private:
  VertexSet violator_;
  VertexSet neighbors_;
};

/// Perfect matching between left and right using G-edges, as (left, right)
/// pairs sorted by left vertex. Augmenting paths; on failure throws
/// HallViolation with the alternating-reachable left set as witness.
std::vector<Edge> hall_matching(const Graph& g, const VertexSet& left, const VertexSet& right);

/// Chooses the smaller endpoint of each special edge as special vertex and
/// matches V1' to V2.
MatchedFrame build_matched_frame(const Graph& g, const VertexSet& v1, const VertexSet& v2,
                                 const std::vector<Edge>& special_edges);

/// Edges of G between V1 and V2, plus the special edges.
Graph framed_graph(const Graph& g, const SpecialFrame& frame);

struct ProperCheck {
  bool ok = true;
  std::string reason;
};

/// The three proper-path conditions plus one endpoint in each part; edges
/// must be G-edges.
ProperCheck check_proper_path(const Graph& g, const MatchedFrame& mf, const std::vector<Vertex>& seq);
ProperCheck check_proper_cycle(const Graph& g, const MatchedFrame& mf, const std::vector<Vertex>& seq);

/// Number of special edges used by the path (or cycle, when closed).
int count_special_edges(const MatchedFrame& mf, const std::vector<Vertex>& seq, bool closed);

/// A longer proper path obtained by one extension rule, if any applies.
/// The input must be proper with front in V2 and back in V1.
std::optional<std::vector<Vertex>> proper_extension(const Graph& g, const MatchedFrame& mf,
                                                    const std::vector<Vertex>& seq);

/**
   Proper closure: S_P from rotations at the V2 front whose pivots lie in
   V1'' (so no special edge breaks), T_v from rotations at the V1 back with
   pivots in V2. Adjacency is the framed graph plus the origin path. The
   path must be proper, oriented front in V2, and admit no extension.
 */
EndpointAtlas proper_endpoint_closure(const Graph& g, const MatchedFrame& mf, const PathState& pp,
                                      bool compute_T = true);

struct ProperSearchResult {
  bool found = false;
  std::vector<Vertex> cycle;
  std::string diagnostic;
  int restarts = 0;
  std::int64_t steps = 0;
};

/// Proper Hamilton cycle through rotation-extension on proper paths.
ProperSearchResult find_proper_hamilton_cycle(const Graph& g, const MatchedFrame& mf, SearchBudget budget,
                                              std::uint64_t seed);

}  // namespace dham
