#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "dham/graph.hpp"

namespace dham {

/// One logged rotation. `front_moved` tells which end of the path changed.
struct RotationStep {
  Vertex pivot;
  Edge broken;
  bool front_moved;
};

/**
   A path v_0..v_l with its rotation history.

   Adjacency for rotations is G together with the edges of the origin path
   (the path the log starts from). The fixed edge, when set, must stay a
   consecutive pair. Extending a path starts a fresh origin with an empty
   log.
 */
class PathState {
 public:
  explicit PathState(std::vector<Vertex> seq, std::optional<Edge> fixed_edge = std::nullopt);

  const std::vector<Vertex>& seq() const { return seq_; }
  int length() const { return static_cast<int>(seq_.size()) - 1; }
  Vertex front() const { return seq_.front(); }
  Vertex back() const { return seq_.back(); }
  const std::optional<Edge>& fixed_edge() const { return fixed_; }
  const std::vector<RotationStep>& log() const { return log_; }
  const std::vector<Vertex>& origin() const { return origin_->seq; }

  bool on_path(Vertex v) const;
  int position(Vertex v) const;  // -1 when absent
  /// {u,v} is an edge of the origin path.
  bool origin_edge(Vertex u, Vertex v) const;
  /// {u,v} in G or on the origin path.
  bool adjacent(const Graph& g, Vertex u, Vertex v) const;
  bool is_fixed(Vertex u, Vertex v) const;

 private:
  struct Origin {
    std::vector<Vertex> seq;
    std::vector<int> pos;
  };
  PathState() = default;

  std::vector<Vertex> seq_;
  std::vector<int> pos_;
  std::optional<Edge> fixed_;
  std::vector<RotationStep> log_;
  std::shared_ptr<const Origin> origin_;

  friend PathState rotate(const PathState&, const Graph&, int);
  friend PathState rotate_front(const PathState&, const Graph&, int);
  friend PathState extend_path(const PathState&, Vertex, bool);
  friend PathState replay(const PathState&, const Graph&);
  void rebuild_positions();
};

/// Rotation at the back end: P' = (v_0..v_i, v_l..v_{i+1}). Needs
/// 0 <= i <= l-2, {v_l, v_i} adjacent, {v_i, v_{i+1}} not fixed.
PathState rotate(const PathState& ps, const Graph& g, int pivot_index);

/// Mirror rotation at the front end with the back fixed: pivot v_i with
/// 2 <= i <= l, {v_0, v_i} adjacent, broken edge {v_{i-1}, v_i}; the new
/// front is v_{i-1}.
PathState rotate_front(const PathState& ps, const Graph& g, int pivot_index);

/// Replays the rotation log of `ps` from its origin path.
PathState replay(const PathState& ps, const Graph& g);

enum class StepKind { extended, closed, stuck };

struct StepResult {
  StepKind kind = StepKind::stuck;
  std::optional<PathState> path;  // extended
  std::vector<Vertex> cycle;      // closed
};

/**
   One extension step. Tries the back end, then the front, with the
   lowest-id off-path G-neighbor. Otherwise, if the ends are adjacent the
   path closes into a cycle; a non-spanning cycle with an off-cycle neighbor
   is reopened into a longer path (Extended), else the cycle is returned
   (Closed). Stuck when the ends are not adjacent.
 */
StepResult extend_or_close(const Graph& g, const PathState& ps);

/// No endpoint has an off-path G-neighbor.
bool is_maximal(const Graph& g, const PathState& ps);

/// S_P with a witness path per endpoint and lazily filled T_v sets.
struct EndpointAtlas {
  Vertex fixed_end = -1;
  std::map<Vertex, PathState> reached;                  // front endpoint -> witness
  std::map<Vertex, std::map<Vertex, PathState>> t;      // v -> (back endpoint -> witness)
  bool truncated = false;  // a cap stopped the search early
  std::int64_t steps = 0;

  VertexSet s_p() const;
  VertexSet t_of(Vertex v) const;
};

/// Caps: at most n endpoints per set and 4 n^2 rotation steps per closure.
struct ClosureCaps {
  std::int64_t max_steps = -1;  // -1: 4 n^2
};

/**
   S_P: front endpoints reachable from ps by rotations at the front with
   the back end fixed, never breaking the fixed edge. Explores distinct
   paths breadth first and keeps the first witness per endpoint. With
   compute_T, fills T_v for each v in S_P by rotating the back end of v's
   witness with v fixed. Throws PreconditionError when ps is extendable.
 */
EndpointAtlas endpoint_closure(const Graph& g, const PathState& ps, bool compute_T, ClosureCaps caps = {});

/// Fills atlas.t[v] for a single v in S_P.
void compute_t(const Graph& g, EndpointAtlas& atlas, Vertex v, ClosureCaps caps = {});

struct SearchBudget {
  int restarts = 50;
  std::int64_t max_steps = 1'000'000;
};

struct SearchResult {
  bool found = false;
  std::vector<Vertex> certificate;  // cycle, or path from u to v
  int restarts = 0;
  std::int64_t steps = 0;
};

/// Randomized rotation-extension search. NotFound (found=false) means the
/// budget ran out, not that no Hamilton cycle exists. Requires n >= 3.
SearchResult find_hamilton_cycle(const Graph& g, SearchBudget budget, std::uint64_t seed);

/// Hamilton path from u to v, searched as a Hamilton cycle through the
/// virtual edge {u,v}. Requires u != v.
SearchResult find_path_between(const Graph& g, Vertex u, Vertex v, SearchBudget budget, std::uint64_t seed);

/// Longest path found by the same randomized search, without requiring a
/// cycle. Used to seed stage-two play and atlases.
std::vector<Vertex> long_path(const Graph& g, std::uint64_t seed, std::int64_t max_steps = 100'000);

}  // namespace dham
