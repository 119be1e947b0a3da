#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "dham/classifier.hpp"
#include "dham/game.hpp"
#include "dham/rotation.hpp"

namespace dham {

struct DiracMakerOptions {
  ClassifierParams classifier{0x1.0p-40, 1.0 / 96};
  /// Stage one ends after ceil(beta n ln n) Maker moves at the latest.
  double beta = 1.0;
  /// Skips classification (lets tests reach the split cases).
  std::optional<Classification> forced;
  /// Per-move engine budget.
  std::int64_t max_steps = 100'000;
};

/// One stage-two claim and the atlas it came from.
struct BoosterRecord {
  Edge edge;
  Vertex v = -1;    // S_P endpoint
  VertexSet s_p;
  VertexSet t_v;
};

/**
   Maker on one (sub-)board graph H, element i = edge i of H.

   Both stages first defend a vertex still short of Maker degree 2 that
   Breaker could cut off next turn.

   Stage one (deficit greedy): the vertex of least Maker degree (then least
   free degree, then id) takes a free edge to the partner of least Maker
   degree, preferring another Maker component; once every degree is >= 2,
   edges joining Maker components. Stage two starts when Maker's graph is
   connected with minimum degree 2, or after ceil(beta n ln n) moves.

   Stage two: extend a maximal path of Maker's graph
   (plus `extra` edges) and claim the lowest-id free edge joining S_P and
   T_v of its atlas. When no such edge is free the stage-one rule, then the
   lowest free element, is used.
 */
class CoreMaker : public Strategy {
 public:
  using ExtraEdges = std::function<std::vector<Edge>()>;

  CoreMaker(Graph h, std::uint64_t seed, double beta, std::int64_t max_steps, ExtraEdges extra = {});

  std::vector<Element> move(const GameState& state) override;
  std::string name() const override { return "dirac-core"; }

  int stage() const { return stage_; }
  const std::vector<BoosterRecord>& boosters() const { return boosters_; }
  int fallbacks() const { return fallbacks_; }
  int defences() const { return defences_; }

 private:
  Graph h_;
  std::uint64_t seed_;
  std::int64_t switch_after_;
  std::int64_t max_steps_;
  ExtraEdges extra_;
  int stage_ = 1;
  std::vector<BoosterRecord> boosters_;
  int fallbacks_ = 0;
  int defences_ = 0;
  std::uint64_t calls_ = 0;

  Element pick(const std::vector<Owner>& own, int maker_moves, int breaker_bias);
  Element stage_one(const std::vector<Owner>& own, const Graph& m) const;
  std::optional<Element> defend(const std::vector<Owner>& own, const Graph& m, int breaker_bias) const;
  std::optional<Element> booster(const std::vector<Owner>& own, const Graph& m);
};

/// Claims pairwise vertex-disjoint edges of H, lowest id first, until
/// `target` are held; then the lowest free elements.
class DisjointEdgesMaker : public Strategy {
 public:
  DisjointEdgesMaker(Graph h, int target) : h_(std::move(h)), target_(target) {}
  std::vector<Element> move(const GameState& state) override;
  std::string name() const override { return "disjoint-edges"; }
  /// Held edges that are pairwise disjoint, in claim order.
  std::vector<Edge> held(const GameState& state) const;

 private:
  Graph h_;
  int target_;
};

/**
   Composite Maker for the Hamiltonicity game on a Dirac graph.

   DenseCrossing: CoreMaker on G. NearDisconnected (A, B): split_board over
   G[A], G[B] and the cross edges; the cross board takes two disjoint cross
   edges a1b1, a2b2, and each half plays CoreMaker with the virtual edge
   a1a2 (b1b2) once both are held. NearBipartite (A, k = |A| - |B|):
   split_board over the edges inside A, where 2k disjoint special edges are
   claimed, and all other edges, where CoreMaker treats the held special
   edges as Maker's.
 */
class DiracMaker : public Strategy {
 public:
  DiracMaker(const Graph& g, int b, std::uint64_t seed, DiracMakerOptions opts = {});
  ~DiracMaker() override;

  std::vector<Element> move(const GameState& state) override;
  std::string name() const override { return "dirac"; }

  StructureCase structure() const { return cls_.kind; }
  const Classification& classification() const { return cls_; }
  /// The CoreMaker playing the whole board (DenseCrossing only).
  const CoreMaker* core() const { return core_; }

 private:
  struct Shared;
  Graph g_;
  int b_;
  Classification cls_;
  std::unique_ptr<Strategy> impl_;
  const CoreMaker* core_ = nullptr;
  std::shared_ptr<Shared> shared_;
};

/// Throws PreconditionError unless G is Dirac.
std::unique_ptr<DiracMaker> maker_dirac_strategy(const Graph& g, int b, std::uint64_t seed, DiracMakerOptions opts = {});

}  // namespace dham
