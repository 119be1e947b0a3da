#pragma once

#include <cstdint>
#include <random>

#include "dham/game.hpp"

namespace dham {

/// Uniformly random free elements.
class RandomStrategy : public Strategy {
 public:
  explicit RandomStrategy(std::uint64_t seed) : rng_(seed) {}
  std::vector<Element> move(const GameState& state) override;
  std::string name() const override { return "random"; }

 private:
  std::mt19937_64 rng_;
};

/// Lowest-id free elements.
class FirstFreeStrategy : public Strategy {
 public:
  std::vector<Element> move(const GameState& state) override;
  std::string name() const override { return "first-free"; }
};

/**
   Breaker for the Hamiltonicity game on a graph board: attacks the vertex
   with the fewest available edges (Maker-owned plus free), claiming one at
   a time; ties by the available count at the other end, then edge id.
 */
class GreedyBlockBreaker : public Strategy {
 public:
  explicit GreedyBlockBreaker(Graph g) : g_(std::move(g)) {}
  std::vector<Element> move(const GameState& state) override;
  std::string name() const override { return "greedy-block"; }

 private:
  Graph g_;
};

}  // namespace dham
