#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dham/graph.hpp"

namespace dham::oracle {

/// Largest n accepted by the exact routines below.
inline constexpr int kMaxOracleN = 20;

/// Exact Hamilton cycle by subset dynamic programming. Throws BudgetExceeded
/// for n > kMaxOracleN. Returns nullopt iff G has no Hamilton cycle.
std::optional<std::vector<Vertex>> hamilton_cycle(const Graph& g);

/// Exact Hamilton path from u to v (u != v).
std::optional<std::vector<Vertex>> hamilton_path(const Graph& g, Vertex u, Vertex v);

/// All Hamilton cycles of G as sorted edge-id lists, each cycle once.
/// Throws BudgetExceeded when more than `cap` cycles exist or n > 12.
std::vector<std::vector<int>> enumerate_hamilton_cycles(const Graph& g, std::size_t cap);

}  // namespace dham::oracle
