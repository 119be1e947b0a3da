#pragma once

#include <cstdint>

#include "dham/graph.hpp"

namespace dham::gen {

Graph complete(int n);
Graph cycle(int n);
Graph path(int n);
Graph star(int leaves);  // center 0
Graph empty(int n);
/// Parts {0..a-1} and {a..a+b-1}.
Graph complete_bipartite(int a, int b);
/// K_k on {0..k-1} and on {k..2k-1}, joined by the single edge {k-1, k}.
Graph two_cliques_bridge(int k);
/// K_k on {0..k-1} and on {k..2k-1}, joined by the perfect matching {i, k+i}.
Graph two_cliques_matching(int k);
/// Random graph with minimum degree >= ceil(n/2): G(n, q) for a random
/// density q in [0, 0.6], then random edges added at deficient vertices.
Graph random_dirac(int n, std::uint64_t seed);
/// Erdos-Renyi G(n, p).
Graph gnp(int n, double p, std::uint64_t seed);

}  // namespace dham::gen
