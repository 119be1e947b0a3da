#pragma once

#include <cstdint>

#include "dham/game.hpp"
#include "dham/graph.hpp"

namespace dham {

enum class AuxKind { h1, h2, h3 };
const char* to_string(AuxKind k);

/// Largest n for explicit enumeration.
inline constexpr int kAuxMaxN = 10;

struct AuxParams {
  int i = 1;             // H1: |X|
  int r = 1;
  int x_size = -1;       // H2: |X|, default ceil(n / (epsilon r))
  int y_size = -1;       // H2: |Y|, default ceil((1/2 + epsilon) n)
  int pair_min = -1;     // H3: min |X|, |Y|, default ceil((1/2 - epsilon^(1/5)) n), at least 1
  double epsilon = 0.25;
  double alpha = 1.0 / 320;
  std::int64_t max_sets = 1'000'000;
};

/**
   Explicit auxiliary family on the edge ids of G.
   `constructed` counts every placement (X,J), (X,Y) or (pair, subset),
   including empty ones that were dropped. Hyperedges smaller than
   size_bound are counted in slack_violations, not rejected.
 */
struct AuxFamily {
  WinningFamily family;
  std::int64_t constructed = 0;
  std::int64_t dropped_empty = 0;
  std::int64_t slack_violations = 0;
  double size_bound = 0;
};

/**
   H1: blocks V_1..V_l of floor(n/l) consecutive vertices, l = 3ri; for each
       |X| = i and J of size 2ri, the edges from X to V_J minus X.
   H2: for each |X| = x, |Y| = y (ordered pair), the edges from X to Y minus X.
   H3: for each unordered pair of disjoint X, Y of size >= pair_min, every
       subset of E_{X,Y} of size |E_{X,Y}| - 2n (none when that is <= 0).
   Throws BudgetExceeded for n > kAuxMaxN or more than max_sets hyperedges.
 */
AuxFamily aux_hypergraphs(const Graph& g, AuxKind kind, const AuxParams& params = {});

}  // namespace dham
