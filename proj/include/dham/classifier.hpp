#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "dham/graph.hpp"

namespace dham {

/// Constants of the three-way structural split of Dirac graphs.
/// Valid when 0 < alpha <= 1/320, 0 < gamma <= 1/10 and gamma >= 32 alpha.
struct ClassifierParams {
  double alpha = 0.001;
  double gamma = 0.032;

  void validate() const;
};

enum class SearchMode { exact, local_search };

/// Largest n for which exact half-set enumeration is allowed.
inline constexpr int kExactHalfSetMaxN = 12;

struct HalfSetPair {
  VertexSet a;
  VertexSet b;
  std::int64_t crossing = 0;  // e(A,B)
};

/**
   Minimizes e(A,B) over pairs of half-sets.

   exact: enumerates every half-set A (both sizes for odd n); for a fixed A
   the objective is linear in B, so the best B of each size takes the
   vertices with the fewest neighbors in A. Ties go to the first pair in
   increasing mask order. Requires n <= kExactHalfSetMaxN.

   local_search: alternating best-response from `restarts` seeded random
   starts. The result is locally minimal under single-vertex swaps in A and
   in B.
 */
HalfSetPair sparsest_halfset_pair(const Graph& g, SearchMode mode, std::uint64_t seed, int restarts = 32);

enum class StructureCase { dense_crossing, near_disconnected, near_bipartite };

const char* to_string(StructureCase c);

/// Raw quantities measured on a witness set A. Degrees are -1 when the
/// corresponding side is empty.
struct Diagnostics {
  int n = 0;
  int size_a = 0;
  std::int64_t cross_edges = 0;  // e(A, complement of A)
  int min_internal_degree_a = -1;
  int min_internal_degree_complement = -1;
  int cross_min_degree = -1;  // min over all v of neighbors on the other side
  int max_internal_degree_a = -1;
};

Diagnostics measure(const Graph& g, const VertexSet& a);

struct Classification {
  StructureCase kind = StructureCase::dense_crossing;
  std::optional<VertexSet> a;  // absent for dense_crossing
  HalfSetPair sparsest;
  bool heuristic = false;      // sparsest pair came from local search
  int repair_moves = 0;        // vertices moved by the near-bipartite loop
  Diagnostics diagnostics;
};

class ClassificationFailed : public std::runtime_error {
 public:
  ClassificationFailed(const std::string& what, Classification attempt)
      : std::runtime_error(what), attempt_(std::move(attempt)) {}
  const Classification& attempt() const { return attempt_; }

 private:
  Classification attempt_;
};

/// Throws PreconditionError when G is not Dirac, ClassificationFailed when
/// the constructed witness misses its postconditions.
Classification classify(const Graph& g, const ClassifierParams& params, SearchMode mode, std::uint64_t seed = 0);

/// Re-checks every inequality of the claimed case from scratch.
bool verify_classification(const Graph& g, const Classification& cls, const ClassifierParams& params);

/// Signed margins of the claimed case's inequalities (positive = satisfied).
struct Slack {
  std::string name;
  double value;
};
std::vector<Slack> classification_slack(const Graph& g, const Classification& cls, const ClassifierParams& params);

}  // namespace dham
