#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dham/bipartite_frame.hpp"
#include "dham/graph.hpp"

namespace dham {

/// epsilon in (0,1], r >= 1; k is used by the bipartite variant only.
struct ExpanderParams {
  double epsilon = 0.25;
  double r = 2.0;
  int k = 0;

  void validate() const;
};

/// Largest n accepted by exact mode.
inline constexpr int kExactExpanderMaxN = 16;

struct CheckMode {
  enum class Kind { exact, sampled };
  Kind kind = Kind::exact;
  std::uint64_t seed = 0;
  int samples = 10000;  // per size class

  static CheckMode exact() { return {}; }
  static CheckMode sampled(std::uint64_t seed, int samples = 10000) { return {Kind::sampled, seed, samples}; }
};

enum class ExpanderKind { half, plain, bipartite };

enum class Verdict { holds, fails, sampled_no_counterexample };

const char* to_string(Verdict v);
const char* to_string(ExpanderKind k);

/// A set (or pair, for condition iii) violating the named condition.
/// `observed` is |N(X)| (restricted as the condition says) or e(X,Y);
/// `required` is the bound it fails.
struct Counterexample {
  std::string condition;  // "i", "ii" or "iii"
  VertexSet x;
  VertexSet y;
  double observed = 0;
  double required = 0;
};

struct ExpansionReport {
  Verdict verdict = Verdict::holds;
  std::optional<Counterexample> counterexample;
  std::int64_t sets_checked = 0;
  /// r - 16 eps^-3 log n in the half-expander hypothesis; absent otherwise.
  std::optional<double> hypothesis_slack;
};

/**
   Half-expander with parameters eps, r:
   (i)   |X| <= eps n / r            =>  |N(X)| >= r|X|
   (ii)  |X| >= n / (eps r)          =>  |N(X)| >= (1/2 - eps) n
   (iii) X, Y disjoint, |X|,|Y| >= (1/2 - eps^(1/5)) n  =>  e(X,Y) > 2n
   Size bounds are rounded toward the definition: floor for <=, ceil for >=.
   Condition (iii) reduces to |X| = |Y| = s with Y the s vertices outside X
   having fewest neighbors in X. A non-positive s admits empty sets.
 */
ExpansionReport check_half_expander(const Graph& g, const ExpanderParams& params, CheckMode mode);

/// (i) |X| <= n / r^(3/2) => |N(X)| >= r|X|; (ii) |X| >= n / r^(3/4) => |N(X)| >= (1-eps) n.
ExpansionReport check_expander(const Graph& g, const ExpanderParams& params, CheckMode mode);

/**
   k-bipartite-expander on the given frame (frame.k() must equal params.k):
   (i)  X in V1: small X => |N(X) & V2| >= r|X|, large X => |N(X) & V2| >= (1-eps)|V2|
   (ii) Y in V2: the same against V1''.
   Small means <= n / r^(3/2), large means >= n / r^(3/4).
 */
ExpansionReport check_bipartite_expander(const Graph& g, const SpecialFrame& frame, const ExpanderParams& params,
                                         CheckMode mode);

/// Re-evaluates a counterexample from scratch; true iff it violates its condition.
bool recheck_counterexample(const Graph& g, ExpanderKind kind, const ExpanderParams& params,
                            const Counterexample& cx, const SpecialFrame* frame = nullptr);

}  // namespace dham
