#include "dham/classifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "dham/errors.hpp"

namespace dham {

void ClassifierParams::validate() const {
  if (!(alpha > 0.0) || alpha > 1.0 / 320.0) throw DomainError("alpha must lie in (0, 1/320]");
  if (!(gamma > 0.0) || gamma > 0.1) throw DomainError("gamma must lie in (0, 1/10]");
  if (gamma < 32.0 * alpha) throw DomainError("gamma must be at least 32*alpha");
}

const char* to_string(StructureCase c) {
  switch (c) {
    case StructureCase::dense_crossing: return "DenseCrossing";
    case StructureCase::near_disconnected: return "NearDisconnected";
    case StructureCase::near_bipartite: return "NearBipartite";
  }
  return "?";
}

namespace {

// Number of neighbors of every vertex inside the member mask.
std::vector<int> degrees_into(const Graph& g, const std::vector<char>& in) {
  std::vector<int> d(static_cast<std::size_t>(g.n()), 0);
  for (auto [u, v] : g.edges()) {
    if (in[v]) ++d[u];
    if (in[u]) ++d[v];
  }
  return d;
}

std::vector<char> indicator(int n, const VertexSet& s) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex v : s) in[v] = 1;
  return in;
}

// Best B of the given size against a fixed A: the vertices with fewest
// neighbors in A, ties to lower ids.
std::pair<std::vector<Vertex>, std::int64_t> best_response(const std::vector<int>& d, int size) {
  std::vector<Vertex> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return d[a] < d[b]; });
  order.resize(static_cast<std::size_t>(size));
  std::int64_t total = 0;
  for (Vertex v : order) total += d[v];
  std::sort(order.begin(), order.end());
  return {order, total};
}

std::vector<int> half_sizes(int n) {
  if (n % 2 == 0) return {n / 2};
  return {n / 2, n / 2 + 1};
}

HalfSetPair exact_pair(const Graph& g) {
  const int n = g.n();
  if (n > kExactHalfSetMaxN)
    throw BudgetExceeded("exact half-set search supports n <= " + std::to_string(kExactHalfSetMaxN));
  const auto sizes = half_sizes(n);
  HalfSetPair best;
  bool have = false;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    const int pc = std::popcount(mask);
    if (std::find(sizes.begin(), sizes.end(), pc) == sizes.end()) continue;
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) in[v] = (mask >> v) & 1U;
    const auto d = degrees_into(g, in);
    for (int sb : sizes) {
      auto [b, total] = best_response(d, sb);
      if (!have || total < best.crossing) {
        have = true;
        best.a = VertexSet::from_mask(mask);
        best.b = VertexSet(std::move(b));
        best.crossing = total;
      }
    }
  }
  return best;
}

HalfSetPair local_pair(const Graph& g, std::uint64_t seed, int restarts) {
  const int n = g.n();
  const auto sizes = half_sizes(n);
  std::mt19937_64 rng(seed);
  HalfSetPair best;
  bool have = false;
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    std::vector<Vertex> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const int sa = sizes[std::uniform_int_distribution<std::size_t>(0, sizes.size() - 1)(rng)];
    std::vector<Vertex> a(perm.begin(), perm.begin() + sa);
    std::sort(a.begin(), a.end());
    std::vector<Vertex> b;
    std::int64_t current = -1;
    // Alternate exact best responses; each step weakly decreases e(A,B) and
    // the loop stops at the first non-improving round.
    for (int iter = 0; iter < 4 * n + 8; ++iter) {
      bool improved = false;
      {
        const auto d = degrees_into(g, indicator(n, VertexSet(a)));
        for (int sb : sizes) {
          auto [cand, total] = best_response(d, sb);
          if (current < 0 || total < current) {
            current = total;
            b = std::move(cand);
            improved = true;
          }
        }
      }
      {
        const auto d = degrees_into(g, indicator(n, VertexSet(b)));
        for (int s : sizes) {
          auto [cand, total] = best_response(d, s);
          if (total < current) {
            current = total;
            a = std::move(cand);
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
    if (!have || current < best.crossing) {
      have = true;
      best.a = VertexSet(a);
      best.b = VertexSet(b);
      best.crossing = current;
    }
  }
  return best;
}

}  // namespace

HalfSetPair sparsest_halfset_pair(const Graph& g, SearchMode mode, std::uint64_t seed, int restarts) {
  if (g.n() < 4) throw DomainError("half-set search needs n >= 4");
  return mode == SearchMode::exact ? exact_pair(g) : local_pair(g, seed, restarts);
}

Diagnostics measure(const Graph& g, const VertexSet& a) {
  check_valid(g, a);
  const int n = g.n();
  Diagnostics d;
  d.n = n;
  d.size_a = static_cast<int>(a.size());
  const auto in = indicator(n, a);
  const auto into_a = degrees_into(g, in);
  for (Vertex v = 0; v < n; ++v) {
    const int inside = in[v] ? into_a[v] : g.degree(v) - into_a[v];
    const int across = g.degree(v) - inside;
    if (in[v]) {
      d.cross_edges += across;
      d.min_internal_degree_a = d.min_internal_degree_a < 0 ? inside : std::min(d.min_internal_degree_a, inside);
      d.max_internal_degree_a = std::max(d.max_internal_degree_a, inside);
    } else {
      d.min_internal_degree_complement = d.min_internal_degree_complement < 0
                                             ? inside
                                             : std::min(d.min_internal_degree_complement, inside);
    }
    d.cross_min_degree = d.cross_min_degree < 0 ? across : std::min(d.cross_min_degree, across);
  }
  return d;
}

namespace {

std::vector<Vertex> to_vec(const std::vector<char>& in) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(in.size()); ++v)
    if (in[v]) out.push_back(v);
  return out;
}

// Swap A1 (inside A0, few neighbors in `a_ref`) and B1 (inside B0, few
// neighbors in `b_ref`). Thresholds are n/4 as in the construction.
std::pair<std::vector<char>, std::vector<char>> swap_low(const Graph& g, const std::vector<char>& a0, bool internal) {
  const int n = g.n();
  std::vector<char> b0(a0.size());
  for (std::size_t i = 0; i < a0.size(); ++i) b0[i] = !a0[i];
  const auto da = degrees_into(g, a0);
  const auto db = degrees_into(g, b0);
  std::vector<char> a1(a0.size(), 0), b1(a0.size(), 0);
  for (Vertex v = 0; v < n; ++v) {
    // internal: count neighbors on own side; otherwise across.
    const int measure_v = a0[v] ? (internal ? da[v] : db[v]) : (internal ? db[v] : da[v]);
    if (4 * measure_v <= n) (a0[v] ? a1 : b1)[v] = 1;
  }
  std::vector<char> ap(a0.size(), 0), bp(a0.size(), 0);
  for (Vertex v = 0; v < n; ++v) {
    const bool to_a = (a0[v] && !a1[v]) || b1[v];
    (to_a ? ap : bp)[v] = 1;
  }
  return {ap, bp};
}

}  // namespace

Classification classify(const Graph& g, const ClassifierParams& params, SearchMode mode, std::uint64_t seed) {
  params.validate();
  if (!is_dirac(g)) throw PreconditionError("classify requires a Dirac graph (2*min degree >= n)");
  const int n = g.n();
  const double nn = static_cast<double>(n) * n;

  Classification cls;
  cls.sparsest = sparsest_halfset_pair(g, mode, seed);
  cls.heuristic = mode == SearchMode::local_search;

  if (static_cast<double>(cls.sparsest.crossing) >= params.alpha * nn) {
    cls.kind = StructureCase::dense_crossing;
    return cls;
  }

  const VertexSet& a = cls.sparsest.a;
  const auto t = static_cast<double>(set_intersection(a, cls.sparsest.b).size());
  bool case1;
  if (t <= 5.0 * params.alpha * n)
    case1 = true;
  else if (t >= (0.5 - 5.0 * params.alpha) * n)
    case1 = false;
  else
    case1 = 2.0 * t < static_cast<double>(a.size());

  const auto a0 = indicator(n, a);
  const int ceil_half = (n + 1) / 2;
  if (case1) {
    auto [ap, bp] = swap_low(g, a0, true);
    auto va = to_vec(ap), vb = to_vec(bp);
    cls.kind = StructureCase::near_disconnected;
    cls.a = VertexSet(va.size() >= vb.size() ? va : vb);
  } else {
    auto [ap, bp] = swap_low(g, a0, false);
    if (static_cast<int>(to_vec(ap).size()) < ceil_half) std::swap(ap, bp);
    while (true) {
      const int size = static_cast<int>(std::count(ap.begin(), ap.end(), 1));
      if (size <= ceil_half) break;
      const auto d = degrees_into(g, ap);
      Vertex pick = -1;
      for (Vertex v = 0; v < n; ++v)
        if (ap[v] && (pick < 0 || d[v] > d[pick])) pick = v;
      if (!(static_cast<double>(d[pick]) > params.gamma * n)) break;
      ap[pick] = 0;
      bp[pick] = 1;
      ++cls.repair_moves;
    }
    cls.kind = StructureCase::near_bipartite;
    cls.a = VertexSet(to_vec(ap));
  }
  cls.diagnostics = measure(g, *cls.a);
  if (!verify_classification(g, cls, params))
    throw ClassificationFailed(std::string("constructed ") + to_string(cls.kind) +
                                   " witness misses its postconditions",
                               cls);
  return cls;
}

std::vector<Slack> classification_slack(const Graph& g, const Classification& cls, const ClassifierParams& params) {
  const int n = g.n();
  const double nd = n;
  const double nn = nd * nd;
  std::vector<Slack> out;
  if (cls.kind == StructureCase::dense_crossing) {
    out.push_back({"sparsest_crossing_minus_alpha_n2", static_cast<double>(cls.sparsest.crossing) - params.alpha * nn});
    return out;
  }
  if (!cls.a) return out;
  const Diagnostics d = measure(g, *cls.a);
  out.push_back({"size_minus_half_n", d.size_a - nd / 2});
  out.push_back({"upper_size_minus_size", (0.5 + 16 * params.alpha) * nd - d.size_a});
  if (cls.kind == StructureCase::near_disconnected) {
    out.push_back({"six_alpha_n2_minus_cross", 6 * params.alpha * nn - static_cast<double>(d.cross_edges)});
    out.push_back({"min_internal_a_minus_n_over_5", d.min_internal_degree_a - nd / 5});
    out.push_back({"min_internal_complement_minus_n_over_5", d.min_internal_degree_complement - nd / 5});
  } else {
    out.push_back({"cross_minus_quarter_bound", static_cast<double>(d.cross_edges) - (0.25 - 14 * params.alpha) * nn});
    out.push_back({"cross_min_degree_minus_half_gamma_n", d.cross_min_degree - params.gamma / 2 * nd});
    const bool exact_half = d.size_a == (n + 1) / 2;
    out.push_back({"gamma_n_minus_max_internal", exact_half ? 0.0 : params.gamma * nd - d.max_internal_degree_a});
  }
  return out;
}

bool verify_classification(const Graph& g, const Classification& cls, const ClassifierParams& params) {
  const int n = g.n();
  const double nd = n;
  const double nn = nd * nd;
  try {
    if (cls.kind == StructureCase::dense_crossing) {
      const auto& p = cls.sparsest;
      check_valid(g, p.a);
      check_valid(g, p.b);
      auto is_half = [n](std::size_t s) { return static_cast<int>(s) == n / 2 || static_cast<int>(s) == (n + 1) / 2; };
      if (!is_half(p.a.size()) || !is_half(p.b.size())) return false;
      if (pair_count(g, p.a, p.b) != p.crossing) return false;
      if (static_cast<double>(p.crossing) < params.alpha * nn) return false;
      if (n <= kExactHalfSetMaxN && n >= 4)
        return static_cast<double>(exact_pair(g).crossing) >= params.alpha * nn;
      return true;
    }
    if (!cls.a) return false;
    const Diagnostics d = measure(g, *cls.a);
    if (2 * d.size_a < n) return false;
    if (d.size_a > (0.5 + 16 * params.alpha) * nd) return false;
    if (cls.kind == StructureCase::near_disconnected) {
      if (d.min_internal_degree_complement < 0) return false;
      return static_cast<double>(d.cross_edges) <= 6 * params.alpha * nn && d.min_internal_degree_a >= nd / 5 &&
             d.min_internal_degree_complement >= nd / 5;
    }
    if (static_cast<double>(d.cross_edges) < (0.25 - 14 * params.alpha) * nn) return false;
    if (d.cross_min_degree < params.gamma / 2 * nd) return false;
    return d.size_a == (n + 1) / 2 || d.max_internal_degree_a <= params.gamma * nd;
  } catch (const InvalidSet&) {
    return false;
  }
}

}  // namespace dham
