#include "dham/expander.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "dham/errors.hpp"

namespace dham {

namespace {

constexpr double kTol = 1e-9;

int floor_bound(double x) { return static_cast<int>(std::floor(x + kTol)); }
int ceil_bound(double x) { return static_cast<int>(std::ceil(x - kTol)); }

// One "for every X of size in [lo, hi] drawn from universe, |N(X) & target| >= required(|X|)".
struct Rule {
  const char* condition;
  VertexSet universe;
  VertexSet target;
  int lo = 1;
  int hi = 0;
  bool upward = false;  // large-set rule: N is monotone, so size lo is decisive
  std::function<double(int)> required;
};

std::uint32_t mask_of(const VertexSet& s) {
  std::uint32_t m = 0;
  for (Vertex v : s) m |= 1U << v;
  return m;
}

VertexSet set_of(std::uint32_t m) { return VertexSet::from_mask(m); }

std::vector<Rule> half_rules(const Graph& g, const ExpanderParams& p) {
  const int n = g.n();
  const double eps = p.epsilon, r = p.r;
  const VertexSet all = VertexSet::all(n);
  return {
      {"i", all, all, 1, floor_bound(eps * n / r), false, [r](int s) { return r * s; }},
      {"ii", all, all, std::max(1, ceil_bound(n / (eps * r))), n, true,
       [eps, n](int) { return (0.5 - eps) * n; }},
  };
}

std::vector<Rule> plain_rules(const Graph& g, const ExpanderParams& p) {
  const int n = g.n();
  const double eps = p.epsilon, r = p.r;
  const VertexSet all = VertexSet::all(n);
  return {
      {"i", all, all, 1, floor_bound(n / std::pow(r, 1.5)), false, [r](int s) { return r * s; }},
      {"ii", all, all, std::max(1, ceil_bound(n / std::pow(r, 0.75))), n, true,
       [eps, n](int) { return (1 - eps) * n; }},
  };
}

std::vector<Rule> bip_rules(const Graph& g, const SpecialFrame& fr, const ExpanderParams& p) {
  const int n = g.n();
  const double eps = p.epsilon, r = p.r;
  const int small = floor_bound(n / std::pow(r, 1.5));
  const int large = std::max(1, ceil_bound(n / std::pow(r, 0.75)));
  const VertexSet v1pp = fr.v1_double_prime();
  const double v2 = static_cast<double>(fr.v2.size()), w = static_cast<double>(v1pp.size());
  auto lin = [r](int s) { return r * s; };
  return {
      {"i", fr.v1, fr.v2, 1, small, false, lin},
      {"i", fr.v1, fr.v2, large, static_cast<int>(fr.v1.size()), true, [eps, v2](int) { return (1 - eps) * v2; }},
      {"ii", fr.v2, v1pp, 1, small, false, lin},
      {"ii", fr.v2, v1pp, large, static_cast<int>(fr.v2.size()), true, [eps, w](int) { return (1 - eps) * w; }},
  };
}

int count_in(const Graph& g, const VertexSet& x, const VertexSet& target) {
  return static_cast<int>(set_intersection(neighborhood(g, x), target).size());
}

class Checker {
 public:
  Checker(const Graph& g, CheckMode mode) : g_(g), mode_(mode), rng_(mode.seed) {
    if (mode.kind == CheckMode::Kind::exact) {
      if (g.n() > kExactExpanderMaxN)
        throw BudgetExceeded("exact expansion check needs n <= " + std::to_string(kExactExpanderMaxN));
      nbr_.assign(static_cast<std::size_t>(g.n()), 0);
      for (Vertex v = 0; v < g.n(); ++v)
        for (Vertex u : g.neighbors(v)) nbr_[v] |= 1U << u;
      // N(X) for every X by peeling the lowest member.
      hood_.assign(std::size_t{1} << g.n(), 0);
      for (std::uint32_t m = 1; m < hood_.size(); ++m) hood_[m] = hood_[m & (m - 1)] | nbr_[std::countr_zero(m)];
    } else if (mode.samples < 1) {
      throw DomainError("sampled mode needs at least one sample per size class");
    }
  }

  std::int64_t checked() const { return checked_; }

  std::optional<Counterexample> run(const Rule& rule) {
    const int hi = std::min(rule.hi, static_cast<int>(rule.universe.size()));
    if (rule.lo > hi) return std::nullopt;
    return mode_.kind == CheckMode::Kind::exact ? exact(rule, hi) : sampled(rule, hi);
  }

  // Condition (iii) of the half-expander.
  std::optional<Counterexample> pairs(int s) {
    const int n = g_.n();
    s = std::max(s, 0);
    if (2 * s > n) return std::nullopt;
    const double bound = 2.0 * n;
    if (s == 0) {
      ++checked_;
      return Counterexample{"iii", {}, {}, 0, bound};
    }
    std::optional<Counterexample> best;
    auto consider = [&](const VertexSet& x) {
      ++checked_;
      auto [y, e] = best_partner(x, s);
      if (e <= bound && (!best || e < best->observed)) best = Counterexample{"iii", x, y, static_cast<double>(e), bound};
    };
    if (mode_.kind == CheckMode::Kind::exact) {
      // Gosper's hack over s-subsets of the n vertices.
      const std::uint32_t limit = 1U << n;
      for (std::uint32_t m = (1U << s) - 1; m < limit;) {
        consider(set_of(m));
        const std::uint32_t c = m & (~m + 1), rr = m + c;
        m = (((rr ^ m) >> 2) / c) | rr;
      }
    } else {
      std::vector<Vertex> pool(static_cast<std::size_t>(n));
      std::iota(pool.begin(), pool.end(), 0);
      for (int t = 0; t < mode_.samples && !best; ++t) consider(draw(pool, s));
    }
    return best;
  }

 private:
  const Graph& g_;
  CheckMode mode_;
  std::mt19937_64 rng_;
  std::vector<std::uint32_t> nbr_;
  std::vector<std::uint32_t> hood_;
  std::int64_t checked_ = 0;

  std::optional<Counterexample> exact(const Rule& rule, int hi) {
    const std::uint32_t u = mask_of(rule.universe), t = mask_of(rule.target);
    std::optional<Counterexample> best;
    int best_size = 0;
    std::uint32_t best_mask = 0;
    // Enumerate nonempty submasks of u in increasing order.
    for (std::uint32_t m = u & (~u + 1); m != 0; m = (m - u) & u) {
      const int s = std::popcount(m);
      if (s < rule.lo || s > hi) continue;
      ++checked_;
      const double need = rule.required(s);
      const int got = std::popcount(hood_[m] & t);
      if (got >= need - kTol) continue;
      if (!best || s < best_size || (s == best_size && m < best_mask)) {
        best = Counterexample{rule.condition, set_of(m), {}, static_cast<double>(got), need};
        best_size = s;
        best_mask = m;
      }
    }
    return best;
  }

  VertexSet draw(std::vector<Vertex>& pool, int s) {
    for (int i = 0; i < s; ++i) {
      std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), pool.size() - 1);
      std::swap(pool[i], pool[pick(rng_)]);
    }
    return VertexSet(std::vector<Vertex>(pool.begin(), pool.begin() + s));
  }

  std::optional<Counterexample> sampled(const Rule& rule, int hi) {
    std::vector<Vertex> pool = rule.universe.members();
    const int top = rule.upward ? rule.lo : hi;
    for (int s = rule.lo; s <= top; ++s) {
      const double need = rule.required(s);
      for (int t = 0; t < mode_.samples; ++t) {
        ++checked_;
        VertexSet x = draw(pool, s);
        const int got = count_in(g_, x, rule.target);
        if (got < need - kTol) return Counterexample{rule.condition, std::move(x), {}, static_cast<double>(got), need};
      }
    }
    return std::nullopt;
  }

  // The s vertices outside X with the fewest neighbors in X, and their e(X,Y).
  std::pair<VertexSet, std::int64_t> best_partner(const VertexSet& x, int s) const {
    std::vector<char> in(static_cast<std::size_t>(g_.n()), 0);
    for (Vertex v : x) in[v] = 1;
    std::vector<std::pair<int, Vertex>> d;
    for (Vertex v = 0; v < g_.n(); ++v) {
      if (in[v]) continue;
      int c = 0;
      for (Vertex u : g_.neighbors(v)) c += in[u];
      d.emplace_back(c, v);
    }
    std::partial_sort(d.begin(), d.begin() + s, d.end());
    std::vector<Vertex> y;
    std::int64_t e = 0;
    for (int i = 0; i < s; ++i) {
      y.push_back(d[i].second);
      e += d[i].first;
    }
    return {VertexSet(std::move(y)), e};
  }
};

ExpansionReport finish(Checker& c, std::optional<Counterexample> cx, CheckMode mode) {
  ExpansionReport rep;
  rep.sets_checked = c.checked();
  if (cx) {
    rep.verdict = Verdict::fails;
    rep.counterexample = std::move(cx);
  } else {
    rep.verdict = mode.kind == CheckMode::Kind::exact ? Verdict::holds : Verdict::sampled_no_counterexample;
  }
  return rep;
}

std::optional<Counterexample> first_failure(Checker& c, const std::vector<Rule>& rules) {
  for (const auto& rule : rules)
    if (auto cx = c.run(rule)) return cx;
  return std::nullopt;
}

int pair_size(int n, double eps) { return ceil_bound((0.5 - std::pow(eps, 0.2)) * n); }

void require_vertices(const Graph& g) {
  if (g.n() < 1) throw DomainError("expansion checks need at least one vertex");
}

}  // namespace

void ExpanderParams::validate() const {
  if (!(epsilon > 0 && epsilon <= 1)) throw DomainError("epsilon must lie in (0, 1]");
  if (!(r >= 1)) throw DomainError("r must be at least 1");
  if (k < 0) throw DomainError("k must be nonnegative");
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::sampled_no_counterexample: return "sampled-no-counterexample";
  }
  return "?";
}

const char* to_string(ExpanderKind k) {
  switch (k) {
    case ExpanderKind::half: return "half";
    case ExpanderKind::plain: return "plain";
    case ExpanderKind::bipartite: return "bip";
  }
  return "?";
}

ExpansionReport check_half_expander(const Graph& g, const ExpanderParams& params, CheckMode mode) {
  params.validate();
  require_vertices(g);
  Checker c(g, mode);
  auto cx = first_failure(c, half_rules(g, params));
  if (!cx) cx = c.pairs(pair_size(g.n(), params.epsilon));
  auto rep = finish(c, std::move(cx), mode);
  rep.hypothesis_slack = params.r - 16.0 / std::pow(params.epsilon, 3) * std::log(static_cast<double>(g.n()));
  return rep;
}

ExpansionReport check_expander(const Graph& g, const ExpanderParams& params, CheckMode mode) {
  params.validate();
  require_vertices(g);
  Checker c(g, mode);
  auto cx = first_failure(c, plain_rules(g, params));
  return finish(c, std::move(cx), mode);
}

ExpansionReport check_bipartite_expander(const Graph& g, const SpecialFrame& frame, const ExpanderParams& params,
                                         CheckMode mode) {
  params.validate();
  require_vertices(g);
  frame.validate(g);
  if (frame.k() != params.k) throw PreconditionError("frame has a different number of special edges than k");
  Checker c(g, mode);
  auto cx = first_failure(c, bip_rules(g, frame, params));
  return finish(c, std::move(cx), mode);
}

bool recheck_counterexample(const Graph& g, ExpanderKind kind, const ExpanderParams& params, const Counterexample& cx,
                            const SpecialFrame* frame) {
  params.validate();
  check_valid(g, cx.x);
  check_valid(g, cx.y);
  if (kind == ExpanderKind::half && cx.condition == "iii") {
    const int s = std::max(pair_size(g.n(), params.epsilon), 0);
    if (static_cast<int>(cx.x.size()) < s || static_cast<int>(cx.y.size()) < s) return false;
    if (!set_intersection(cx.x, cx.y).empty()) return false;
    return pair_count(g, cx.x, cx.y) <= 2 * g.n();
  }
  std::vector<Rule> rules;
  if (kind == ExpanderKind::half) rules = half_rules(g, params);
  else if (kind == ExpanderKind::plain) rules = plain_rules(g, params);
  else {
    if (!frame) throw PreconditionError("bipartite recheck needs the frame");
    rules = bip_rules(g, *frame, params);
  }
  const int s = static_cast<int>(cx.x.size());
  for (const auto& rule : rules) {
    if (rule.condition != cx.condition || !is_subset(cx.x, rule.universe)) continue;
    if (s < rule.lo || s > rule.hi) continue;
    if (count_in(g, cx.x, rule.target) < rule.required(s) - kTol) return true;
  }
  return false;
}

}  // namespace dham
