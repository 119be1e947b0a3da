#include "dham/aux_hypergraphs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "dham/errors.hpp"

namespace dham {

namespace {

using Mask = std::uint32_t;

/// Edge ids with one end in x and the other in y (x, y disjoint).
std::vector<Element> edges_between(const Graph& g, Mask x, Mask y) {
  std::vector<Element> out;
  const auto& edges = g.edges();
  for (std::size_t id = 0; id < edges.size(); ++id) {
    const Mask a = Mask{1} << edges[id].first, b = Mask{1} << edges[id].second;
    if (((x & a) && (y & b)) || ((x & b) && (y & a))) out.push_back(static_cast<Element>(id));
  }
  return out;
}

/// Calls f(mask) for every k-subset of an n-set, in increasing order.
template <class F>
void each_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    f(Mask{0});
    return;
  }
  const Mask limit = Mask{1} << n;
  for (Mask s = (Mask{1} << k) - 1; s < limit;) {
    f(s);
    const Mask c = s & (~s + 1), r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
}

class Builder {
 public:
  Builder(AuxFamily& out, std::int64_t cap) : out_(out), cap_(cap) {}
  void add(std::vector<Element> set) {
    ++out_.constructed;
    if (set.empty()) {
      ++out_.dropped_empty;
      return;
    }
    if (static_cast<std::int64_t>(out_.family.sets.size()) >= cap_)
      throw BudgetExceeded("auxiliary family exceeds max_sets");
    if (static_cast<double>(set.size()) < out_.size_bound - 1e-9) ++out_.slack_violations;
    out_.family.sets.push_back(std::move(set));
  }

 private:
  AuxFamily& out_;
  std::int64_t cap_;
};

}  // namespace

const char* to_string(AuxKind k) {
  switch (k) {
    case AuxKind::h1: return "H1";
    case AuxKind::h2: return "H2";
    case AuxKind::h3: return "H3";
  }
  return "?";
}

AuxFamily aux_hypergraphs(const Graph& g, AuxKind kind, const AuxParams& p) {
  const int n = g.n();
  if (n > kAuxMaxN) throw BudgetExceeded("explicit auxiliary families need n <= 10; use implicit mode");
  if (p.r < 1 || p.epsilon <= 0) throw DomainError("need r >= 1 and epsilon > 0");
  AuxFamily out;
  Builder b(out, p.max_sets);
  const Mask all = n ? ((Mask{1} << n) - 1) : 0;

  switch (kind) {
    case AuxKind::h1: {
      if (p.i < 1) throw DomainError("H1 needs i >= 1");
      const int l = 3 * p.r * p.i, jsize = 2 * p.r * p.i, block = n / l;
      out.size_bound = static_cast<double>(n) * p.i / 7;
      if (l > 31) throw BudgetExceeded("H1 index set too large");
      std::vector<Mask> blocks(static_cast<std::size_t>(l), 0);
      for (int j = 0; j < l; ++j)
        for (int v = j * block; v < (j + 1) * block; ++v) blocks[j] |= Mask{1} << v;
      each_subset(n, p.i, [&](Mask x) {
        each_subset(l, jsize, [&](Mask jm) {
          Mask vj = 0;
          for (int j = 0; j < l; ++j)
            if (jm >> j & 1) vj |= blocks[j];
          b.add(edges_between(g, x, vj & ~x));
        });
      });
      break;
    }
    case AuxKind::h2: {
      const int x = p.x_size >= 0 ? p.x_size : static_cast<int>(std::ceil(n / (p.epsilon * p.r) - 1e-9));
      const int y = p.y_size >= 0 ? p.y_size : static_cast<int>(std::ceil((0.5 + p.epsilon) * n - 1e-9));
      out.size_bound = static_cast<double>(n) * n / (2.0 * p.r);
      each_subset(n, x, [&](Mask xm) { each_subset(n, y, [&](Mask ym) { b.add(edges_between(g, xm, ym & ~xm)); }); });
      break;
    }
    case AuxKind::h3: {
      const int lo = std::max(1, p.pair_min >= 0 ? p.pair_min
                                                 : static_cast<int>(std::ceil((0.5 - std::pow(p.epsilon, 0.2)) * n - 1e-9)));
      out.size_bound = p.alpha * n * n / 3;
      for (Mask xm = 1; xm <= all; ++xm) {
        if (std::popcount(xm) < lo) continue;
        const Mask rest = all & ~xm;
        for (Mask ym = rest; ym; ym = (ym - 1) & rest) {
          if (ym < xm || std::popcount(ym) < lo) continue;  // unordered: X < Y
          const std::vector<Element> exy = edges_between(g, xm, ym);
          const int k = static_cast<int>(exy.size()) - 2 * n;
          if (k <= 0) continue;
          each_subset(static_cast<int>(exy.size()), k, [&](Mask s) {
            std::vector<Element> set;
            for (std::size_t t = 0; t < exy.size(); ++t)
              if (s >> t & 1) set.push_back(exy[t]);
            b.add(std::move(set));
          });
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace dham
