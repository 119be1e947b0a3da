// Rotation-extension restricted to proper paths of a matched special frame.

#include <algorithm>
#include <optional>
#include <random>

#include "dham/bipartite_frame.hpp"

namespace dham {

namespace {

class ProperPosa {
 public:
  ProperPosa(const Graph& h, const MatchedFrame& mf, std::uint64_t seed, std::int64_t max_steps)
      : h_(h), mf_(mf), rng_(seed), max_steps_(max_steps) {
    for (Vertex v : mf.frame.v1_double_prime()) in_v1pp_.push_back(v);
  }

  std::int64_t steps() const { return steps_; }
  bool out_of_budget() const { return steps_ >= max_steps_; }
  const std::vector<Vertex>& cycle() const { return seq_; }

  bool attempt() {
    const auto& v2 = mf_.frame.v2.members();
    const Vertex x = v2[std::uniform_int_distribution<std::size_t>(0, v2.size() - 1)(rng_)];
    seq_ = {x, mf_.f[x]};
    while (!out_of_budget()) {
      while (auto ext = proper_extension(h_, mf_, seq_)) seq_ = std::move(*ext);
      if (closes(seq_)) {
        if (static_cast<int>(seq_.size()) == h_.n()) return true;
        if (!reopen()) return false;
        continue;
      }
      if (!rotate_to_progress()) return false;
    }
    return false;
  }

 private:
  const Graph& h_;
  const MatchedFrame& mf_;
  std::mt19937_64 rng_;
  std::int64_t max_steps_;
  std::int64_t steps_ = 0;
  std::vector<Vertex> seq_;
  std::vector<Vertex> in_v1pp_;

  bool in_v1(Vertex v) const { return mf_.frame.v1.contains(v); }
  bool closes(const std::vector<Vertex>& s) const { return s.size() >= 3 && h_.has_edge(s.front(), s.back()); }

  void orient(std::vector<Vertex>& s) const {
    if (in_v1(s.front())) std::reverse(s.begin(), s.end());
  }

  // Cycle read from position `start` in direction dir (+1 / -1).
  std::vector<Vertex> walk(int start, int dir) const {
    const int len = static_cast<int>(seq_.size());
    std::vector<Vertex> out;
    for (int k = 0; k < len; ++k) out.push_back(seq_[((start + dir * k) % len + len) % len]);
    return out;
  }

  // Ends the cycle walk at position j, leaving through a non-special edge.
  std::optional<std::vector<Vertex>> open_ending_at(int j) const {
    const int len = static_cast<int>(seq_.size());
    const int nxt = (j + 1) % len, prv = (j - 1 + len) % len;
    if (!mf_.frame.is_special_edge(seq_[j], seq_[nxt])) return walk(nxt, +1);
    if (!mf_.frame.is_special_edge(seq_[j], seq_[prv])) return walk(prv, -1);
    return std::nullopt;
  }

  bool reopen() {
    const auto& fr = mf_.frame;
    std::vector<char> on(static_cast<std::size_t>(h_.n()), 0);
    for (Vertex v : seq_) on[v] = 1;
    const int len = static_cast<int>(seq_.size());
    std::vector<int> order(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng_);
    for (int j : order) {
      const Vertex c = seq_[j];
      for (Vertex x : h_.neighbors(c)) {
        if (on[x] || in_v1(x) == in_v1(c)) continue;
        std::vector<Vertex> tail;
        if (!fr.special_vertices.contains(x)) {
          tail = {x, mf_.f[x]};
        } else {
          const Vertex xp = fr.special_partner(x);
          if (on[xp]) continue;
          tail = {x, xp, mf_.f[xp]};
        }
        auto p = open_ending_at(j);
        if (!p) continue;
        p->insert(p->end(), tail.begin(), tail.end());
        orient(*p);
        seq_ = std::move(*p);
        return true;
      }
    }
    // A special vertex off the cycle whose partner lies on it.
    for (Vertex s : fr.special_vertices) {
      if (on[s]) continue;
      const Vertex sp = fr.special_partner(s);
      if (!on[sp]) continue;
      const int j = static_cast<int>(std::find(seq_.begin(), seq_.end(), sp) - seq_.begin());
      auto p = open_ending_at(j);
      if (!p) continue;
      p->push_back(s);
      orient(*p);
      seq_ = std::move(*p);
      return true;
    }
    return false;
  }

  bool progress(const std::vector<Vertex>& s) const { return closes(s) || proper_extension(h_, mf_, s).has_value(); }

  // Witness-per-endpoint closure. front: pivots in V1'' at the V2 front;
  // otherwise pivots in V2 at the V1 back.
  std::optional<std::vector<Vertex>> closure(const std::vector<Vertex>& start, bool front,
                                             std::vector<std::vector<Vertex>>* witnesses) {
    const int n = h_.n();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<char> v1pp(static_cast<std::size_t>(n), 0);
    for (Vertex v : in_v1pp_) v1pp[v] = 1;
    std::vector<std::vector<Vertex>> queue{start};
    seen[front ? start.front() : start.back()] = 1;
    std::vector<int> lpos(static_cast<std::size_t>(n), -1);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      if (out_of_budget()) return std::nullopt;
      const std::vector<Vertex> p = queue[qi];
      if (progress(p)) return p;
      if (witnesses) witnesses->push_back(p);
      const int l = static_cast<int>(p.size()) - 1;
      for (int i = 0; i <= l; ++i) lpos[p[i]] = i;
      const Vertex end = front ? p.front() : p.back();
      for (Vertex piv : h_.neighbors(end)) {
        const int i = lpos[piv];
        if (i < 0) continue;
        if (front) {
          if (i < 2 || !v1pp[piv] || seen[p[i - 1]]) continue;
        } else {
          if (i > l - 2 || in_v1(piv) || seen[p[i + 1]]) continue;
        }
        ++steps_;
        std::vector<Vertex> q = p;
        if (front)
          std::reverse(q.begin(), q.begin() + i);
        else
          std::reverse(q.begin() + i + 1, q.end());
        seen[front ? q.front() : q.back()] = 1;
        queue.push_back(std::move(q));
      }
      for (int i = 0; i <= l; ++i) lpos[p[i]] = -1;
    }
    return std::nullopt;
  }

  bool rotate_to_progress() {
    std::vector<std::vector<Vertex>> witnesses;
    if (auto p = closure(seq_, true, &witnesses)) {
      seq_ = std::move(*p);
      return true;
    }
    for (const auto& w : witnesses) {
      if (out_of_budget()) return false;
      if (auto p = closure(w, false, nullptr)) {
        seq_ = std::move(*p);
        return true;
      }
    }
    return false;
  }
};

}  // namespace

ProperSearchResult find_proper_hamilton_cycle(const Graph& g, const MatchedFrame& mf, SearchBudget budget,
                                              std::uint64_t seed) {
  mf.frame.validate(g);
  ProperSearchResult res;
  const Graph h = framed_graph(g, mf.frame);
  if (!is_connected(h)) {
    res.diagnostic = "framed subgraph is disconnected";
    return res;
  }
  if (mf.frame.v2.empty()) {
    res.diagnostic = "V2 is empty";
    return res;
  }
  ProperPosa search(h, mf, seed, budget.max_steps);
  for (int r = 0; r < std::max(budget.restarts, 1) && !search.out_of_budget(); ++r) {
    res.restarts = r + 1;
    if (search.attempt() && check_proper_cycle(g, mf, search.cycle()).ok) {
      res.found = true;
      res.cycle = search.cycle();
      break;
    }
  }
  res.steps = search.steps();
  if (!res.found) res.diagnostic = "search budget exhausted";
  return res;
}

}  // namespace dham
