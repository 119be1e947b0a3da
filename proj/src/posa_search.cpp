// Fast randomized rotation-extension search on plain vectors. It follows
// the same moves as the PathState API (extend, close and reopen, front
// closure S_P, back closure T_v) without keeping per-path logs.

#include <algorithm>
#include <optional>
#include <random>

#include "dham/errors.hpp"
#include "dham/rotation.hpp"

namespace dham {

namespace {

class Posa {
 public:
  Posa(const Graph& g, std::optional<Edge> fixed, std::uint64_t seed, std::int64_t max_steps)
      : g_(g), n_(g.n()), fixed_(fixed), rng_(seed), max_steps_(max_steps), pos_(static_cast<std::size_t>(n_), -1) {}

  std::int64_t steps() const { return steps_; }
  bool out_of_budget() const { return steps_ >= max_steps_; }
  const std::vector<Vertex>& best() const { return best_; }

  // One attempt from a fresh random start. True when a spanning cycle is
  // held in path_ (closing edge back-front).
  bool attempt() {
    reset_start();
    while (!out_of_budget()) {
      grow();
      if (closes()) {
        if (static_cast<int>(path_.size()) == n_) return true;
        if (!reopen()) return false;
        continue;
      }
      if (!rotate_to_progress()) return false;
    }
    return false;
  }

  const std::vector<Vertex>& path() const { return path_; }

 private:
  const Graph& g_;
  int n_;
  std::optional<Edge> fixed_;
  std::mt19937_64 rng_;
  std::int64_t max_steps_;
  std::int64_t steps_ = 0;
  std::vector<Vertex> path_;
  std::vector<int> pos_;
  std::vector<Vertex> best_;

  bool is_fixed(Vertex a, Vertex b) const { return fixed_ && *fixed_ == make_edge(a, b); }

  void set_path(std::vector<Vertex> p) {
    for (Vertex v : path_) pos_[v] = -1;
    path_ = std::move(p);
    for (std::size_t i = 0; i < path_.size(); ++i) pos_[path_[i]] = static_cast<int>(i);
    if (path_.size() > best_.size()) best_ = path_;
  }

  void reset_start() {
    if (fixed_) {
      set_path({fixed_->first, fixed_->second});
    } else {
      set_path({static_cast<Vertex>(std::uniform_int_distribution<int>(0, n_ - 1)(rng_))});
    }
  }

  int free_degree(Vertex v) const {
    int c = 0;
    for (Vertex w : g_.neighbors(v)) c += pos_[w] < 0;
    return c;
  }

  // Off-path neighbor of v with the fewest off-path neighbors, random ties.
  Vertex pick_next(Vertex v) {
    Vertex best = -1;
    int best_deg = 0, ties = 0;
    for (Vertex w : g_.neighbors(v)) {
      if (pos_[w] >= 0) continue;
      const int d = free_degree(w);
      if (best < 0 || d < best_deg) {
        best = w;
        best_deg = d;
        ties = 1;
      } else if (d == best_deg && std::uniform_int_distribution<int>(0, ties++)(rng_) == 0) {
        best = w;
      }
    }
    return best;
  }

  void grow() {
    for (;;) {
      if (Vertex w = pick_next(path_.back()); w >= 0) {
        pos_[w] = static_cast<int>(path_.size());
        path_.push_back(w);
        continue;
      }
      if (Vertex w = pick_next(path_.front()); w >= 0) {
        std::reverse(path_.begin(), path_.end());
        for (std::size_t i = 0; i < path_.size(); ++i) pos_[path_[i]] = static_cast<int>(i);
        pos_[w] = static_cast<int>(path_.size());
        path_.push_back(w);
        continue;
      }
      break;
    }
    if (path_.size() > best_.size()) best_ = path_;
  }

  bool closes() const { return path_.size() >= 3 && g_.has_edge(path_.front(), path_.back()); }

  // Open the cycle at a vertex with an off-cycle neighbor and extend.
  bool reopen() {
    const int len = static_cast<int>(path_.size());
    std::vector<int> order(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng_);
    for (int j : order) {
      const Vertex c = path_[j];
      Vertex w = -1;
      for (Vertex x : g_.neighbors(c))
        if (pos_[x] < 0) {
          w = x;
          break;
        }
      if (w < 0) continue;
      std::vector<Vertex> seq;
      const Vertex next = path_[(j + 1) % len];
      const Vertex prev = path_[(j - 1 + len) % len];
      if (!is_fixed(c, next)) {
        for (int k = 1; k <= len; ++k) seq.push_back(path_[(j + k) % len]);
      } else if (!is_fixed(prev, c)) {
        for (int k = 0; k < len; ++k) seq.push_back(path_[(j - k + len) % len]);
      } else {
        continue;
      }
      seq.push_back(w);
      set_path(std::move(seq));
      return true;
    }
    return false;
  }

  bool progress_possible(const std::vector<Vertex>& p) const {
    for (Vertex end : {p.front(), p.back()})
      for (Vertex w : g_.neighbors(end))
        if (pos_[w] < 0) return true;
    return p.size() >= 3 && g_.has_edge(p.front(), p.back());
  }

  // Breadth-first witness-per-endpoint closure moving the back end of p.
  // Returns a path from which extension or closing is possible.
  std::optional<std::vector<Vertex>> back_closure(const std::vector<Vertex>& start,
                                                  std::vector<std::vector<Vertex>>* witnesses) {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<std::vector<Vertex>> queue{start};
    seen[start.back()] = 1;
    std::vector<int> lpos(static_cast<std::size_t>(n_), -1);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      if (out_of_budget()) return std::nullopt;
      const std::vector<Vertex> p = queue[qi];
      if (progress_possible(p)) return p;
      if (witnesses) witnesses->push_back(p);
      const int l = static_cast<int>(p.size()) - 1;
      for (int i = 0; i <= l; ++i) lpos[p[i]] = i;
      std::vector<Vertex> nbrs(g_.neighbors(p[l]).begin(), g_.neighbors(p[l]).end());
      std::shuffle(nbrs.begin(), nbrs.end(), rng_);
      for (Vertex x : nbrs) {
        const int i = lpos[x];
        if (i < 0 || i > l - 2) continue;
        if (is_fixed(p[i], p[i + 1])) continue;
        if (seen[p[i + 1]]) continue;
        ++steps_;
        std::vector<Vertex> q = p;
        std::reverse(q.begin() + i + 1, q.end());
        seen[q.back()] = 1;
        queue.push_back(std::move(q));
      }
      for (int i = 0; i <= l; ++i) lpos[p[i]] = -1;
    }
    return std::nullopt;
  }

  // S_P closure with the back fixed (done on the reversed path), then the
  // T_v closure for every collected witness.
  bool rotate_to_progress() {
    std::vector<Vertex> rev(path_.rbegin(), path_.rend());
    std::vector<std::vector<Vertex>> witnesses;
    if (auto p = back_closure(rev, &witnesses)) {
      set_path(std::move(*p));
      return true;
    }
    for (auto& w : witnesses) {
      if (out_of_budget()) return false;
      std::vector<Vertex> fw(w.rbegin(), w.rend());
      if (auto p = back_closure(fw, nullptr)) {
        set_path(std::move(*p));
        return true;
      }
    }
    return false;
  }
};

bool quick_reject(const Graph& g) { return min_degree(g) < 2 || !is_connected(g); }

}  // namespace

SearchResult find_hamilton_cycle(const Graph& g, SearchBudget budget, std::uint64_t seed) {
  if (g.n() < 3) throw DomainError("Hamilton cycle search needs n >= 3");
  SearchResult res;
  if (quick_reject(g)) return res;
  Posa posa(g, std::nullopt, seed, budget.max_steps);
  for (int r = 0; r < std::max(budget.restarts, 1) && !posa.out_of_budget(); ++r) {
    res.restarts = r + 1;
    if (posa.attempt()) {
      res.found = true;
      res.certificate = posa.path();
      break;
    }
  }
  res.steps = posa.steps();
  return res;
}

SearchResult find_path_between(const Graph& g, Vertex u, Vertex v, SearchBudget budget, std::uint64_t seed) {
  if (u == v) throw PreconditionError("find_path_between needs distinct endpoints");
  if (u < 0 || v < 0 || u >= g.n() || v >= g.n()) throw InvalidSet("endpoint out of range");
  SearchResult res;
  if (g.n() == 2) {
    if (g.has_edge(u, v)) {
      res.found = true;
      res.certificate = {u, v};
    }
    return res;
  }
  const Edge virt = make_edge(u, v);
  const Graph gp = with_edges(g, std::span<const Edge>(&virt, 1));
  if (quick_reject(gp)) return res;
  Posa posa(gp, virt, seed, budget.max_steps);
  for (int r = 0; r < std::max(budget.restarts, 1) && !posa.out_of_budget(); ++r) {
    res.restarts = r + 1;
    if (!posa.attempt()) continue;
    // Cut the cycle at the virtual edge so the path runs from u to v.
    const auto& cyc = posa.path();
    const int len = static_cast<int>(cyc.size());
    const int iu = static_cast<int>(std::find(cyc.begin(), cyc.end(), u) - cyc.begin());
    const bool v_next = cyc[(iu + 1) % len] == v;
    std::vector<Vertex> path;
    for (int k = 0; k < len; ++k) path.push_back(v_next ? cyc[(iu - k + len) % len] : cyc[(iu + k) % len]);
    if (path.back() == v && verify_hamilton_path(g, path)) {
      res.found = true;
      res.certificate = std::move(path);
      break;
    }
  }
  res.steps = posa.steps();
  return res;
}

std::vector<Vertex> long_path(const Graph& g, std::uint64_t seed, std::int64_t max_steps) {
  if (g.n() == 0) return {};
  Posa posa(g, std::nullopt, seed, max_steps);
  if (posa.attempt()) return posa.path();
  return posa.best();
}

}  // namespace dham
