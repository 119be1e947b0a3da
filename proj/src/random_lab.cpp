#include "dham/random_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "dham/errors.hpp"
#include "dham/hamilton_oracle.hpp"

namespace dham {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53, kM1 = 0xCD9E8D57;
constexpr std::uint32_t kW0 = 0x9E3779B9, kW1 = 0xBB67AE85;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

std::uint32_t lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
std::uint32_t hi32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

std::uint64_t engine_seed(std::uint64_t seed, std::uint64_t trial, std::size_t p_index) {
  auto b = Philox4x32::block({lo32(trial), hi32(trial), static_cast<std::uint32_t>(p_index), 0xE9619E5Du},
                             {lo32(seed), hi32(seed)});
  return (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
}

void check_p(double p) {
  if (!(p >= 0 && p <= 1)) throw DomainError("p must lie in [0, 1]");
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, ctr[0], hi0, lo0);
    mulhilo(kM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

double coupled_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t edge) {
  const auto b = Philox4x32::block({lo32(edge), hi32(edge), lo32(trial), hi32(trial)}, {lo32(seed), hi32(seed)});
  const std::uint64_t bits = ((static_cast<std::uint64_t>(b[0]) << 32) | b[1]) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

Graph sample_subgraph(const Graph& g, double p, std::uint64_t seed, std::uint64_t trial) {
  check_p(p);
  std::vector<int> keep;
  for (std::size_t e = 0; e < g.edges().size(); ++e)
    if (coupled_uniform(seed, trial, e) < p) keep.push_back(static_cast<int>(e));
  return edge_subgraph(g, keep);
}

WilsonInterval wilson95(std::int64_t successes, std::int64_t trials) {
  if (trials <= 0 || successes < 0 || successes > trials) throw DomainError("need 0 <= successes <= trials, trials > 0");
  constexpr double z = 1.959963984540054;
  const double nt = static_cast<double>(trials), ph = static_cast<double>(successes) / nt;
  const double denom = 1 + z * z / nt;
  const double centre = (ph + z * z / (2 * nt)) / denom;
  const double half = z * std::sqrt(ph * (1 - ph) / nt + z * z / (4 * nt * nt)) / denom;
  return {successes == 0 ? 0.0 : std::max(0.0, centre - half), successes == trials ? 1.0 : std::min(1.0, centre + half)};
}

std::string describe(const Graph& g) {
  std::ostringstream os;
  os << "n=" << g.n() << " m=" << g.m() << " mindeg=" << (g.n() ? min_degree(g) : 0)
     << " dirac=" << (g.n() >= 3 && is_dirac(g) ? 1 : 0);
  return os.str();
}

SweepResult hamiltonicity_sweep(const Graph& g, std::vector<double> p_list, int trials, std::uint64_t seed,
                                SweepOptions opts) {
  if (g.n() < 3) throw DomainError("sweep needs n >= 3");
  if (trials < 1) throw DomainError("trials must be positive");
  for (double p : p_list) check_p(p);
  std::sort(p_list.begin(), p_list.end());
  p_list.erase(std::unique(p_list.begin(), p_list.end()), p_list.end());

  SweepResult res;
  res.graph_descriptor = describe(g);
  res.budget = opts.budget;
  if (!is_dirac(g)) res.warnings.push_back("host graph is not Dirac");
  const std::size_t np = p_list.size();
  res.outcome.assign(np, std::vector<char>(static_cast<std::size_t>(trials), 0));
  std::vector<std::vector<std::int64_t>> steps(np, std::vector<std::int64_t>(static_cast<std::size_t>(trials), 0));

  const auto& edges = g.edges();
  auto run_trial = [&](int t) {
    std::vector<double> u(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) u[e] = coupled_uniform(seed, static_cast<std::uint64_t>(t), e);
    std::vector<Vertex> cert;
    for (std::size_t i = 0; i < np; ++i) {
      std::vector<int> keep;
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (u[e] < p_list[i]) keep.push_back(static_cast<int>(e));
      const Graph h = edge_subgraph(g, keep);
      if (!cert.empty() && verify_hamilton_cycle(h, cert)) {
        res.outcome[i][t] = 1;
        continue;
      }
      auto sr = find_hamilton_cycle(h, opts.budget, engine_seed(seed, static_cast<std::uint64_t>(t), i));
      steps[i][t] = sr.steps;
      if (sr.found && verify_hamilton_cycle(h, sr.certificate)) {
        cert = std::move(sr.certificate);
      } else if (h.n() <= 16) {
        if (auto c = oracle::hamilton_cycle(h); c && verify_hamilton_cycle(h, *c)) cert = std::move(*c);
      }
      if (!cert.empty() && verify_hamilton_cycle(h, cert)) res.outcome[i][t] = 1;
    }
  };

  int workers = opts.threads > 0 ? opts.threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, trials);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < trials; t = next++) run_trial(t);
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < np; ++i) {
    SweepRow row;
    row.p = p_list[i];
    row.trials = trials;
    std::int64_t total = 0;
    for (int t = 0; t < trials; ++t) {
      row.successes += res.outcome[i][t];
      total += steps[i][t];
    }
    row.phat = static_cast<double>(row.successes) / trials;
    const auto w = wilson95(row.successes, trials);
    row.wilson95_lo = w.lo;
    row.wilson95_hi = w.hi;
    row.mean_steps = static_cast<double>(total) / trials;
    res.rows.push_back(row);
  }
  return res;
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os.precision(10);
  os << "p,trials,successes,phat,wilson95_lo,wilson95_hi,mean_steps\n";
  for (const auto& row : r.rows)
    os << row.p << ',' << row.trials << ',' << row.successes << ',' << row.phat << ',' << row.wilson95_lo << ','
       << row.wilson95_hi << ',' << row.mean_steps << '\n';
  return os.str();
}

double chernoff_bound(std::int64_t n, double p, double lambda) {
  if (n < 1) throw DomainError("n must be positive");
  if (!(p > 0 && p <= 1)) throw DomainError("p must lie in (0, 1]");
  const double np = static_cast<double>(n) * p;
  if (!(lambda >= 0 && lambda <= np)) throw DomainError("Chernoff bound needs 0 <= lambda <= np");
  return 2 * std::exp(-lambda * lambda / (3 * np));
}

double hypergeometric_bound(std::int64_t n, double t) {
  if (n < 1) throw DomainError("sample size must be positive");
  if (!(t >= 0)) throw DomainError("t must be nonnegative");
  return 2 * std::exp(-2 * t * t / static_cast<double>(n));
}

}  // namespace dham
