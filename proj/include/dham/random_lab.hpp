#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dham/graph.hpp"
#include "dham/rotation.hpp"

namespace dham {

/**
   Philox4x32-10 counter-based generator. Every (key, counter) pair maps to
   an independent block of four 32-bit words, so trial t of edge e can be
   drawn without touching any other stream.
 */
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// Uniform in [0,1) for edge `edge` in trial `trial`, from 53 bits of the block.
double coupled_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t edge);

/// G_p: keeps edge e iff coupled_uniform(seed, trial, e) < p. The same
/// (seed, trial) at p <= p' yields nested edge sets.
Graph sample_subgraph(const Graph& g, double p, std::uint64_t seed, std::uint64_t trial = 0);

struct WilsonInterval {
  double lo = 0;
  double hi = 1;
};

/// 95% Wilson score interval for successes out of trials.
WilsonInterval wilson95(std::int64_t successes, std::int64_t trials);

struct SweepRow {
  double p = 0;
  int trials = 0;
  int successes = 0;
  double phat = 0;
  double wilson95_lo = 0;
  double wilson95_hi = 0;
  double mean_steps = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;        // ascending p
  std::vector<std::vector<char>> outcome;  // outcome[row][trial]
  std::string graph_descriptor;
  SearchBudget budget;
  std::vector<std::string> warnings;
};

struct SweepOptions {
  SearchBudget budget{10, 200'000};
  int threads = 0;  // 0: hardware concurrency
};

/**
   For each trial, the p-grid is walked upward on one coupled sample
   family. A verified cycle found at some p stays a certificate at every
   larger p and is reused. When the engine gives up and n <= 16, the exact
   oracle decides. Rows are keyed by p (duplicates removed).
 */
SweepResult hamiltonicity_sweep(const Graph& g, std::vector<double> p_list, int trials, std::uint64_t seed,
                                SweepOptions opts = {});

/// "n=<n> m=<m> mindeg=<d> dirac=<0|1>"
std::string describe(const Graph& g);

/// CSV with header p,trials,successes,phat,wilson95_lo,wilson95_hi,mean_steps.
std::string sweep_csv(const SweepResult& r);

/// 2 exp(-lambda^2 / (3np)) for X ~ Bi(n,p); requires 0 <= lambda <= np.
double chernoff_bound(std::int64_t n, double p, double lambda);

/// 2 exp(-2t^2 / n) for a hypergeometric sample of size n; t >= 0.
double hypergeometric_bound(std::int64_t n, double t);

}  // namespace dham
