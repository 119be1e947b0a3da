// dham: command-line front end. JSON or CSV on stdout (or --out),
// diagnostics on stderr. Exit 0 ok, 1 domain error, 2 usage error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "dham/bipartite_frame.hpp"
#include "dham/classifier.hpp"
#include "dham/dirac_maker.hpp"
#include "dham/errors.hpp"
#include "dham/exhaustive.hpp"
#include "dham/expander.hpp"
#include "dham/graph_io.hpp"
#include "dham/hamilton_oracle.hpp"
#include "dham/http_service.hpp"
#include "dham/json_codec.hpp"
#include "dham/potential.hpp"
#include "dham/random_lab.hpp"
#include "dham/rotation.hpp"
#include "dham/session.hpp"
#include "dham/strategies.hpp"

using namespace dham;

namespace {

struct Common {
  std::string graph_file;
  std::string gen;
  std::string out;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, Common& c, bool seeded) {
  auto* g = sub->add_option("--graph", c.graph_file, "graph file (text 'n m' + edges, or JSON)");
  auto* s = sub->add_option("--gen", c.gen, "generator spec, e.g. complete:8, two-cliques-matching:6");
  g->excludes(s);
  sub->add_option("--out", c.out, "write the result here instead of stdout");
  if (seeded) sub->add_option("--seed", c.seed, "random seed (printed when omitted)");
}

Graph load(const Common& c) {
  if (!c.graph_file.empty()) return read_graph_file(c.graph_file);
  if (!c.gen.empty()) return graph_from_spec(c.gen);
  throw CLI::RequiredError("--graph or --gen");
}

std::uint64_t seed_of(const Common& c) {
  if (c.seed) return *c.seed;
  const std::uint64_t s = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
  std::cerr << "seed: " << s << "\n";
  return s;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw DomainError("cannot write " + c.out);
  f << text;
}

void emit(const Common& c, const Json& j) { emit(c, j.dump(2) + "\n"); }

std::vector<Vertex> parse_list(const std::string& s) {
  std::vector<Vertex> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ParseError("bad vertex '" + tok + "'");
    }
  }
  return out;
}

std::vector<Edge> parse_edges(const std::string& s) {
  std::vector<Edge> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto dash = tok.find('-');
    if (dash == std::string::npos) throw ParseError("special edges look like u-v, got '" + tok + "'");
    const auto uv = parse_list(tok.substr(0, dash) + "," + tok.substr(dash + 1));
    if (uv.size() != 2) throw ParseError("bad edge '" + tok + "'");
    out.push_back(make_edge(uv[0], uv[1]));
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ParseError("bad number '" + tok + "'");
    }
  }
  return out;
}

WinningFamily hamilton_family(const Graph& g) {
  if (g.n() > 12) throw BudgetExceeded("explicit Hamilton-cycle families need n <= 12");
  return WinningFamily{oracle::enumerate_hamilton_cycles(g, 200'000)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac-graph Hamiltonicity engine"};
  app.require_subcommand(1);

  // classify
  Common cc;
  double alpha = 0.001, gamma = 0.032;
  std::string cmode;
  auto* classify_cmd = app.add_subcommand("classify", "three-way structural classification of a Dirac graph");
  add_common(classify_cmd, cc, true);
  classify_cmd->add_option("--alpha", alpha);
  classify_cmd->add_option("--gamma", gamma);
  classify_cmd->add_option("--mode", cmode, "exact | local (default: exact for n <= 12)")
      ->check(CLI::IsMember({"exact", "local"}));

  // ham
  Common hc;
  int restarts = 50;
  std::int64_t max_steps = 1'000'000;
  bool use_oracle = false;
  auto* ham_cmd = app.add_subcommand("ham", "Hamilton cycle by rotation-extension");
  add_common(ham_cmd, hc, true);
  ham_cmd->add_option("--restarts", restarts);
  ham_cmd->add_option("--max-steps", max_steps);
  ham_cmd->add_flag("--oracle", use_oracle, "fall back to the exact oracle (n <= 20) when the search gives up");

  // ham-bip
  Common bc;
  std::string v1s, specials;
  auto* bip_cmd = app.add_subcommand("ham-bip", "proper Hamilton cycle on a bipartite frame");
  add_common(bip_cmd, bc, true);
  bip_cmd->add_option("--v1", v1s, "comma-separated V1 (V2 is the rest)")->required();
  bip_cmd->add_option("--special", specials, "special edges inside V1, e.g. 0-1,2-3");
  bip_cmd->add_option("--restarts", restarts);
  bip_cmd->add_option("--max-steps", max_steps);

  // expcheck
  Common ec;
  std::string kind = "half", emode = "exact";
  double eps = 0.25, r = 2;
  int samples = 10'000;
  auto* exp_cmd = app.add_subcommand("expcheck", "expander conditions");
  add_common(exp_cmd, ec, true);
  exp_cmd->add_option("--kind", kind)->check(CLI::IsMember({"half", "plain", "bipartite"}));
  exp_cmd->add_option("--eps", eps);
  exp_cmd->add_option("--r", r);
  exp_cmd->add_option("--mode", emode)->check(CLI::IsMember({"exact", "sampled"}));
  exp_cmd->add_option("--samples", samples);
  exp_cmd->add_option("--v1", v1s, "bipartite kind: comma-separated V1");
  exp_cmd->add_option("--special", specials, "bipartite kind: special edges, e.g. 0-1");

  // sweep
  Common sc;
  std::string pgrid, unit = "abs";
  int trials = 200, threads = 0;
  SweepOptions sopts;
  auto* sweep_cmd = app.add_subcommand("sweep", "coupled G_p Hamiltonicity sweep (CSV)");
  add_common(sweep_cmd, sc, true);
  sweep_cmd->add_option("--pgrid", pgrid, "comma-separated p values")->required();
  sweep_cmd->add_option("--pgrid-unit", unit, "abs | clogn (p = c ln n / n)")->check(CLI::IsMember({"abs", "clogn"}));
  sweep_cmd->add_option("--trials", trials);
  sweep_cmd->add_option("--threads", threads);
  sweep_cmd->add_option("--restarts", sopts.budget.restarts);
  sweep_cmd->add_option("--max-steps", sopts.budget.max_steps);

  // play
  Common pc;
  std::string bias_s = "1:1", maker_s = "dirac", breaker_s = "greedy-block", first_s = "maker", transcript;
  double beta = 1.0;
  auto* play_cmd = app.add_subcommand("play", "Maker-Breaker Hamiltonicity game");
  add_common(play_cmd, pc, true);
  play_cmd->add_option("--bias", bias_s, "m:b");
  play_cmd->add_option("--maker", maker_s)->check(CLI::IsMember({"dirac", "random", "minimax", "first-free"}));
  play_cmd->add_option("--breaker", breaker_s)
      ->check(CLI::IsMember({"potential", "random", "minimax", "greedy-block", "first-free"}));
  play_cmd->add_option("--first", first_s)->check(CLI::IsMember({"maker", "breaker"}));
  play_cmd->add_option("--beta", beta);
  play_cmd->add_option("--transcript", transcript, "also write the transcript JSON here");

  // serve
  std::string host = "127.0.0.1", persist;
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP game-session service");
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--port", port);
  serve_cmd->add_option("--persist", persist, "directory for JSON-lines session logs");

  // oracle
  Common oc;
  std::vector<int> endpoints;
  auto* oracle_cmd = app.add_subcommand("oracle", "exact Hamilton cycle (or u-v path) for n <= 20");
  add_common(oracle_cmd, oc, false);
  oracle_cmd->add_option("--path", endpoints, "u v: Hamilton path between u and v")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*classify_cmd) {
      const Graph g = load(cc);
      ClassifierParams params{alpha, gamma};
      params.validate();
      const SearchMode mode = cmode.empty() ? (g.n() <= kExactHalfSetMaxN ? SearchMode::exact : SearchMode::local_search)
                                            : (cmode == "exact" ? SearchMode::exact : SearchMode::local_search);
      const std::uint64_t seed = mode == SearchMode::exact ? cc.seed.value_or(0) : seed_of(cc);
      Json j = classification_to_json(g, classify(g, params, mode, seed), params);
      j["mode"] = mode == SearchMode::exact ? "exact" : "local";
      j["seed"] = seed;
      emit(cc, j);
    } else if (*ham_cmd) {
      const Graph g = load(hc);
      const std::uint64_t seed = seed_of(hc);
      const SearchResult res = find_hamilton_cycle(g, SearchBudget{restarts, max_steps}, seed);
      Json j{{"found", res.found}, {"cycle", res.certificate}, {"restarts", res.restarts},
             {"steps", res.steps}, {"seed", seed},  {"source", "rotation"}};
      if (!res.found && use_oracle) {
        const auto c = oracle::hamilton_cycle(g);
        j["found"] = c.has_value();
        j["cycle"] = c ? *c : std::vector<Vertex>{};
        j["source"] = "oracle";
        j["exact"] = true;
      }
      j["verified"] = j["found"].get<bool>() && verify_hamilton_cycle(g, j["cycle"].get<std::vector<Vertex>>());
      emit(hc, j);
    } else if (*bip_cmd) {
      const Graph g = load(bc);
      const VertexSet v1(parse_list(v1s));
      const VertexSet v2 = v1.complement(g.n());
      const MatchedFrame mf = build_matched_frame(g, v1, v2, specials.empty() ? std::vector<Edge>{} : parse_edges(specials));
      const std::uint64_t seed = seed_of(bc);
      const ProperSearchResult res = find_proper_hamilton_cycle(g, mf, SearchBudget{restarts, max_steps}, seed);
      Json j{{"found", res.found}, {"cycle", res.cycle},     {"diagnostic", res.diagnostic},
             {"restarts", res.restarts}, {"steps", res.steps}, {"seed", seed},
             {"k", mf.frame.k()}};
      if (res.found) {
        j["proper"] = check_proper_cycle(g, mf, res.cycle).ok;
        j["special_edges_used"] = count_special_edges(mf, res.cycle, true);
      }
      emit(bc, j);
    } else if (*exp_cmd) {
      const Graph g = load(ec);
      ExpanderParams params;
      params.epsilon = eps;
      params.r = r;
      const CheckMode mode = emode == "exact" ? CheckMode::exact() : CheckMode::sampled(seed_of(ec), samples);
      ExpansionReport rep;
      if (kind == "half") {
        rep = check_half_expander(g, params, mode);
      } else if (kind == "plain") {
        rep = check_expander(g, params, mode);
      } else {
        if (v1s.empty()) throw CLI::RequiredError("--v1");
        const VertexSet v1(parse_list(v1s));
        const MatchedFrame mf =
            build_matched_frame(g, v1, v1.complement(g.n()), specials.empty() ? std::vector<Edge>{} : parse_edges(specials));
        params.k = mf.frame.k();
        rep = check_bipartite_expander(g, mf.frame, params, mode);
      }
      Json j = expansion_to_json(rep);
      j["kind"] = kind;
      j["mode"] = emode;
      emit(ec, j);
    } else if (*sweep_cmd) {
      const Graph g = load(sc);
      std::vector<double> ps = parse_doubles(pgrid);
      if (unit == "clogn") {
        const double scale = std::log(static_cast<double>(g.n())) / g.n();
        for (double& p : ps) {
          p *= scale;
          if (p > 1) {
            std::cerr << "warning: p clamped to 1\n";
            p = 1;
          }
        }
      }
      const std::uint64_t seed = seed_of(sc);
      sopts.threads = threads;
      const SweepResult res = hamiltonicity_sweep(g, ps, trials, seed, sopts);
      std::cerr << "graph: " << res.graph_descriptor << " seed: " << seed << "\n";
      for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
      emit(sc, sweep_csv(res));
    } else if (*play_cmd) {
      const Graph g = load(pc);
      const Bias bias = bias_from_string(bias_s);
      const std::uint64_t seed = seed_of(pc);
      const int board = static_cast<int>(g.m());
      std::optional<WinningFamily> family;
      if (maker_s == "minimax" || breaker_s == "minimax" || breaker_s == "potential") family = hamilton_family(g);
      std::unique_ptr<Strategy> maker, breaker;
      if (maker_s == "dirac") {
        DiracMakerOptions o;
        o.beta = beta;
        maker = maker_dirac_strategy(g, bias.breaker, seed, o);
      } else if (maker_s == "random") {
        maker = std::make_unique<RandomStrategy>(seed);
      } else if (maker_s == "minimax") {
        maker = std::make_unique<MinimaxStrategy>(board, *family, bias);
      } else {
        maker = std::make_unique<FirstFreeStrategy>();
      }
      if (breaker_s == "potential") {
        breaker = std::make_unique<PotentialBreaker>(*family);
      } else if (breaker_s == "random") {
        breaker = std::make_unique<RandomStrategy>(seed ^ 0x5DEECE66Dull);
      } else if (breaker_s == "minimax") {
        breaker = std::make_unique<MinimaxStrategy>(board, *family, bias);
      } else if (breaker_s == "greedy-block") {
        breaker = std::make_unique<GreedyBlockBreaker>(g);
      } else {
        breaker = std::make_unique<FirstFreeStrategy>();
      }
      HamiltonGoal goal(g);
      PlayOptions opts;
      opts.first = first_s == "maker" ? Player::maker : Player::breaker;
      if (family) opts.potential_family = &*family;
      const Transcript t = play(board, goal, *maker, *breaker, bias, opts);
      Json j = transcript_to_json(t);
      j["seed"] = seed;
      j["maker"] = maker->name();
      j["breaker"] = breaker->name();
      j["graph"] = describe(g);
      if (t.winner == Player::maker && !goal.cycle().empty()) {
        j["cycle"] = goal.cycle();
        j["verified"] = verify_hamilton_cycle(maker_graph(g, t.final_state), goal.cycle());
      }
      if (!transcript.empty()) {
        Common tc;
        tc.out = transcript;
        emit(tc, j);
      }
      emit(pc, j);
    } else if (*serve_cmd) {
      HttpService::check_host(host);
      SessionManager mgr(persist.empty() ? std::nullopt : std::optional<std::filesystem::path>(persist));
      if (!persist.empty()) std::cerr << "restored " << mgr.restore() << " session(s) from " << persist << "\n";
      HttpService svc(mgr);
      if (!svc.bind(host, port)) throw DomainError("cannot bind " + host + ":" + std::to_string(port));
      std::cerr << "listening on http://" << host << ":" << port << "\n";
      svc.listen_after_bind();
    } else if (*oracle_cmd) {
      const Graph g = load(oc);
      Json j;
      if (endpoints.size() == 2) {
        const auto p = oracle::hamilton_path(g, endpoints[0], endpoints[1]);
        j = {{"hamiltonian_path", p.has_value()}, {"path", p ? *p : std::vector<Vertex>{}}};
      } else {
        const auto c = oracle::hamilton_cycle(g);
        j = {{"hamiltonian", c.has_value()}, {"cycle", c ? *c : std::vector<Vertex>{}}};
      }
      emit(oc, j);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ClassificationFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
