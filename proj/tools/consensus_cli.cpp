// Command-line front end: graph generation, rate tables, simulations, and
// the numerical verification suites. Exit codes: 0 success, 1 runtime or
// domain failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "consensus/graph.hpp"
#include "consensus/protocols.hpp"
#include "consensus/sim.hpp"
#include "consensus/spectral.hpp"
#include "consensus/verify.hpp"

namespace {

using namespace consensus;

struct GraphArgs {
  std::string family;
  int n = 8;
  double p = -1.0;  // ws rewire probability, or first part size for bipartite
  int q = -1;
  int k = 4;
  int m0 = 3;
  int m = 2;
  std::optional<uint64_t> seed;
  std::string file;  // load instead of generate
};

Graph build_graph(const GraphArgs& a) {
  if (!a.file.empty()) return load_edgelist_file(a.file);
  GenParams gp;
  gp.ring_k = a.k;
  gp.clique_m0 = a.m0;
  gp.attach_m = a.m;
  gp.seed = a.seed;
  if (a.family == "complete_bipartite" || a.family == "bipartite") {
    gp.part_p = a.p >= 0 ? static_cast<int>(a.p) : a.n / 2;
    gp.part_q = a.q >= 0 ? a.q : a.n - gp.part_p;
  } else if (a.p >= 0.0) {
    gp.rewire_p = a.p;
  }
  return gen_named(a.family, a.n, gp);
}

void add_graph_options(CLI::App* cmd, GraphArgs& args, bool allow_file,
                       const char* seed_flag = "--seed") {
  cmd->add_option("--family", args.family,
                  "path|cycle|star|complete|complete_bipartite|ws|ba");
  cmd->add_option("--n", args.n, "vertex count");
  cmd->add_option("--p", args.p, "ws rewire probability / bipartite first part size");
  cmd->add_option("--q", args.q, "bipartite second part size");
  cmd->add_option("--k", args.k, "ws ring degree (even)");
  cmd->add_option("--m0", args.m0, "ba initial clique size");
  cmd->add_option("--m", args.m, "ba attachments per node");
  cmd->add_option_function<uint64_t>(
      seed_flag, [&args](uint64_t s) { args.seed = s; }, "RNG seed for random families");
  if (allow_file) cmd->add_option("--graph", args.file, "edge-list file instead of a family");
}

std::string rate_cell(const Rate& r) {
  if (r.divergent) return "div";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", r.gamma);
  return buf;
}

int cmd_graph(const GraphArgs& args, const std::string& out) {
  Graph g = build_graph(args);
  auto spec = sym_eigenvalues(laplacian(g));
  auto [l2, lN] = extreme_nonzero(spec);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << save_edgelist(g);
  }
  std::printf("n %d\nedges %zu\nlambda2 %.4f\nlambdaN %.4f\neigenratio %.4f\n", g.size(),
              g.edges().size(), l2, lN, l2 / lN);
  return 0;
}

int cmd_rates(const std::vector<GraphArgs>& inputs, const std::string& out, bool pretty) {
  std::string csv = "graph,eigenratio,rho_s,gamma_bc,gamma_gf,gamma_mem,gamma_gmem,gamma_firmem,gamma_optmem\n";
  std::string table;
  for (const auto& in : inputs) {
    Graph g = build_graph(in);
    if (!is_connected(g)) throw std::runtime_error("rates: input graph is disconnected");
    RateReport rep = table2_report(g);
    std::string name = !in.file.empty() ? in.file : in.family + std::to_string(in.n);
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%s,%s,%s,%s,%s,%s\n", name.c_str(), rep.eigenratio,
                  rep.rho_s, rate_cell(rep.bc.rate).c_str(), rate_cell(rep.gf.rate).c_str(),
                  rate_cell(rep.mem.rate).c_str(), rate_cell(rep.gmem.rate).c_str(),
                  rate_cell(rep.firmem.rate).c_str(), rate_cell(rep.optmem.rate).c_str());
    csv += buf;
    auto cell4 = [](const Rate& r) {
      if (r.divergent) return std::string("div");
      char b[16];
      std::snprintf(b, sizeof b, "%.4f", r.gamma);
      return std::string(b);
    };
    std::snprintf(buf, sizeof buf, "%-14s %9.4f %7.4f %7s %7s %7s %7s %7s %7s\n", name.c_str(),
                  rep.eigenratio, rep.rho_s, cell4(rep.bc.rate).c_str(), cell4(rep.gf.rate).c_str(),
                  cell4(rep.mem.rate).c_str(), cell4(rep.gmem.rate).c_str(),
                  cell4(rep.firmem.rate).c_str(), cell4(rep.optmem.rate).c_str());
    table += buf;
  }
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << csv;
  }
  if (pretty) {
    std::printf("%-14s %9s %7s %7s %7s %7s %7s %7s %7s\n", "graph", "ratio", "rho_s", "bc", "gf", "mem",
                "gmem", "firmem", "optmem");
    std::fputs(table.c_str(), stdout);
  } else {
    std::fputs(csv.c_str(), stdout);
  }
  return 0;
}

int simulate_one(const Graph& g, const RateReport& rep, const std::string& alg, const SimConfig& cfg,
                 const std::string& out) {
  const SymMatrix L = laplacian(g);
  const SymMatrix W = metropolis_weights(g);
  const SymMatrix* m = &L;
  ProtocolParams params;
  bool period3 = false;
  if (alg == "bc") {
    params = rep.bc.params;
  } else if (alg == "gf") {
    params = rep.gf.params;
    period3 = true;
  } else if (alg == "mem") {
    params = rep.mem.params;
    m = &W;
  } else if (alg == "gmem") {
    params = rep.gmem.params;
    m = &W;
  } else if (alg == "firmem") {
    params = rep.firmem.params;
  } else if (alg == "optmem") {
    params = rep.optmem.params;
  } else {
    throw CLI::ValidationError("--alg", "unknown algorithm " + alg);
  }
  Trajectory t = simulate_weight_scheme(*m, params, cfg);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << trajectory_csv(t);
  }
  const bool div = flagged_divergent(t);
  std::printf("%s:", alg.c_str());
  if (t.settled_at)
    std::printf(" settled at step %d", *t.settled_at);
  else
    std::printf(" not settled within %zu steps", t.states.size() - 1);
  if (static_cast<int>(t.errors.size()) > 5 && !div) {
    auto [lo, hi] = default_rate_window(t, period3);
    std::printf(", empirical rate %.4f", empirical_rate(t, lo, hi));
  }
  if (div) std::printf(" DIVERGED");
  std::printf("\n");
  return 0;
}

int cmd_simulate(const GraphArgs& gargs, const std::string& alg, const SimConfig& cfg,
                 const std::string& out) {
  Graph g = build_graph(gargs);
  if (!is_connected(g)) throw std::runtime_error("simulate: input graph is disconnected");
  RateReport rep = table2_report(g);
  if (alg != "all") return simulate_one(g, rep, alg, cfg, out);
  const char* algs[] = {"bc", "gf", "mem", "gmem", "firmem", "optmem"};
  for (const char* a : algs) {
    std::string path = out;
    if (!path.empty()) {
      const auto dot = path.rfind('.');
      path = dot == std::string::npos ? path + "_" + a : path.substr(0, dot) + "_" + a + path.substr(dot);
    }
    simulate_one(g, rep, a, cfg, path);
  }
  return 0;
}

int cmd_verify(const std::string& suite) {
  if (!verify::is_known_suite(suite)) {
    std::fprintf(stderr, "unknown suite '%s' (table2 example1 theorem1 lemma4 routh kharitonov margin worstcase all)\n",
                 suite.c_str());
    return 2;
  }
  const double tol = verify::table_tolerance_from_env();
  auto results = verify::run_suite(suite, tol);
  bool ok = true;
  for (const auto& r : results) {
    std::printf("[%s] %-24s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    ok &= r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Memory-accelerated average consensus: rates, protocols, simulation, verification"};
  app.require_subcommand(1);

  GraphArgs g_args;
  std::string g_out;
  auto* graph_cmd = app.add_subcommand("graph", "generate a graph and print its spectral summary");
  add_graph_options(graph_cmd, g_args, false);
  graph_cmd->add_option("--out", g_out, "write canonical edge list here");

  std::vector<std::string> rate_files;
  GraphArgs r_args;
  std::string r_out;
  bool r_pretty = false;
  auto* rates_cmd = app.add_subcommand("rates", "tuned convergence rates for all six algorithms");
  add_graph_options(rates_cmd, r_args, false);
  rates_cmd->add_option("--graph", rate_files, "edge-list file(s)");
  rates_cmd->add_option("--out", r_out, "also write the CSV here");
  rates_cmd->add_flag("--pretty", r_pretty, "print a 4-decimal table instead of CSV");

  GraphArgs s_args;
  std::string s_alg = "optmem", s_out;
  SimConfig s_cfg;
  auto* sim_cmd = app.add_subcommand("simulate", "run a consensus protocol and export the trajectory");
  add_graph_options(sim_cmd, s_args, true, "--graph-seed");
  sim_cmd->add_option("--alg", s_alg, "bc|gf|mem|gmem|firmem|optmem|all");
  sim_cmd->add_option("--steps", s_cfg.steps, "max iterations");
  sim_cmd->add_option("--tol", s_cfg.tol, "consensus-error stop threshold");
  sim_cmd->add_option("--seed", s_cfg.seed, "seed for the initial states");
  sim_cmd->add_option("--out", s_out, "trajectory CSV path (suffixed per algorithm for --alg all)");

  std::string v_suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "run a numerical verification suite");
  verify_cmd->add_option("--suite", v_suite, "table2|example1|theorem1|lemma4|routh|kharitonov|margin|worstcase|all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (graph_cmd->parsed()) return cmd_graph(g_args, g_out);
    if (rates_cmd->parsed()) {
      std::vector<GraphArgs> inputs;
      for (const auto& f : rate_files) {
        GraphArgs a;
        a.file = f;
        inputs.push_back(a);
      }
      if (!r_args.family.empty()) inputs.push_back(r_args);
      if (inputs.empty()) throw CLI::ValidationError("rates", "need --graph or --family");
      return cmd_rates(inputs, r_out, r_pretty);
    }
    if (sim_cmd->parsed()) return cmd_simulate(s_args, s_alg, s_cfg, s_out);
    if (verify_cmd->parsed()) return cmd_verify(v_suite);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
