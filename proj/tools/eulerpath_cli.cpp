// Command line front end: generators, decomposition, the long-path pipeline,
// exact oracles, the experiment harness, SVG plots, and an invariant check
// runner. Exit codes: 0 success, 2 invalid input, 3 certification failure
// in `verify`.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "eulerpath/cycles.hpp"
#include "eulerpath/density.hpp"
#include "eulerpath/lab.hpp"
#include "eulerpath/stitcher.hpp"

using namespace eulerpath;

namespace {

Digraph load_graph(const std::string& path) {
  if (path == "-") return read_edge_list(std::cin);
  return read_edge_list_file(path);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw Error(ErrorKind::InvalidFormat, "cannot write " + path);
  return file;
}

std::pair<Digraph, int> densest_component(const Digraph& g) {
  auto comps = underlying_components(g);
  size_t pick = 0;
  double best = -1;
  for (size_t i = 0; i < comps.size(); ++i) {
    long long e = 0;
    for (int v : comps[i]) e += g.out_degree(v);
    double avg = static_cast<double>(e) / comps[i].size();
    if (avg > best) {
      best = avg;
      pick = i;
    }
  }
  return {g.induced(comps[pick]), comps[pick].front()};
}

int run_verify(const std::string& input, std::uint64_t seed) {
  Digraph g = load_graph(input);
  bool all_ok = true;
  auto check = [&](const std::string& name, bool ok, const std::string& note = "") {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name;
    if (!note.empty()) std::cout << " (" << note << ")";
    std::cout << "\n";
    all_ok = all_ok && ok;
  };

  {
    std::ostringstream text;
    write_edge_list(g, text);
    std::istringstream back(text.str());
    check("edge list round-trip", read_edge_list(back).edge_list() == g.edge_list());
  }

  bool eulerian = is_eulerian(g);
  check("eulerian balance", eulerian);
  if (!eulerian) {
    std::cout << "remaining checks need an Eulerian input\n";
    return 3;
  }

  {
    auto dec = decompose_into_cycles(g);
    std::vector<char> covered(g.store_edge_count(), 0);
    bool exact = true;
    long long total = 0;
    for (const auto& c : dec.cycles)
      for (size_t i = 0; i < c.size(); ++i) {
        int e = g.edge_id(c[i], c[(i + 1) % c.size()]);
        if (e < 0 || covered[e]) exact = false;
        else covered[e] = 1, ++total;
      }
    check("cycle partition exactness", exact && total == g.edge_count(),
          std::to_string(dec.cycles.size()) + " cycles");
  }

  check("strong connectivity iff underlying connectivity",
        is_strongly_connected(g.without_isolated()) ==
            is_connected_underlying(g.without_isolated()));

  if (g.live_vertex_count() <= 200) {
    auto part = sccs(g);
    bool agree = true;
    const int n = g.vertex_count();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (int v = 0; v < n; ++v)
      if (g.vertex_alive(v)) {
        reach[v][v] = 1;
        g.for_each_out(v, [&](int w) { reach[v][w] = 1; });
      }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (reach[i][k])
          for (int j = 0; j < n; ++j)
            if (reach[k][j]) reach[i][j] = 1;
    for (int u = 0; u < n && agree; ++u)
      for (int v = 0; v < n && agree; ++v) {
        if (!g.vertex_alive(u) || !g.vertex_alive(v)) continue;
        bool same = part.component_of[u] == part.component_of[v];
        if (same != (reach[u][v] && reach[v][u])) agree = false;
      }
    check("sccs against brute-force reachability", agree);
  }

  for (int len : {2, 3}) {
    SieveResult r = short_cycle_sieve(g, len);
    bool ok = is_eulerian(r.short_part) && is_eulerian(r.long_part) &&
              r.short_part.edge_count() + r.long_part.edge_count() ==
                  g.edge_count();
    check("sieve partition at threshold " + std::to_string(len), ok);
  }

  {
    Digraph h = g.without_isolated();
    if (h.edge_count() > 0) {
      int min_out = h.vertex_count();
      for (int v : h.live_vertices())
        min_out = std::min(min_out, h.out_degree(v));
      auto cyc = min_outdegree_cycle(h);
      check("greedy cycle length bound",
            static_cast<int>(cyc.size()) >= min_out + 1 &&
                h.has_edge(cyc.back(), cyc.front()));
    }
  }

  {
    auto dec = decompose_into_cycles(g);
    Digraph peeled = peel_low_degree(g, dec, 2.0);
    bool ok = is_eulerian(peeled);
    for (int v : peeled.live_vertices())
      if (peeled.out_degree(v) > 0 && peeled.out_degree(v) < 2) ok = false;
    check("degree peel postcondition", ok);
  }

  {
    auto [work, v] = densest_component(g);
    if (work.edge_count() > 0) {
      PipelineConfig cfg;
      Rng rng(seed);
      LongPathResult res = long_path_from(work, v, cfg, rng);
      bool ok = check_path(work, res.path.vertices) &&
                res.path.vertices.front() == v;
      std::string note = "length " + std::to_string(res.path.length());
      if (work.live_vertex_count() <= 16) {
        int oracle = oracle_longest_path_from(work, v);
        ok = ok && res.path.length() <= oracle;
        note += ", oracle " + std::to_string(oracle);
      }
      check("long path validity", ok, note);
    }
  }

  if (!all_ok) return 3;
  std::cout << "all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"long directed paths in connected Eulerian digraphs"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph and print its edge list");
  std::string gen_spec, gen_out;
  std::uint64_t gen_seed = 0;
  bool gen_has_seed = false;
  gen->add_option("--spec", gen_spec, "generator, e.g. 'blowup(6,3)'")->required();
  gen->add_option("--output,-o", gen_out, "output file (default stdout)");
  gen->add_option("--seed", gen_seed, "seed for randomized generators")
      ->each([&](const std::string&) { gen_has_seed = true; });

  // decompose
  auto* dec = app.add_subcommand("decompose", "partition the edge set into cycles");
  std::string dec_in, dec_out;
  dec->add_option("--input,-i", dec_in, "edge list file")->required();
  dec->add_option("--output,-o", dec_out, "output file (default stdout)");

  // longpath
  auto* lp = app.add_subcommand("longpath", "find a long path from a vertex");
  std::string lp_in, lp_trace, lp_cfg;
  int lp_start = 0;
  double lp_c = 0.01, lp_eps = 1.0 / 40.0;
  std::uint64_t lp_seed = 0;
  bool lp_densest = false;
  lp->add_option("--input,-i", lp_in, "edge list file")->required();
  lp->add_option("--start", lp_start, "start vertex")->required();
  lp->add_option("--c", lp_c, "guarantee constant c");
  lp->add_option("--eps", lp_eps, "guarantee exponent offset");
  lp->add_option("--seed", lp_seed, "random seed");
  lp->add_option("--emit-trace", lp_trace, "write branch decisions to a file");
  lp->add_option("--config", lp_cfg, "pipeline config file (overrides --c/--eps)");
  lp->add_flag("--densest-component", lp_densest,
               "run on the densest component when the input is disconnected");

  // oracle
  auto* orc = app.add_subcommand("oracle", "exact answers on small graphs");
  std::string orc_in, orc_what = "path";
  int orc_start = 0, orc_cap = 16;
  orc->add_option("--input,-i", orc_in, "edge list file")->required();
  orc->add_option("--what", orc_what, "path | cycle | density")
      ->check(CLI::IsMember({"path", "cycle", "density"}));
  orc->add_option("--start", orc_start, "start vertex (path oracle)");
  orc->add_option("--cap", orc_cap, "size cap");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a generator/seed grid to CSV");
  std::string exp_cfg, exp_out;
  exp->add_option("--config", exp_cfg, "experiment config file")->required();
  exp->add_option("--output,-o", exp_out, "CSV output (default stdout)");

  // plot
  auto* plot = app.add_subcommand("plot", "render an experiment CSV as SVG");
  std::string plot_in, plot_out;
  plot->add_option("--input,-i", plot_in, "CSV file")->required();
  plot->add_option("--output,-o", plot_out, "SVG output file")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "run the invariant suite on a file");
  std::string ver_in;
  std::uint64_t ver_seed = 0;
  ver->add_option("--input,-i", ver_in, "edge list file")->required();
  ver->add_option("--seed", ver_seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      GeneratorSpec spec = GeneratorSpec::parse(gen_spec);
      Digraph g = generate(spec, gen_seed, gen_has_seed && !spec.has_seed);
      std::ofstream file;
      write_edge_list(g, open_output(file, gen_out));
    } else if (*dec) {
      Digraph g = load_graph(dec_in);
      auto d = decompose_into_cycles(g);
      std::ofstream file;
      write_cycles(d.cycles, open_output(file, dec_out));
    } else if (*lp) {
      Digraph g = load_graph(lp_in);
      PipelineConfig cfg;
      if (!lp_cfg.empty()) cfg = PipelineConfig::from_file(lp_cfg);
      else {
        cfg.c = lp_c;
        cfg.eps = lp_eps;
      }
      int start = lp_start;
      if (lp_densest) {
        auto [work, v] = densest_component(g);
        g = work;
        start = v;
      }
      Rng rng(lp_seed);
      TraceLog trace;
      LongPathResult res =
          long_path_from(g, start, cfg, rng, lp_trace.empty() ? nullptr : &trace);
      std::cout << "length=" << res.path.length() << "\n"
                << "certified=" << (res.certified ? "true" : "false") << "\n"
                << "branch=" << res.branch << "\n"
                << "d=" << res.d_used << "\n"
                << "phi=" << res.phi_d << "\n"
                << "path=";
      for (size_t i = 0; i < res.path.vertices.size(); ++i)
        std::cout << (i ? " " : "") << res.path.vertices[i];
      std::cout << "\n";
      if (!lp_trace.empty()) {
        std::ofstream tf(lp_trace);
        if (!tf) throw Error(ErrorKind::InvalidFormat, "cannot write " + lp_trace);
        trace.write(tf);
      }
    } else if (*orc) {
      Digraph g = load_graph(orc_in);
      if (orc_what == "path")
        std::cout << oracle_longest_path_from(g, orc_start, orc_cap) << "\n";
      else if (orc_what == "cycle")
        std::cout << oracle_longest_cycle(g, orc_cap) << "\n";
      else {
        auto r = oracle_max_density_eulerian_subgraph(g);
        std::cout << "density=" << r.density << "\n";
        write_edge_list(r.subgraph, std::cout);
      }
    } else if (*exp) {
      auto cfg = ExperimentConfig::from_file(exp_cfg);
      std::string csv = experiment_csv(run_experiment(cfg));
      std::ofstream file;
      open_output(file, exp_out) << csv;
    } else if (*plot) {
      std::ifstream in(plot_in);
      if (!in) throw Error(ErrorKind::InvalidFormat, "cannot open " + plot_in);
      std::stringstream csv;
      csv << in.rdbuf();
      std::ofstream file;
      write_experiment_svg(csv.str(), open_output(file, plot_out));
    } else if (*ver) {
      return run_verify(ver_in, ver_seed);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
