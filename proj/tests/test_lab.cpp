#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "brute.hpp"
#include "common.hpp"
#include "doctest.h"
#include "eulerpath/lab.hpp"

using namespace eulerpath;
using namespace testgraphs;

TEST_CASE("generator fixtures") {
  Digraph c5 = generate(GeneratorSpec::parse("cycle(5)"));
  CHECK(c5.vertex_count() == 5);
  CHECK(c5.edge_count() == 5);

  Digraph b = generate(GeneratorSpec::parse("blowup(3,2)"));
  CHECK(b.vertex_count() == 6);
  CHECK(b.edge_count() == 12);  // k * t^2
  for (int v : b.live_vertices()) {
    CHECK(b.out_degree(v) == 2);
    CHECK(b.in_degree(v) == 2);
  }

  Digraph k4 = generate(GeneratorSpec::parse("complete(4)"));
  CHECK(k4.edge_count() == 12);

  Digraph tri = generate(GeneratorSpec::parse("shared_vertex_triangles(2)"));
  CHECK(tri.edge_list() == bowtie().edge_list());
}

TEST_CASE("generator parse round trip and errors") {
  for (const char* s :
       {"cycle(5)", "blowup(4,3)", "complete(6)", "shared_vertex_triangles(3)",
        "random_cycle_union(12,6,5)", "random_cycle_union(12,6,5,9)"}) {
    GeneratorSpec spec = GeneratorSpec::parse(s);
    CHECK(spec.to_string() == s);
  }
  CHECK_THROWS_AS(GeneratorSpec::parse("pentagon(5)"), Error);
  CHECK_THROWS_AS(GeneratorSpec::parse("cycle(5"), Error);
  CHECK_THROWS_AS(generate(GeneratorSpec::parse("cycle(1)")), Error);
  CHECK_THROWS_AS(generate(GeneratorSpec::parse("blowup(1,3)")), Error);
}

TEST_CASE("every generator output is Eulerian") {
  std::vector<Digraph> graphs;
  graphs.push_back(generate(GeneratorSpec::parse("cycle(9)")));
  graphs.push_back(generate(GeneratorSpec::parse("blowup(5,3)")));
  graphs.push_back(generate(GeneratorSpec::parse("complete(5)")));
  graphs.push_back(generate(GeneratorSpec::parse("shared_vertex_triangles(4)")));
  for (int seed = 0; seed < 50; ++seed)
    graphs.push_back(random_cycle_union(15, 6, 6, seed));
  for (const auto& g : graphs) {
    CHECK(is_eulerian(g));
    CHECK(is_strongly_connected(g.without_isolated()) ==
          is_connected_underlying(g.without_isolated()));
  }
}

TEST_CASE("random_cycle_union respects the simple digraph convention") {
  for (int seed = 0; seed < 30; ++seed) {
    Digraph g = random_cycle_union(10, 8, 4, seed);
    auto edges = g.edge_list();
    std::set<std::pair<int, int>> uniq(edges.begin(), edges.end());
    CHECK(uniq.size() == edges.size());
    for (auto [u, v] : edges) CHECK(u != v);
  }
}

TEST_CASE("oracle_longest_path_from on fixtures") {
  CHECK(oracle_longest_path_from(bowtie(), 0) == 2);
  CHECK(oracle_longest_path_from(bowtie(), 1) == 4);
  CHECK(oracle_longest_path_from(cycle(5), 0) == 4);
  try {
    oracle_longest_path_from(cycle(20), 0, 16);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooLarge);
  }
}

TEST_CASE("oracle_longest_path_from agrees with naive enumeration") {
  for (int seed = 0; seed < 40; ++seed) {
    Digraph g = random_cycle_union(7, 3, 4, seed);
    for (int v : g.live_vertices())
      CHECK(oracle_longest_path_from(g, v) == brute::longest_path_from(g, v));
  }
}

TEST_CASE("oracle_longest_cycle on fixtures") {
  CHECK(oracle_longest_cycle(triangle()) == 3);
  CHECK(oracle_longest_cycle(blowup(3, 2)) == 6);
  CHECK(oracle_longest_cycle(path3()) == 0);
  CHECK(oracle_longest_cycle(complete4()) == 4);
}

TEST_CASE("blowups have a Hamiltonian winding") {
  for (auto [k, t] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {4, 3},
                                                      {6, 2}, {8, 2}, {5, 3}}) {
    Digraph b = blowup(k, t);
    REQUIRE(b.vertex_count() <= 16);
    CHECK(oracle_longest_path_from(b, 0) == k * t - 1);
    CHECK(oracle_longest_cycle(b) == k * t);
  }
}

TEST_CASE("oracle_max_density_eulerian_subgraph on fixtures") {
  auto dk4 = oracle_max_density_eulerian_subgraph(complete4());
  CHECK(dk4.density == doctest::Approx(4.0));  // the whole graph wins
  CHECK(dk4.subgraph.edge_count() == 12);

  auto t3 = oracle_max_density_eulerian_subgraph(triangle());
  CHECK(t3.density == doctest::Approx(1.5));

  // bowtie ties at 1.5; the lexicographically smaller support wins
  auto bt = oracle_max_density_eulerian_subgraph(bowtie());
  CHECK(bt.density == doctest::Approx(1.5));
  CHECK(bt.subgraph.edge_list() ==
        std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 0}});
}

TEST_CASE("eulerian edge subset enumeration is exact on the bowtie") {
  // bowtie Eulerian subsets: each triangle alone plus the whole graph
  int count = 0;
  for_each_eulerian_edge_subset(bowtie(), 100,
                                [&](std::uint64_t) { ++count; });
  CHECK(count == 3);
}

TEST_CASE("experiment config parsing") {
  std::istringstream in(
      "generators = blowup(4,2), cycle(10), random_cycle_union(12,6,5)\n"
      "seeds = 0..2, 7\n"
      "c = 0.02\n"
      "oracle = auto\n"
      "oracle_cap = 12\n"
      "clock = none\n");
  ExperimentConfig cfg = ExperimentConfig::from_stream(in);
  CHECK(cfg.generators.size() == 3);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{0, 1, 2, 7});
  CHECK(cfg.pipeline.c == doctest::Approx(0.02));
  CHECK_FALSE(cfg.real_clock);

  std::istringstream bad("seeds = 1\n");
  CHECK_THROWS_AS(ExperimentConfig::from_stream(bad), Error);
}

TEST_CASE("experiment grid produces bounded records") {
  std::istringstream in(
      "generators = blowup(4,2), blowup(4,3), blowup(6,2), cycle(5), cycle(10)\n"
      "seeds = 0..4\n"
      "clock = none\n");
  ExperimentConfig cfg = ExperimentConfig::from_stream(in);
  auto records = run_experiment(cfg);
  REQUIRE(records.size() == 25);
  for (const auto& r : records) {
    CHECK(r.achieved_length >= 1);
    CHECK(r.achieved_length <= r.n - 1);
    if (r.oracle_length) CHECK(r.achieved_length <= *r.oracle_length);
    if (r.generator == "cycle") CHECK(r.achieved_length == r.n - 1);
  }
}

TEST_CASE("experiment CSV is byte-identical across runs") {
  std::string cfg_text =
      "generators = random_cycle_union(12,6,5), blowup(4,2)\n"
      "seeds = 0..3\n"
      "clock = none\n";
  std::istringstream in1(cfg_text), in2(cfg_text);
  std::string csv1 = experiment_csv(run_experiment(ExperimentConfig::from_stream(in1)));
  std::string csv2 = experiment_csv(run_experiment(ExperimentConfig::from_stream(in2)));
  CHECK(csv1 == csv2);
  CHECK(csv1.rfind("generator,params,seed,n,m,d_measured,phi_d,achieved,"
                   "certified,oracle,runtime_ms\n",
                   0) == 0);
}

TEST_CASE("oracle sandwich holds on random experiment rows") {
  std::istringstream in(
      "generators = random_cycle_union(12,6,5)\n"
      "seeds = 0..19\n"
      "oracle = auto\n"
      "clock = none\n");
  auto records = run_experiment(ExperimentConfig::from_stream(in));
  for (const auto& r : records) {
    REQUIRE(r.oracle_length.has_value());
    CHECK(r.achieved_length <= *r.oracle_length);
    if (r.certified && r.phi_d >= 1.0)
      CHECK(r.achieved_length >= static_cast<int>(std::ceil(r.phi_d)));
  }
}

TEST_CASE("svg plot emission") {
  std::istringstream in(
      "generators = cycle(5), cycle(10), blowup(4,2)\n"
      "seeds = 0\n"
      "clock = none\n");
  std::string csv = experiment_csv(run_experiment(ExperimentConfig::from_stream(in)));
  std::ostringstream svg;
  write_experiment_svg(csv, svg);
  CHECK(svg.str().find("<svg") != std::string::npos);
  CHECK(svg.str().find("<polyline") != std::string::npos);
  CHECK(svg.str().find("<circle") != std::string::npos);
}
