#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "brute.hpp"
#include "common.hpp"
#include "doctest.h"
#include "eulerpath/digraph.hpp"

using namespace eulerpath;
using namespace testgraphs;

TEST_CASE("from_edges builds both adjacency directions") {
  Digraph g = triangle();
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.out_neighbors(0) == std::vector<int>{1});
  CHECK(g.in_neighbors(0) == std::vector<int>{2});
  CHECK(g.has_edge(0, 1));
  CHECK_FALSE(g.has_edge(1, 0));
}

TEST_CASE("from_edges permits antiparallel pairs") {
  Digraph g = digon();
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
}

TEST_CASE("from_edges rejects invalid input") {
  try {
    Digraph::from_edges(2, {{0, 0}});
    FAIL("expected LoopEdge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LoopEdge);
  }
  try {
    Digraph::from_edges(3, {{0, 1}, {0, 1}});
    FAIL("expected DuplicateEdge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateEdge);
  }
  try {
    Digraph::from_edges(2, {{0, 5}});
    FAIL("expected VertexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::VertexOutOfRange);
  }
}

TEST_CASE("edge list round-trip is the identity") {
  std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}};
  Digraph g = Digraph::from_edges(5, edges);
  auto out = g.edge_list();
  std::sort(edges.begin(), edges.end());
  CHECK(out == edges);

  std::ostringstream text;
  write_edge_list(g, text);
  std::istringstream back(text.str());
  Digraph h = read_edge_list(back);
  CHECK(h.edge_list() == edges);
}

TEST_CASE("edge list format accepts comments and rejects junk") {
  std::istringstream good("# comment\n3 3\n0 1\n# mid comment\n1 2\n2 0\n");
  Digraph g = read_edge_list(good);
  CHECK(g.edge_count() == 3);

  std::istringstream bad("3 2\n0 1\n");
  CHECK_THROWS_AS(read_edge_list(bad), Error);
}

TEST_CASE("is_eulerian checks balance only, not connectivity") {
  CHECK(is_eulerian(triangle()));
  CHECK_FALSE(is_eulerian(path3()));
  Digraph two = Digraph::from_edges(
      6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  CHECK(is_eulerian(two));
  CHECK_FALSE(is_connected_underlying(two));
}

TEST_CASE("sccs on small fixtures") {
  auto part = sccs(triangle());
  CHECK(part.components.size() == 1);
  CHECK(part.components[0] == std::vector<int>{0, 1, 2});
  CHECK(part.condensation_edges.empty());

  part = sccs(path3());
  CHECK(part.components.size() == 3);
  CHECK(part.condensation_edges ==
        std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  // topological order: sources first
  CHECK(part.components[0] == std::vector<int>{0});
  CHECK(part.components[2] == std::vector<int>{2});

  Digraph bridged = Digraph::from_edges(
      6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
  part = sccs(bridged);
  CHECK(part.components.size() == 2);
  CHECK(part.condensation_edges.size() == 1);
}

TEST_CASE("condensation is acyclic on random graphs") {
  for (int seed = 0; seed < 50; ++seed) {
    Digraph g = random_cycle_union(8, 3, 4, seed);
    auto part = sccs(g);
    for (auto [a, b] : part.condensation_edges) CHECK(a < b);  // topo order
  }
}

TEST_CASE("sccs agree with brute-force reachability on small Eulerian graphs") {
  for (int seed = 0; seed < 200; ++seed) {
    Digraph g = random_cycle_union(4 + seed % 5, 1 + seed % 4, 4, seed);
    REQUIRE(is_eulerian(g));
    auto expected = brute::scc_classes(g);
    auto got = sccs(g).components;
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    CHECK(got == expected);
    CHECK(is_strongly_connected(g) == brute::strongly_connected(g));
  }
}

TEST_CASE("Eulerian graphs: strongly connected iff underlying connected") {
  for (int seed = 0; seed < 100; ++seed) {
    Digraph g = random_cycle_union(10, 2 + seed % 5, 5, seed);
    CHECK(is_strongly_connected(g.without_isolated()) ==
          is_connected_underlying(g.without_isolated()));
  }
  CHECK(is_strongly_connected(bowtie()));
}

TEST_CASE("path_to_set meets the target set only at its last vertex") {
  PathWitness w = path_to_set(triangle(), 0, {2});
  CHECK(w.vertices == std::vector<int>{0, 1, 2});

  w = path_to_set(triangle(), 0, {0});
  CHECK(w.vertices == std::vector<int>{0});
  CHECK(w.length() == 0);

  try {
    path_to_set(path3(), 2, {0});
    FAIL("expected Unreachable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unreachable);
  }
}

TEST_CASE("path_to_set returns a shortest path") {
  // 0->1->3 and 0->2->...->3: BFS must take the two-edge route
  Digraph g = Digraph::from_edges(5, {{0, 1}, {1, 3}, {0, 2}, {2, 4}, {4, 3}});
  PathWitness w = path_to_set(g, 0, {3});
  CHECK(w.vertices == std::vector<int>{0, 1, 3});
}

TEST_CASE("check_path accepts exactly simple directed paths") {
  Digraph g = triangle();
  CHECK(check_path(g, {0, 1, 2}));
  CHECK_FALSE(check_path(g, {0, 1, 2, 0}));
  CHECK_FALSE(check_path(g, {0, 2}));
  CHECK(check_path(g, {1}));
  CHECK_FALSE(check_path(g, {}));
  Digraph masked = g.without_vertices({1});
  CHECK_FALSE(check_path(masked, {0, 1}));
}

TEST_CASE("subgraph views mask without renumbering") {
  Digraph g = bowtie();
  Digraph h = g.without_vertices({1});
  CHECK(h.vertex_count() == 5);
  CHECK(h.live_vertex_count() == 4);
  CHECK(h.edge_count() == 4);  // only the edges at vertex 1 die
  CHECK(h.has_edge(3, 4));
  CHECK(h.has_edge(2, 0));
  CHECK_FALSE(h.has_edge(0, 1));
  CHECK(g.edge_count() == 6);  // the parent view is untouched

  Digraph ind = g.induced({0, 3, 4});
  CHECK(ind.edge_list() ==
        std::vector<std::pair<int, int>>{{0, 3}, {3, 4}, {4, 0}});
  CHECK_FALSE(ind.same_graph(h));  // vertex 2 still lives in h

  Digraph t = g.transposed();
  CHECK(t.has_edge(1, 0));
  CHECK_FALSE(t.has_edge(0, 1));
  CHECK(t.edge_count() == 6);
}

TEST_CASE("underlying components are sorted and complete") {
  Digraph two = Digraph::from_edges(
      7, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  auto comps = underlying_components(two);
  REQUIRE(comps.size() == 3);  // vertex 6 is isolated but live
  CHECK(comps[0] == std::vector<int>{0, 1, 2});
  CHECK(comps[1] == std::vector<int>{3, 4, 5});
  CHECK(comps[2] == std::vector<int>{6});
}
