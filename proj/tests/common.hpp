#pragma once

#include <vector>

#include "eulerpath/digraph.hpp"
#include "eulerpath/lab.hpp"

namespace testgraphs {

using eulerpath::Digraph;

inline Digraph triangle() {
  return Digraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
}

inline Digraph digon() { return Digraph::from_edges(2, {{0, 1}, {1, 0}}); }

// two triangles sharing vertex 0
inline Digraph bowtie() {
  return Digraph::from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
}

inline Digraph complete4() {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v)
      if (u != v) e.emplace_back(u, v);
  return Digraph::from_edges(4, e);
}

inline Digraph path3() { return Digraph::from_edges(3, {{0, 1}, {1, 2}}); }

inline Digraph cycle(int n) {
  return eulerpath::generate(
      eulerpath::GeneratorSpec::parse("cycle(" + std::to_string(n) + ")"));
}

inline Digraph blowup(int k, int t) {
  return eulerpath::generate(eulerpath::GeneratorSpec::parse(
      "blowup(" + std::to_string(k) + "," + std::to_string(t) + ")"));
}

inline Digraph random_cycle_union(int n, int cycles, int max_len,
                                  std::uint64_t seed) {
  eulerpath::GeneratorSpec spec;
  spec.kind = eulerpath::GeneratorSpec::Kind::RandomCycleUnion;
  spec.n = n;
  spec.cycles = cycles;
  spec.max_len = max_len;
  spec.seed = seed;
  spec.has_seed = true;
  return eulerpath::generate(spec);
}

}  // namespace testgraphs
