#pragma once

// Test-only brute-force oracles. Everything here works from plain adjacency
// queries so the checks stay independent of the library's algorithms.

#include <algorithm>
#include <vector>

#include "eulerpath/digraph.hpp"

namespace brute {

using eulerpath::Digraph;

// Floyd-Warshall style closure over live vertices.
inline std::vector<std::vector<char>> reachability(const Digraph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int v = 0; v < n; ++v) {
    if (!g.vertex_alive(v)) continue;
    reach[v][v] = 1;
    g.for_each_out(v, [&](int w) { reach[v][w] = 1; });
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i][k])
        for (int j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;
  return reach;
}

inline bool strongly_connected(const Digraph& g) {
  auto reach = reachability(g);
  std::vector<int> live = g.live_vertices();
  for (int u : live)
    for (int v : live)
      if (!reach[u][v]) return false;
  return true;
}

// Equivalence classes of mutual reachability, each sorted, ordered by
// minimum vertex.
inline std::vector<std::vector<int>> scc_classes(const Digraph& g) {
  auto reach = reachability(g);
  std::vector<std::vector<int>> classes;
  std::vector<char> placed(g.vertex_count(), 0);
  for (int v : g.live_vertices()) {
    if (placed[v]) continue;
    std::vector<int> cls;
    for (int w : g.live_vertices())
      if (reach[v][w] && reach[w][v]) {
        cls.push_back(w);
        placed[w] = 1;
      }
    classes.push_back(cls);
  }
  return classes;
}

// Exhaustive longest simple path from v, no pruning; keep n tiny.
inline int longest_path_from(const Digraph& g, int v) {
  std::vector<char> on_path(g.vertex_count(), 0);
  int best = 0;
  auto dfs = [&](auto&& self, int u, int len) -> void {
    best = std::max(best, len);
    on_path[u] = 1;
    g.for_each_out(u, [&](int w) {
      if (!on_path[w]) self(self, w, len + 1);
    });
    on_path[u] = 0;
  };
  dfs(dfs, v, 0);
  return best;
}

// True iff some simple directed cycle of length <= max_len exists. len
// counts edges from the start; a start is always the cycle's minimum vertex.
inline bool has_cycle_up_to(const Digraph& g, int max_len) {
  if (max_len < 2) return false;
  std::vector<char> on_path(g.vertex_count(), 0);
  bool found = false;
  auto dfs = [&](auto&& self, int start, int u, int len) -> void {
    if (found) return;
    if (len >= 1 && len + 1 <= max_len && g.has_edge(u, start)) {
      found = true;
      return;
    }
    if (len + 1 >= max_len) return;  // no room to add a vertex and close
    g.for_each_out(u, [&](int w) {
      if (found || w <= start || on_path[w]) return;
      on_path[w] = 1;
      self(self, start, w, len + 1);
      on_path[w] = 0;
    });
  };
  for (int s = 0; s < g.vertex_count() && !found; ++s) {
    if (!g.vertex_alive(s)) continue;
    on_path[s] = 1;
    dfs(dfs, s, s, 0);
    on_path[s] = 0;
  }
  return found;
}

}  // namespace brute
