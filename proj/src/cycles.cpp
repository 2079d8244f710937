#include "eulerpath/cycles.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <ostream>

namespace eulerpath {

namespace {

void require_eulerian(const Digraph& g, const char* who) {
  if (!is_eulerian(g)) throw Error(ErrorKind::NotEulerian, who);
}

void require_decomposes(const Digraph& g, const CycleDecomposition& d) {
  if (!d.host.same_graph(g))
    throw Error(ErrorKind::DecompositionMismatch,
                "decomposition was built for a different graph");
}

std::vector<char> cycle_edge_mask(const Digraph& g,
                                  const std::vector<std::vector<int>>& cycles) {
  std::vector<char> mask(g.store_edge_count(), 0);
  for (const auto& c : cycles)
    for (size_t i = 0; i < c.size(); ++i) {
      int e = g.edge_id(c[i], c[(i + 1) % c.size()]);
      if (e < 0)
        throw Error(ErrorKind::DecompositionMismatch, "cycle edge not in graph");
      mask[e] = 1;
    }
  return mask;
}

}  // namespace

CycleDecomposition decompose_into_cycles(const Digraph& g) {
  require_eulerian(g, "decompose_into_cycles");
  CycleDecomposition dec;
  dec.host = g;

  const int m = g.store_edge_count();
  std::vector<char> used(m, 0);
  // cursor[v]: next candidate out-edge id of v (ids are (tail, head)-sorted,
  // so advancing the cursor always takes the lowest unused successor)
  std::vector<int> cursor(g.vertex_count(), 0);
  std::vector<int> out_start(g.vertex_count() + 1, 0);
  for (int e = 0; e < m; ++e) out_start[g.edge_tail(e) + 1]++;
  for (int v = 0; v < g.vertex_count(); ++v) {
    out_start[v + 1] += out_start[v];
  }
  for (int v = 0; v < g.vertex_count(); ++v) cursor[v] = out_start[v];

  auto next_edge = [&](int v) -> int {
    int& c = cursor[v];
    while (c < out_start[v + 1] && (used[c] || !g.edge_alive(c))) ++c;
    return c < out_start[v + 1] ? c : -1;
  };

  std::vector<int> walk;
  std::vector<int> pos_on_walk(g.vertex_count(), -1);
  for (int start = 0; start < g.vertex_count(); ++start) {
    if (!g.vertex_alive(start)) continue;
    if (next_edge(start) < 0) continue;
    walk.assign(1, start);
    pos_on_walk[start] = 0;
    while (!walk.empty()) {
      int v = walk.back();
      int e = next_edge(v);
      if (e < 0) {
        // in an Eulerian graph a walk can only get stuck at its root with
        // all its edges consumed
        pos_on_walk[v] = -1;
        walk.pop_back();
        assert(walk.empty());
        break;
      }
      used[e] = 1;
      int w = g.edge_head(e);
      int p = pos_on_walk[w];
      if (p >= 0) {
        std::vector<int> cyc(walk.begin() + p, walk.end());
        for (size_t i = p + 1; i < walk.size(); ++i) pos_on_walk[walk[i]] = -1;
        walk.resize(p + 1);
        dec.cycles.push_back(std::move(cyc));
      } else {
        pos_on_walk[w] = static_cast<int>(walk.size());
        walk.push_back(w);
      }
    }
  }
  return dec;
}

Digraph remove_cycles_through(const Digraph& g, const CycleDecomposition& d,
                              const std::vector<int>& s, bool drop_vertices) {
  require_decomposes(g, d);
  std::vector<char> hit(g.vertex_count(), 0);
  for (int v : s)
    if (v >= 0 && v < g.vertex_count()) hit[v] = 1;

  std::vector<std::vector<int>> doomed;
  for (const auto& c : d.cycles)
    if (std::any_of(c.begin(), c.end(), [&](int v) { return hit[v]; }))
      doomed.push_back(c);

  Digraph out = g.with_edges_removed(cycle_edge_mask(g, doomed));
  if (drop_vertices) out = out.without_vertices(s);
  return out;
}

std::vector<int> min_outdegree_cycle(const Digraph& g) {
  int start = -1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!g.vertex_alive(v)) continue;
    if (g.out_degree(v) == 0)
      throw Error(ErrorKind::NoOutEdge, std::to_string(v));
    if (start < 0) start = v;
  }
  if (start < 0) throw Error(ErrorKind::NoOutEdge, "empty graph");

  std::vector<int> pos(g.vertex_count(), -1);
  std::vector<int> walk{start};
  pos[start] = 0;
  for (;;) {
    int v = walk.back();
    int next = -1, earliest = -1, earliest_pos = -1;
    g.for_each_out(v, [&](int w) {
      if (pos[w] < 0) {
        if (next < 0) next = w;
      } else if (earliest_pos < 0 || pos[w] < earliest_pos) {
        earliest_pos = pos[w];
        earliest = w;
      }
    });
    if (next >= 0) {
      pos[next] = static_cast<int>(walk.size());
      walk.push_back(next);
      continue;
    }
    // all successors are on the walk; closing to the earliest one yields a
    // cycle containing every out-neighbor of v
    assert(earliest >= 0);
    return std::vector<int>(walk.begin() + earliest_pos, walk.end());
  }
}

namespace {

// Lowest cycle of length exactly len whose minimum vertex is start;
// depth-first with ascending successors. Returns vertices or empty.
bool bounded_cycle_from(const Digraph& g, int start, int len,
                        std::vector<int>& out) {
  std::vector<int> path{start};
  std::vector<char> on_path(g.vertex_count(), 0);
  on_path[start] = 1;

  // iterative DFS over neighbor vectors
  struct Frame {
    std::vector<int> nbrs;
    size_t next = 0;
  };
  std::vector<Frame> frames;
  frames.push_back({g.out_neighbors(start), 0});
  while (!frames.empty()) {
    Frame& fr = frames.back();
    int depth = static_cast<int>(path.size());
    bool advanced = false;
    while (fr.next < fr.nbrs.size()) {
      int w = fr.nbrs[fr.next++];
      if (depth == len) {
        if (w == start) {
          out = path;
          return true;
        }
        continue;
      }
      if (w <= start || on_path[w]) continue;
      path.push_back(w);
      on_path[w] = 1;
      frames.push_back({g.out_neighbors(w), 0});
      advanced = true;
      break;
    }
    if (!advanced) {
      frames.pop_back();
      on_path[path.back()] = 0;
      path.pop_back();
    }
  }
  return false;
}

bool find_short_cycle(const Digraph& g, int max_len, std::vector<int>& out) {
  for (int len = 2; len <= max_len; ++len)
    for (int s = 0; s < g.vertex_count(); ++s) {
      if (!g.vertex_alive(s) || g.out_degree(s) == 0 || g.in_degree(s) == 0)
        continue;
      if (bounded_cycle_from(g, s, len, out)) return true;
    }
  return false;
}

}  // namespace

SieveResult short_cycle_sieve(const Digraph& g, int max_len) {
  require_eulerian(g, "short_cycle_sieve");
  SieveResult res;
  Digraph rest = g;
  std::vector<int> cyc;
  while (max_len >= 2 && find_short_cycle(rest, max_len, cyc)) {
    rest = rest.with_edges_removed(cycle_edge_mask(rest, {cyc}));
    res.removed_cycles.push_back(cyc);
  }
  res.long_part = rest;
  res.short_part = g.restricted_to_edges(
      [&] {
        std::vector<char> keep(g.store_edge_count(), 0);
        auto mask = cycle_edge_mask(g, res.removed_cycles);
        for (int e = 0; e < g.store_edge_count(); ++e) keep[e] = mask[e];
        return keep;
      }());
  return res;
}

Digraph peel_low_degree(const Digraph& g, const CycleDecomposition& d,
                        double theta) {
  require_decomposes(g, d);
  // cycles through each vertex, so a deletion can cascade cheaply
  std::vector<std::vector<int>> cycles_at(g.vertex_count());
  std::vector<char> cycle_gone(d.cycles.size(), 0);
  for (size_t ci = 0; ci < d.cycles.size(); ++ci)
    for (int v : d.cycles[ci]) cycles_at[v].push_back(static_cast<int>(ci));

  std::vector<int> deg(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) deg[v] = g.out_degree(v);
  std::vector<char> dead(g.vertex_count(), 0);
  for (int v = 0; v < g.vertex_count(); ++v) dead[v] = !g.vertex_alive(v);

  std::vector<int> doomed_vertices;
  std::vector<std::vector<int>> doomed_cycles;
  for (;;) {
    int victim = -1;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (!dead[v] && deg[v] > 0 && static_cast<double>(deg[v]) < theta) {
        victim = v;
        break;
      }
    if (victim < 0) break;
    dead[victim] = 1;
    doomed_vertices.push_back(victim);
    for (int ci : cycles_at[victim]) {
      if (cycle_gone[ci]) continue;
      cycle_gone[ci] = 1;
      doomed_cycles.push_back(d.cycles[ci]);
      for (size_t i = 0; i < d.cycles[ci].size(); ++i) deg[d.cycles[ci][i]]--;
    }
  }

  Digraph out = g.with_edges_removed(cycle_edge_mask(g, doomed_cycles));
  return out.without_vertices(doomed_vertices);
}

std::vector<int> long_cycle_bounded_degree(const Digraph& g, double d, Rng& rng,
                                           int max_resamples, double d_min,
                                           LongCycleDiag* diag) {
  require_eulerian(g, "long_cycle_bounded_degree");
  if (d < d_min)
    throw Error(ErrorKind::PreconditionViolated,
                "d below configured floor " + std::to_string(d_min));
  if (g.average_degree() < d)
    throw Error(ErrorKind::PreconditionViolated, "average degree below d");
  double max_deg = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.vertex_alive(v)) max_deg = std::max(max_deg, (double)g.out_degree(v));
  if (max_deg > std::pow(d, 20.0))
    throw Error(ErrorKind::PreconditionViolated, "maximum degree above d^20");

  LongCycleDiag local;
  LongCycleDiag& dg = diag ? *diag : local;

  const int short_len = static_cast<int>(std::floor(std::cbrt(d)));
  SieveResult sieve = short_cycle_sieve(g, short_len);
  const double half = g.live_vertex_count() * d / 2.0;

  auto case1 = [&]() -> std::vector<int> {
    dg.fell_back = dg.case_used == 2;
    dg.case_used = dg.case_used == 0 ? 1 : dg.case_used;
    Digraph g1 = sieve.short_part;
    CycleDecomposition dec{sieve.removed_cycles, g1};
    Digraph core = peel_low_degree(g1, dec, std::pow(d, 2.0 / 3.0) / 4.0);
    core = core.without_isolated();
    if (core.edge_count() > 0) return min_outdegree_cycle(core);
    // peel emptied out at this scale; any cycle of the host still works
    Digraph fallback = g.without_isolated();
    if (fallback.edge_count() == 0)
      throw Error(ErrorKind::ResampleBudgetExhausted, "no cycle available");
    return min_outdegree_cycle(fallback);
  };

  if (static_cast<double>(sieve.short_part.edge_count()) >= half) return case1();

  // case 2: the short-cycle-free side is the heavy one
  dg.case_used = 2;
  Digraph g2 = sieve.long_part;
  CycleDecomposition dec2 = decompose_into_cycles(g2);
  Digraph h = peel_low_degree(g2, dec2, std::cbrt(d) / 4.0).without_isolated();
  if (h.edge_count() == 0) return case1();

  const double ln_d = std::log(d);
  long t = 1;
  if (ln_d > 0) t = std::max<long>(1, (long)std::floor(std::cbrt(d) / (200.0 * ln_d)));
  dg.classes = static_cast<int>(t);

  int min_out = g.vertex_count();
  std::vector<int> live = h.live_vertices();
  for (int v : live) min_out = std::min(min_out, h.out_degree(v));
  std::vector<int> klass(h.vertex_count(), -1);
  bool ok = false;
  if (min_out >= t) {  // with fewer out-neighbors than classes no sample works
    for (int round = 0; round < std::max(1, max_resamples); ++round) {
      for (int v : live) klass[v] = static_cast<int>(rng.below(t));
      dg.resamples = round + 1;
      ok = true;
      for (int v : live) {
        std::vector<char> seen(t, 0);
        int remaining = static_cast<int>(t);
        h.for_each_out(v, [&](int w) {
          if (!seen[klass[w]]) {
            seen[klass[w]] = 1;
            --remaining;
          }
        });
        if (remaining > 0) {
          ok = false;
          break;
        }
      }
      if (ok) break;
    }
  }
  if (!ok) return case1();

  // recursive walk: stay inside the current class until the run is long
  // enough, then hop to the next class; the first vertex repeat closes
  const long run_cap = std::max<long>(1, (long)std::floor(std::cbrt(d)));
  int start = -1;
  for (int v : live)
    if (klass[v] == 0) {
      start = v;
      break;
    }
  if (start < 0) return case1();

  std::vector<long long> seen_at(h.vertex_count(), -1);
  std::vector<int> seq{start};
  seen_at[start] = 0;
  int cur_class = 0;
  long run = 1;
  for (;;) {
    int v = seq.back();
    int target = cur_class;
    if (run >= run_cap + 1) target = static_cast<int>((cur_class + 1) % t);
    int next = -1;
    h.for_each_out(v, [&](int w) {
      if (next < 0 && klass[w] == target) next = w;
    });
    if (next < 0) return case1();  // resample check should prevent this
    if (target == cur_class) {
      ++run;
    } else {
      cur_class = target;
      run = 1;
    }
    if (seen_at[next] >= 0) {
      dg.repeat_a = seen_at[next];
      dg.repeat_b = static_cast<long long>(seq.size());
      return std::vector<int>(seq.begin() + seen_at[next], seq.end());
    }
    seen_at[next] = static_cast<long long>(seq.size());
    seq.push_back(next);
  }
}

void write_cycles(const std::vector<std::vector<int>>& cycles, std::ostream& out) {
  for (const auto& c : cycles) {
    for (size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    out << '\n';
  }
}

}  // namespace eulerpath
