#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eulerpath/density.hpp"
#include "eulerpath/digraph.hpp"
#include "eulerpath/good_path.hpp"
#include "eulerpath/rng.hpp"

namespace eulerpath {

struct StitchKnobs {
  std::optional<double> window;           // chord window, default gamma^9
  std::optional<double> crucial_bound;    // default p / (2*gamma^2)
  std::optional<double> rewire_threshold; // default 7*gamma^11
  std::optional<double> strip_len;        // default d^(1/2)*gamma
  std::optional<double> strip_meet;       // default gamma^2
  std::optional<double> spacing;          // detour index spacing, default gamma^9
  std::optional<double> detour_cap;       // default gamma^2
  long long strip_node_budget = 2000000;
};

// The retained heavy vertices of a path: non-crucial and provided with a
// chord y_j -> y_j'^+ inside the window, so each of them can be bypassed.
struct DetourSet {
  std::vector<int> y;          // heavy vertices in path order
  std::vector<long long> y_pos;  // position of y[i] on the path
  std::vector<char> crucial;
  std::vector<char> in_y_prime;
  // chord[i] = (j, j') witnessing y[j] -> successor-of-y[j'], 0-based
  std::vector<std::optional<std::pair<long long, long long>>> chord;
  std::vector<long long> gaps;  // t_0..t_ell, segment lengths; sums to p
  long long p = 0;

  std::vector<int> y_prime() const;
  int index_of(int vertex) const;  // index in y, or -1
};

DetourSet build_detour_set(const Digraph& g, const PathWitness& p,
                           const std::vector<int>& y, const BoundParams& params,
                           const StitchKnobs& knobs = {});

// Modified copy of p that skips every vertex of s via its chord. Without z,
// endpoints are preserved and the result keeps length >= p/2 when the source
// path was certified; with z the result is the prefix ending at z.
PathWitness reroute_avoiding(const Digraph& g, const PathWitness& p,
                             const DetourSet& d, const std::vector<int>& s,
                             std::optional<int> z, const BoundParams& params,
                             const StitchKnobs& knobs = {});

struct StripDiag {
  long long removed_paths = 0;
  long long removed_edges = 0;
  bool budget_exhausted = false;
};

// Removes problematic paths (short, but meeting V(P) in more than gamma^2
// vertices) until none remains within the search budget. Off-path vertices
// keep in-degree == out-degree.
Digraph strip_problematic(const Digraph& g, const PathWitness& p,
                          const BoundParams& params,
                          const StitchKnobs& knobs = {},
                          StripDiag* diag = nullptr);

struct FakeEdge {
  int u = -1, w = -1;
  std::vector<int> candidates;  // N+(u) & N-(w) & Y' in the stripped graph
  int consumed = -1;            // detour vertex removed at creation
};

struct RewireStep {
  int u = -1, w = -1, y = -1;
  long long edges_before = 0;  // live real + fake edges
  long long edges_after = 0;
  bool balanced_off_path = true;
};

// Digraph carrying fake edges, each standing for a two-edge detour through a
// retained heavy path vertex.
struct RewiredGraph {
  Digraph base;  // the stripped graph the candidates were snapshotted in
  Digraph live;  // current real edges
  std::vector<FakeEdge> fakes;
  std::vector<RewireStep> log;
  std::vector<char> on_path;

  long long edge_count_with_fakes() const {
    return live.edge_count() + static_cast<long long>(fakes.size());
  }
  int fake_index(int u, int w) const;  // -1 when (u,w) is not a fake edge
  bool off_path_balanced() const;
};

// While two off-path vertices share at least rewire_threshold retained heavy
// vertices as a common out/in neighborhood and are not yet joined, add the
// fake edge and delete one real two-edge detour (lowest path index first).
RewiredGraph rewire(const Digraph& h0, const PathWitness& p, const DetourSet& d,
                    const BoundParams& params, const StitchKnobs& knobs = {});

// Eulerian remainder supported away from the path: edges of cycles disjoint
// from V(P). Fresh store (fake edges become ordinary edges); all path
// vertices isolated.
Digraph extract_k(const RewiredGraph& h, const PathWitness& p);

// Replaces every fake edge of r with its two-edge detour, choosing detour
// vertices greedily (lowest feasible index) under the spacing constraint.
// Returns the realized path and the consumed detour vertices.
std::pair<PathWitness, std::vector<int>> realize_fake_edges(
    const PathWitness& r, const RewiredGraph& h, const DetourSet& d,
    const BoundParams& params, const StitchKnobs& knobs = {});

struct TraceLog {
  std::vector<std::string> lines;
  void add(std::string line) { lines.push_back(std::move(line)); }
  void write(std::ostream& out) const;
};

struct LongPathResult {
  PathWitness path;
  bool certified = false;
  double d_used = 0;
  double phi_d = 0;
  std::string branch;
  bool recursion_truncated = false;
};

// Bounded DFS keeping the longest simple path found from v; the total
// fallback every other branch can rely on.
PathWitness greedy_longest_path(const Digraph& g, int v, long long node_budget);

// Splices a walk to the cycle with a full wind around it.
PathWitness wind_cycle_from(const Digraph& g, int v, const std::vector<int>& cycle);

// Top-level construction: extract a d-full core, reach it, then run
// dichotomy / long-cycle / good-path + rewiring branches and return the best
// path found, certified when its length reaches phi(d).
LongPathResult long_path_from(const Digraph& g, int v, const PipelineConfig& cfg,
                              Rng& rng, TraceLog* trace = nullptr);

// Recursive entry point: d is capped at d_cap (induction on the degree
// parameter) and depth limits nesting.
LongPathResult long_path_impl(const Digraph& g, int v, const PipelineConfig& cfg,
                              Rng& rng, int depth, double d_cap,
                              TraceLog* trace);

}  // namespace eulerpath
