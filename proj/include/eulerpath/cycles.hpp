#pragma once

#include <iosfwd>
#include <vector>

#include "eulerpath/digraph.hpp"
#include "eulerpath/rng.hpp"

namespace eulerpath {

// Exact partition of an Eulerian digraph's edge set into simple directed
// cycles. Each cycle is a vertex sequence, closed implicitly.
struct CycleDecomposition {
  std::vector<std::vector<int>> cycles;
  Digraph host;
};

// Deterministic cycle peeling: repeatedly walk the lowest unused out-edge
// from the lowest-id vertex that still has one; every vertex repeat closes
// and emits a cycle.
CycleDecomposition decompose_into_cycles(const Digraph& g);

// Keeps exactly the cycles of d that avoid s. With drop_vertices the
// vertices of s are masked as well.
Digraph remove_cycles_through(const Digraph& g, const CycleDecomposition& d,
                              const std::vector<int>& s,
                              bool drop_vertices = false);

// Greedy walk to the lowest-id unvisited successor; when stuck, closes to the
// earliest successor on the walk. The result has length >= min out-degree + 1.
std::vector<int> min_outdegree_cycle(const Digraph& g);

struct SieveResult {
  Digraph short_part;  // union of the removed short cycles
  Digraph long_part;   // remainder; no cycle of length <= the threshold
  std::vector<std::vector<int>> removed_cycles;
};

// Maximal collection of pairwise edge-disjoint cycles of length <= max_len,
// found by iterative-deepening DFS (lowest length, then lowest start, then
// lowest successor), restarted after each removal.
SieveResult short_cycle_sieve(const Digraph& g, int max_len);

// While some vertex has positive degree below theta, delete it together with
// the edges of every cycle of d through it. Output is Eulerian; surviving
// positive degrees are >= theta.
Digraph peel_low_degree(const Digraph& g, const CycleDecomposition& d,
                        double theta);

struct LongCycleDiag {
  int case_used = 0;        // 1 or 2
  long long repeat_a = -1;  // walk indices of the closing repeat (case 2)
  long long repeat_b = -1;
  int resamples = 0;
  int classes = 0;          // t
  bool fell_back = false;
};

// Long-cycle search for Eulerian graphs of bounded maximum degree. Splits
// edges into short cycles vs the short-cycle-free remainder, then either
// peels to a high-minimum-degree core (case 1) or walks a resampled random
// vertex partition (case 2). The positive-probability argument is replaced
// by resampling the partition until every (vertex, class) pair has an
// out-neighbor, at most max_resamples times, then falling back to case 1's
// minimum-degree cycle.
std::vector<int> long_cycle_bounded_degree(const Digraph& g, double d, Rng& rng,
                                           int max_resamples = 200,
                                           double d_min = 1.0,
                                           LongCycleDiag* diag = nullptr);

// One cycle per line, space-separated vertex ids.
void write_cycles(const std::vector<std::vector<int>>& cycles, std::ostream& out);

}  // namespace eulerpath
