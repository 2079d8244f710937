#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eulerpath/density.hpp"
#include "eulerpath/digraph.hpp"
#include "eulerpath/rng.hpp"

namespace eulerpath {

// Every window and threshold of the good-path machinery defaults to its
// gamma-derived value; tests override them to exercise the logic at scales
// where gamma is close to 1 and the defaults degenerate.
struct GoodPathKnobs {
  std::optional<double> heavy_threshold;  // default gamma^-2 * n
  std::optional<double> window;           // default gamma^9
  std::optional<double> quota;            // default 4 * gamma^4.5
  std::optional<double> overlap;          // default gamma^-4 * n / 100
  std::optional<double> slack;            // default gamma^7
  std::optional<long long> bad_pair_cap;  // skip bad-pair scan above this p
};

struct GoodPathReport {
  PathWitness path;
  std::vector<int> heavy;  // Y, in order of appearance on the path
  bool property1 = false;  // length >= floor(d^(1/2) * gamma^-5)
  bool property2 = false;  // graph minus all-but-last path vertices strongly connected
  long long property3_violations = 0;
  long long dangerous_count = 0;
  std::vector<std::pair<long long, long long>> bad_pairs;
  bool certified = false;
  double p_target = 0;

  std::string to_kv() const;  // flat key-value block for the harness
};

// One random growth attempt: each step uniform over out-neighbors not yet on
// the path. Throws DeadEnd when the walk cannot be extended to length p.
PathWitness grow_random_path_attempt(const Digraph& g, int v, long long p, Rng& rng);

// Retries attempts until one reaches length p; TargetUnreachable when p
// exceeds what the graph allows or the retry budget runs out.
PathWitness grow_random_path(const Digraph& g, int v, long long p, Rng& rng,
                             int max_retries = 64);

// Path vertices with degree >= gamma^-2 * n, in path order.
std::vector<int> heavy_vertices(const Digraph& g, const PathWitness& p,
                                const BoundParams& params,
                                const GoodPathKnobs& knobs = {});

// y_i is dangerous when no nearby predecessor index a has enough
// high-overlap successors b inside the window after i.
std::vector<int> dangerous_vertices(const Digraph& g, const PathWitness& p,
                                    const std::vector<int>& y,
                                    const BoundParams& params,
                                    const GoodPathKnobs& knobs = {});

GoodPathReport verify_good_path(const Digraph& g, const PathWitness& p,
                                const BoundParams& params,
                                const GoodPathKnobs& knobs = {});

// Grows random paths from v and returns the first report satisfying
// properties 1-3 (violations within the slack); extends an attempt while
// certification fails and extension is possible. Budget exhaustion returns
// the best-scoring attempt with certified=false.
GoodPathReport find_good_path(const Digraph& g, int v, const BoundParams& params,
                              Rng& rng, int max_retries = 64,
                              const GoodPathKnobs& knobs = {});

}  // namespace eulerpath
