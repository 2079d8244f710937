#pragma once

#include <cmath>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eulerpath/cycles.hpp"
#include "eulerpath/digraph.hpp"
#include "eulerpath/rng.hpp"

namespace eulerpath {

// Parameters of the guarantee curve phi(d) = c * d^(1/2 + eps), with
// gamma = d^eps scaling every window and threshold derived from it.
struct BoundParams {
  double c = 0.01;
  double eps = 1.0 / 40.0;
  double d = 1.0;

  double gamma() const { return std::pow(d, eps); }
  void validate() const;
};

double phi(const BoundParams& params);

// Executable regression of the bound's smoothness:
// phi(d - lambda*d^(1/2)/gamma) >= phi(d) - 2*c*lambda for the admissible
// lambda range, evaluated in double precision with a 1e-12 guard band.
bool check_phi_inequality(const BoundParams& params, double lambda);

// Runtime configuration shared by the whole pipeline. File format is
// line-oriented key=value; '#' starts a comment. Recognized keys:
//   c, eps, ln_base (must be "e"), dichotomy_recursion_limit,
//   dfull_budget, good_path_retries, resample_budget,
//   greedy_node_budget, strip_node_budget
struct PipelineConfig {
  double c = 0.01;
  double eps = 1.0 / 40.0;
  int dichotomy_recursion_limit = 12;
  int dfull_budget = 12;
  int good_path_retries = 64;
  int resample_budget = 200;
  long long greedy_node_budget = 200000;
  long long strip_node_budget = 2000000;

  BoundParams bound_params(double d) const { return BoundParams{c, eps, d}; }
  static PipelineConfig from_stream(std::istream& in);
  static PipelineConfig from_file(const std::string& path);
};

// Bounded search for a proper Eulerian subgraph H with at least two
// support vertices and e(H) >= (|V(H)|-1)*d. Looks at connected components
// of the graph and of each single-vertex cycle-removed variant, then at
// unions of decomposition cycles when the decomposition has at most
// `budget` cycles. Returns the first witness in that fixed order.
std::optional<Digraph> find_dense_eulerian_subgraph(const Digraph& g, double d,
                                                    int budget);

// Iterates find_dense_eulerian_subgraph until no witness remains; the result
// is d-full relative to the bounded search (exactly d-full on graphs whose
// decomposition fits the subset budget).
Digraph extract_d_full(const Digraph& g, double d, int budget);

// Path from v to B built through nested cycle-removed component layers;
// every layer crossed adds at least one edge. With from_set_to_v the same
// construction runs on the transpose, yielding a path that starts in B and
// ends at v. The output meets B only at its end (the walk is cut at the
// first B-vertex it touches).
PathWitness layered_peel_path(const Digraph& g, int v, const std::vector<int>& b,
                              double d_cap, double t_cap,
                              bool from_set_to_v = false);

// Lower bound the construction aims for: ceil((k - (1-beta)*d_cap)/t_cap) - 1
// where k is the measured average degree and beta = |B|/n. Negative values
// mean the guarantee is vacuous at this scale.
double layered_peel_bound(const Digraph& g, size_t b_size, double d_cap,
                          double t_cap);

struct Dichotomy {
  enum class Outcome { Certified, Path };
  Outcome outcome = Outcome::Certified;
  PathWitness path;
  std::string diagnostics;
};

// Raised when a component found during the dichotomy refutes the caller's
// claim that g is d-full; carries the witness component.
class NotDFullError : public Error {
 public:
  explicit NotDFullError(std::vector<int> comp)
      : Error(ErrorKind::NotDFull,
              "dense proper Eulerian subgraph on " +
                  std::to_string(comp.size()) + " vertices"),
        component(std::move(comp)) {}
  std::vector<int> component;
};

// Either certifies that g - s is strongly connected, or constructs a path
// from v out of the failure: cycle decomposition surgery, sink/source
// component selection, a layered-peel path through the out-neighbor-rich
// component, a shortest connector, and a recursive long path in the dense
// component. `depth` limits the recursion (-1 means use the config limit).
Dichotomy connectivity_or_longpath(const Digraph& g, int v,
                                   const std::vector<int>& s,
                                   const BoundParams& params, Rng& rng,
                                   const PipelineConfig& cfg = {},
                                   int depth = -1);

}  // namespace eulerpath
