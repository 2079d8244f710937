#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eulerpath/digraph.hpp"
#include "eulerpath/rng.hpp"
#include "eulerpath/stitcher.hpp"

namespace eulerpath {

// cycle(n) | blowup(k,t) | complete(n) | shared_vertex_triangles(count) |
// random_cycle_union(n,cycles,max_len[,seed])
struct GeneratorSpec {
  enum class Kind { Cycle, Blowup, Complete, SharedVertexTriangles, RandomCycleUnion };
  Kind kind = Kind::Cycle;
  int n = 0, k = 0, t = 0, count = 0, cycles = 0, max_len = 0;
  std::uint64_t seed = 0;
  bool has_seed = false;

  std::string to_string() const;
  std::string params_string() const;
  static GeneratorSpec parse(const std::string& text);
};

// Every generator output is Eulerian by construction.
Digraph generate(const GeneratorSpec& spec, std::uint64_t seed_override,
                 bool use_override);
inline Digraph generate(const GeneratorSpec& spec) {
  return generate(spec, 0, false);
}

// Exact longest simple path from v (edge count), exhaustive over vertex
// subsets. TooLarge above the cap.
int oracle_longest_path_from(const Digraph& g, int v, int cap = 16);

// Exact longest simple directed cycle length; 0 when acyclic.
int oracle_longest_cycle(const Digraph& g, int cap = 16);

// All simple directed cycles as edge-id bitmasks (lowest-vertex canonical
// enumeration). TooLarge when more than max_cycles exist or the graph has
// more than 64 store edges.
std::vector<std::uint64_t> enumerate_simple_cycles(const Digraph& g,
                                                   std::size_t max_cycles);

// Visits every nonempty Eulerian edge subset exactly once as an edge-id
// bitmask (unions of simple cycles filtered by per-vertex balance).
void for_each_eulerian_edge_subset(const Digraph& g, std::size_t max_cycles,
                                   const std::function<void(std::uint64_t)>& fn);

struct DensityOracleResult {
  Digraph subgraph;
  double density = 0;  // e(H) / (|V(H)| - 1)
};

// Eulerian subgraph on >= 2 vertices maximizing e(H)/(|V(H)|-1); ties go to
// the lexicographically smallest sorted support set.
DensityOracleResult oracle_max_density_eulerian_subgraph(const Digraph& g,
                                                         std::size_t max_cycles = 20);

struct ExperimentRecord {
  std::string generator;
  std::string params;
  std::uint64_t seed = 0;
  int n = 0;
  long long m = 0;
  double d_measured = 0;
  double phi_d = 0;
  int achieved_length = 0;
  bool certified = false;
  std::optional<int> oracle_length;
  long long runtime_ms = 0;
};

// Experiment config: line-oriented key=value. Keys: generators (comma list
// of generator specs), seeds (comma list and/or a..b ranges), c, eps,
// oracle (on|off|auto), oracle_cap, clock (real|none), plus any
// PipelineConfig key.
struct ExperimentConfig {
  std::vector<GeneratorSpec> generators;
  std::vector<std::uint64_t> seeds;
  PipelineConfig pipeline;
  enum class OracleMode { On, Off, Auto } oracle_mode = OracleMode::Auto;
  int oracle_cap = 16;
  bool real_clock = true;

  static ExperimentConfig from_stream(std::istream& in);
  static ExperimentConfig from_file(const std::string& path);
};

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);
std::string experiment_csv(const std::vector<ExperimentRecord>& records);

// Scatter of achieved length vs measured d with the phi(d) curve overlaid,
// written as a standalone SVG.
void write_experiment_svg(const std::string& csv_text, std::ostream& out);

}  // namespace eulerpath
