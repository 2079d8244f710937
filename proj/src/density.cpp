#include "eulerpath/density.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "eulerpath/stitcher.hpp"

namespace eulerpath {

void BoundParams::validate() const {
  if (!(c > 0)) throw Error(ErrorKind::BadParams, "c must be positive");
  if (!(eps > 0 && eps < 0.5))
    throw Error(ErrorKind::BadParams, "eps must lie in (0, 1/2)");
}

double phi(const BoundParams& params) {
  params.validate();
  if (!(params.d > 0)) throw Error(ErrorKind::NonpositiveD, std::to_string(params.d));
  return params.c * std::pow(params.d, 0.5 + params.eps);
}

bool check_phi_inequality(const BoundParams& params, double lambda) {
  params.validate();
  if (!(params.d > 0)) throw Error(ErrorKind::NonpositiveD, std::to_string(params.d));
  const double gamma = params.gamma();
  const double upper = 0.25 * std::sqrt(params.d) * gamma;
  if (lambda < 0 || lambda > upper * (1 + 1e-12))
    throw Error(ErrorKind::LambdaOutOfRange,
                std::to_string(lambda) + " not in [0, " + std::to_string(upper) + "]");
  BoundParams shifted = params;
  shifted.d = params.d - lambda * std::sqrt(params.d) / gamma;
  const double lhs = phi(shifted);
  const double rhs = phi(params) - 2 * params.c * lambda;
  const double guard = 1e-12 * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
  return lhs >= rhs - guard;
}

PipelineConfig PipelineConfig::from_stream(std::istream& in) {
  PipelineConfig cfg;
  std::string line;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ConfigError,
                  "line " + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "c") cfg.c = std::stod(value);
      else if (key == "eps") cfg.eps = std::stod(value);
      else if (key == "ln_base") {
        if (value != "e")
          throw Error(ErrorKind::ConfigError, "ln_base is fixed to e");
      } else if (key == "dichotomy_recursion_limit")
        cfg.dichotomy_recursion_limit = std::stoi(value);
      else if (key == "dfull_budget") cfg.dfull_budget = std::stoi(value);
      else if (key == "good_path_retries") cfg.good_path_retries = std::stoi(value);
      else if (key == "resample_budget") cfg.resample_budget = std::stoi(value);
      else if (key == "greedy_node_budget") cfg.greedy_node_budget = std::stoll(value);
      else if (key == "strip_node_budget") cfg.strip_node_budget = std::stoll(value);
      else
        throw Error(ErrorKind::ConfigError, "unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::ConfigError, "bad value for '" + key + "'");
    }
  }
  return cfg;
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open " + path);
  return from_stream(in);
}

namespace {

double component_edges(const Digraph& g, const std::vector<int>& comp) {
  long long e = 0;
  for (int v : comp) e += g.out_degree(v);  // edges leave the component never
  return static_cast<double>(e);
}

// Candidate check shared by both strategies.
bool dense_witness(const Digraph& host, const Digraph& h, double d) {
  const int supp = h.support_size();
  if (supp < 2) return false;
  if (h.edge_count() >= host.edge_count()) return false;  // proper subgraph
  return static_cast<double>(h.edge_count()) >= (supp - 1) * d;
}

}  // namespace

std::optional<Digraph> find_dense_eulerian_subgraph(const Digraph& g, double d,
                                                    int budget) {
  if (!is_eulerian(g)) throw Error(ErrorKind::NotEulerian, "find_dense_eulerian_subgraph");
  if (g.edge_count() == 0) return std::nullopt;

  CycleDecomposition dec = decompose_into_cycles(g);

  // components of the graph itself and of each single-vertex cycle-removed
  // variant, lowest removed vertex first
  for (int v = -1; v < g.vertex_count(); ++v) {
    Digraph variant = g;
    if (v >= 0) {
      if (!g.vertex_alive(v)) continue;
      variant = remove_cycles_through(g, dec, {v}, true);
    }
    for (const auto& comp : underlying_components(variant)) {
      if (comp.size() < 2) continue;
      Digraph h = variant.induced(comp);
      if (dense_witness(g, h, d)) return h;
    }
  }

  // unions of decomposition cycles, ascending subset mask
  const size_t k = dec.cycles.size();
  if (k >= 1 && k <= static_cast<size_t>(budget) && k < 63) {
    std::vector<std::vector<char>> cycle_mask(k);
    for (size_t i = 0; i < k; ++i) {
      std::vector<char> mask(g.store_edge_count(), 0);
      const auto& c = dec.cycles[i];
      for (size_t j = 0; j < c.size(); ++j)
        mask[g.edge_id(c[j], c[(j + 1) % c.size()])] = 1;
      cycle_mask[i] = std::move(mask);
    }
    const std::uint64_t full = (std::uint64_t{1} << k) - 1;
    for (std::uint64_t sub = 1; sub < full; ++sub) {
      std::vector<char> keep(g.store_edge_count(), 0);
      for (size_t i = 0; i < k; ++i)
        if (sub >> i & 1)
          for (int e = 0; e < g.store_edge_count(); ++e)
            if (cycle_mask[i][e]) keep[e] = 1;
      Digraph h = g.restricted_to_edges(keep);
      // tidy the view: drop vertices outside the union's support
      std::vector<int> supp;
      for (int v = 0; v < h.vertex_count(); ++v)
        if (h.vertex_alive(v) && (h.out_degree(v) > 0 || h.in_degree(v) > 0))
          supp.push_back(v);
      h = h.induced(supp);
      if (dense_witness(g, h, d)) return h;
    }
  }
  return std::nullopt;
}

Digraph extract_d_full(const Digraph& g, double d, int budget) {
  if (!is_eulerian(g)) throw Error(ErrorKind::NotEulerian, "extract_d_full");
  if (static_cast<double>(g.edge_count()) < (g.live_vertex_count() - 1) * d)
    throw Error(ErrorKind::DensityTooLow,
                "e(G) < (n-1)d for d=" + std::to_string(d));
  Digraph h = g;
  for (;;) {
    auto witness = find_dense_eulerian_subgraph(h, d, budget);
    if (!witness) return h;
    assert(witness->edge_count() < h.edge_count());
    h = *witness;
  }
}

double layered_peel_bound(const Digraph& g, size_t b_size, double d_cap,
                          double t_cap) {
  const double n = g.live_vertex_count();
  if (n <= 0 || t_cap <= 0) return -1;
  const double beta = static_cast<double>(b_size) / n;
  const double k = g.average_degree();
  return std::ceil((k - (1 - beta) * d_cap) / t_cap) - 1;
}

namespace {

struct PeelLayerComp {
  std::vector<int> vertices;
  int entry = -1;
  std::vector<int> path;  // full path from the source to entry
};

PathWitness layered_peel_forward(const Digraph& g, int v,
                                 const std::vector<int>& b) {
  std::vector<char> in_b(g.vertex_count(), 0);
  int b_live = 0;
  for (int x : b)
    if (x >= 0 && x < g.vertex_count() && g.vertex_alive(x)) {
      in_b[x] = 1;
      ++b_live;
    }
  if (b_live == 0) throw Error(ErrorKind::Unreachable, "B has no live vertex");

  auto truncate_at_first_b = [&](std::vector<int> path) {
    for (size_t i = 0; i < path.size(); ++i)
      if (in_b[path[i]]) {
        path.resize(i + 1);
        return path;
      }
    throw Error(ErrorKind::Unreachable, "path missed B");
  };

  if (in_b[v]) return PathWitness{{v}, "layered_peel"};

  Digraph level_graph = g;
  std::vector<PeelLayerComp> comps{{g.live_vertices(), v, {v}}};
  for (;;) {
    // next level: remove a cycle decomposition through every entry, then the
    // entries themselves
    CycleDecomposition dec = decompose_into_cycles(level_graph);
    std::vector<int> entries;
    entries.reserve(comps.size());
    for (const auto& c : comps) entries.push_back(c.entry);
    Digraph next_graph = remove_cycles_through(level_graph, dec, entries, true);

    std::vector<PeelLayerComp> next;
    bool b_survives = false;
    for (const auto& comp_vertices : underlying_components(next_graph)) {
      bool has_b = std::any_of(comp_vertices.begin(), comp_vertices.end(),
                               [&](int x) { return in_b[x]; });
      if (!has_b) continue;  // vertex sets only shrink; B never reappears
      b_survives = true;
      // parent component at the current level
      const PeelLayerComp* parent = nullptr;
      for (const auto& c : comps)
        if (std::binary_search(c.vertices.begin(), c.vertices.end(),
                               comp_vertices.front())) {
          parent = &c;
          break;
        }
      assert(parent != nullptr);
      Digraph scope = level_graph.induced(parent->vertices);
      PathWitness hop = path_to_set(scope, parent->entry, comp_vertices);
      PeelLayerComp nc;
      nc.vertices = comp_vertices;
      nc.entry = hop.vertices.back();
      nc.path = parent->path;
      nc.path.insert(nc.path.end(), hop.vertices.begin() + 1, hop.vertices.end());
      next.push_back(std::move(nc));
    }

    if (!b_survives) {
      // finish inside the deepest level that still holds a B vertex
      for (const auto& c : comps) {
        std::vector<int> targets;
        for (int x : c.vertices)
          if (in_b[x]) targets.push_back(x);
        if (targets.empty()) continue;
        Digraph scope = level_graph.induced(c.vertices);
        PathWitness tail = path_to_set(scope, c.entry, targets);
        std::vector<int> full = c.path;
        full.insert(full.end(), tail.vertices.begin() + 1, tail.vertices.end());
        return PathWitness{truncate_at_first_b(std::move(full)), "layered_peel"};
      }
      throw Error(ErrorKind::Unreachable, "no level component meets B");
    }
    level_graph = std::move(next_graph);
    comps = std::move(next);
  }
}

}  // namespace

PathWitness layered_peel_path(const Digraph& g, int v, const std::vector<int>& b,
                              double d_cap, double t_cap, bool from_set_to_v) {
  (void)d_cap;
  (void)t_cap;  // caller-supplied caps shape the bound, not the construction
  if (b.empty()) throw Error(ErrorKind::EmptyB, "layered_peel_path");
  if (v < 0 || v >= g.vertex_count() || !g.vertex_alive(v))
    throw Error(ErrorKind::VertexOutOfRange, std::to_string(v));
  if (!from_set_to_v) return layered_peel_forward(g, v, b);
  PathWitness w = layered_peel_forward(g.transposed(), v, b);
  std::reverse(w.vertices.begin(), w.vertices.end());
  return w;
}

namespace {

// Shortest path leaving `sources` once and stopping at the first vertex of
// `targets`; never re-enters `sources`.
std::optional<std::vector<int>> bfs_between_sets(const Digraph& g,
                                                 const std::vector<int>& sources,
                                                 const std::vector<int>& targets) {
  std::vector<char> in_t(g.vertex_count(), 0);
  for (int t : targets) in_t[t] = 1;
  std::vector<int> parent(g.vertex_count(), -1);
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> queue;
  for (int s : sources) {
    seen[s] = 1;
    queue.push_back(s);
  }
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    if (in_t[u]) {
      std::vector<int> path;
      for (int x = u; x != -1; x = parent[x]) path.push_back(x);
      std::reverse(path.begin(), path.end());
      return path;
    }
    g.for_each_out(u, [&](int w) {
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = u;
        queue.push_back(w);
      }
    });
  }
  return std::nullopt;
}

void throw_if_refutes_fullness(const Digraph& host, const Digraph& variant,
                               double d) {
  for (const auto& comp : underlying_components(variant)) {
    if (comp.size() < 2) continue;
    double e = component_edges(variant, comp);
    if (e >= (static_cast<double>(comp.size()) - 1) * d &&
        static_cast<long long>(e) < host.edge_count())
      throw NotDFullError(comp);
  }
}

}  // namespace

Dichotomy connectivity_or_longpath(const Digraph& g, int v,
                                   const std::vector<int>& s,
                                   const BoundParams& params, Rng& rng,
                                   const PipelineConfig& cfg, int depth) {
  if (!is_eulerian(g)) throw Error(ErrorKind::NotEulerian, "connectivity_or_longpath");
  if (v < 0 || v >= g.vertex_count() || !g.vertex_alive(v))
    throw Error(ErrorKind::VertexOutOfRange, std::to_string(v));
  if (std::find(s.begin(), s.end(), v) == s.end())
    throw Error(ErrorKind::PreconditionViolated, "v must belong to S");
  const double gamma = params.gamma();
  const double size_bound = std::sqrt(params.d) * std::pow(gamma, -5.0);
  if (static_cast<double>(s.size()) > std::max(1.0, size_bound))
    throw Error(ErrorKind::PreconditionViolated,
                "SizeOfS: |S|=" + std::to_string(s.size()) + " exceeds " +
                    std::to_string(size_bound));
  if (depth < 0) depth = cfg.dichotomy_recursion_limit;

  if (is_strongly_connected(g.without_vertices(s)))
    return Dichotomy{Dichotomy::Outcome::Certified, {}, "g-s strongly connected"};

  const double n = g.live_vertex_count();
  const double phi_d = phi(params);
  CycleDecomposition dec = decompose_into_cycles(g);

  auto greedy_fallback = [&](const char* why) {
    PathWitness w = greedy_longest_path(g, v, cfg.greedy_node_budget);
    w.branch_tag = "dichotomy.fallback";
    return Dichotomy{Dichotomy::Outcome::Path, std::move(w), why};
  };

  const double heavy_threshold = n * std::pow(gamma, -2.0);
  if (g.out_degree(v) < heavy_threshold) {
    // low-degree branch: the cycles through v are few, so the rest stays
    // dense; recurse in its densest component and walk over to it
    Digraph rest = remove_cycles_through(g, dec, {v}, true);
    throw_if_refutes_fullness(g, rest, params.d);
    auto rest_comps = underlying_components(rest);
    int best = -1;
    double best_avg = 0;
    for (size_t i = 0; i < rest_comps.size(); ++i) {
      if (rest_comps[i].size() < 2) continue;
      double avg = component_edges(rest, rest_comps[i]) / rest_comps[i].size();
      if (best < 0 || avg > best_avg) {
        best = static_cast<int>(i);
        best_avg = avg;
      }
    }
    if (best < 0) return greedy_fallback("low-degree branch degenerate");
    const std::vector<int>& comp = rest_comps[best];
    PathWitness to_comp;
    try {
      to_comp = path_to_set(g, v, comp);
    } catch (const Error&) {
      return greedy_fallback("dense component unreachable");
    }
    int w = to_comp.vertices.back();
    LongPathResult rec = long_path_impl(rest.induced(comp), w, cfg, rng,
                                        depth - 1, params.d - 1, nullptr);
    std::vector<int> full = to_comp.vertices;
    full.insert(full.end(), rec.path.vertices.begin() + 1, rec.path.vertices.end());
    if (!check_path(g, full)) return greedy_fallback("low-degree stitch failed");
    return Dichotomy{Dichotomy::Outcome::Path, {std::move(full), "dichotomy.bigdeg"},
                     "low-degree branch"};
  }

  // split branch: drop every cycle through S, then stitch
  //   v -> B -> (layered peel inside W') -> connector -> recursion in U
  Digraph rest = remove_cycles_through(g, dec, s, true);
  throw_if_refutes_fullness(g, rest, params.d);
  auto comps = underlying_components(rest);
  if (comps.size() < 2) return greedy_fallback("cycle removal left one component");

  std::vector<char> is_out_nbr(g.vertex_count(), 0);
  g.for_each_out(v, [&](int w) { is_out_nbr[w] = 1; });

  std::vector<long long> rich_count(comps.size(), 0);
  std::vector<char> rich_flag(comps.size(), 0);
  for (size_t i = 0; i < comps.size(); ++i) {
    for (int x : comps[i])
      if (is_out_nbr[x]) ++rich_count[i];
    rich_flag[i] = rich_count[i] > 0 &&
                   static_cast<double>(rich_count[i]) >=
                       std::pow(gamma, -2.0) * comps[i].size() / 2.0;
  }
  bool any_rich = std::find(rich_flag.begin(), rich_flag.end(), 1) != rich_flag.end();
  // among rich components pick the densest; when the richness threshold is
  // unattainable at this scale, fall back to any component seeing v at all
  int w_idx = -1;
  double w_avg = -1;
  for (size_t i = 0; i < comps.size(); ++i) {
    if (any_rich ? !rich_flag[i] : rich_count[i] == 0) continue;
    double avg = component_edges(rest, comps[i]) / comps[i].size();
    if (avg > w_avg) {
      w_avg = avg;
      w_idx = static_cast<int>(i);
    }
  }
  if (w_idx < 0) return greedy_fallback("no out-neighbor-rich component");
  int u_idx = -1;
  for (size_t i = 0; i < comps.size(); ++i) {
    if (static_cast<int>(i) == w_idx) continue;
    if (component_edges(rest, comps[i]) == 0) continue;
    if (u_idx < 0 || component_edges(rest, comps[i]) / comps[i].size() >
                         component_edges(rest, comps[u_idx]) / comps[u_idx].size())
      u_idx = static_cast<int>(i);
  }
  if (u_idx < 0) return greedy_fallback("no second dense component");

  std::vector<int> b;
  for (int x : comps[w_idx])
    if (is_out_nbr[x]) b.push_back(x);
  if (b.empty()) return greedy_fallback("empty B");

  auto connector = bfs_between_sets(g.without_vertices({v}), comps[w_idx],
                                    comps[u_idx]);
  if (!connector) return greedy_fallback("no connector between components");
  int w_entry = connector->front();
  int u_entry = connector->back();

  PathWitness p1;
  try {
    p1 = layered_peel_path(rest.induced(comps[w_idx]), w_entry, b, params.d,
                           std::max(2.0, 2 * phi_d), /*from_set_to_v=*/true);
  } catch (const Error&) {
    return greedy_fallback("layered peel failed");
  }
  LongPathResult rec = long_path_impl(rest.induced(comps[u_idx]), u_entry, cfg,
                                      rng, depth - 1, params.d - 1, nullptr);

  std::vector<int> full{v};
  full.insert(full.end(), p1.vertices.begin(), p1.vertices.end());
  full.insert(full.end(), connector->begin() + 1, connector->end());
  full.insert(full.end(), rec.path.vertices.begin() + 1, rec.path.vertices.end());
  if (!check_path(g, full)) return greedy_fallback("split stitch failed");
  return Dichotomy{Dichotomy::Outcome::Path, {std::move(full), "dichotomy.split"},
                   "split branch"};
}

}  // namespace eulerpath
