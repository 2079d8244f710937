#include "eulerpath/digraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace eulerpath {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::LoopEdge: return "LoopEdge";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::NotEulerian: return "NotEulerian";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::DecompositionMismatch: return "DecompositionMismatch";
    case ErrorKind::NoOutEdge: return "NoOutEdge";
    case ErrorKind::ResampleBudgetExhausted: return "ResampleBudgetExhausted";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NonpositiveD: return "NonpositiveD";
    case ErrorKind::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorKind::DensityTooLow: return "DensityTooLow";
    case ErrorKind::NotDFull: return "NotDFull";
    case ErrorKind::EmptyB: return "EmptyB";
    case ErrorKind::DeadEnd: return "DeadEnd";
    case ErrorKind::TargetUnreachable: return "TargetUnreachable";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::MissingChord: return "MissingChord";
    case ErrorKind::TooManyFakeEdges: return "TooManyFakeEdges";
    case ErrorKind::NoFeasibleDetour: return "NoFeasibleDetour";
    case ErrorKind::BalanceViolated: return "BalanceViolated";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::InvalidFormat: return "InvalidFormat";
  }
  return "Error";
}

Digraph Digraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0) throw Error(ErrorKind::BadParams, "negative vertex count");
  auto sorted = edges;
  for (auto [u, v] : sorted) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw Error(ErrorKind::VertexOutOfRange,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) +
                      ") with n=" + std::to_string(n));
    if (u == v) throw Error(ErrorKind::LoopEdge, "loop at " + std::to_string(u));
  }
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw Error(ErrorKind::DuplicateEdge,
                  "(" + std::to_string(sorted[i].first) + "," +
                      std::to_string(sorted[i].second) + ")");

  auto store = std::make_shared<EdgeStore>();
  store->n = n;
  const int m = static_cast<int>(sorted.size());
  store->head.resize(m);
  store->tail.resize(m);
  store->out_start.assign(n + 1, 0);
  for (int e = 0; e < m; ++e) {
    store->tail[e] = sorted[e].first;
    store->head[e] = sorted[e].second;
    store->out_start[sorted[e].first + 1]++;
  }
  for (int v = 0; v < n; ++v) store->out_start[v + 1] += store->out_start[v];

  store->in_start.assign(n + 1, 0);
  for (int e = 0; e < m; ++e) store->in_start[store->head[e] + 1]++;
  for (int v = 0; v < n; ++v) store->in_start[v + 1] += store->in_start[v];
  store->in_eid.resize(m);
  std::vector<int> cursor(store->in_start.begin(), store->in_start.end() - 1);
  for (int e = 0; e < m; ++e) store->in_eid[cursor[store->head[e]]++] = e;
  // within each head slice, sort by tail so in-neighbors come out ascending
  for (int v = 0; v < n; ++v)
    std::sort(store->in_eid.begin() + store->in_start[v],
              store->in_eid.begin() + store->in_start[v + 1],
              [&](int a, int b) { return store->tail[a] < store->tail[b]; });

  Digraph g;
  g.store_ = std::move(store);
  g.edge_live_.assign(m, 1);
  g.vertex_live_.assign(n, 1);
  g.out_deg_.assign(n, 0);
  g.in_deg_.assign(n, 0);
  for (int e = 0; e < m; ++e) {
    g.out_deg_[g.store_->tail[e]]++;
    g.in_deg_[g.store_->head[e]]++;
  }
  g.m_live_ = m;
  g.n_live_ = n;
  return g;
}

void Digraph::check_vertex(int v) const {
  if (v < 0 || v >= vertex_count())
    throw Error(ErrorKind::VertexOutOfRange, std::to_string(v));
}

int Digraph::edge_id(int u, int v) const {
  if (!store_) return -1;
  check_vertex(u);
  check_vertex(v);
  int lo = store_->out_start[u], hi = store_->out_start[u + 1];
  auto it = std::lower_bound(store_->head.begin() + lo, store_->head.begin() + hi, v);
  if (it == store_->head.begin() + hi || *it != v) return -1;
  int e = static_cast<int>(it - store_->head.begin());
  return edge_live_[e] ? e : -1;
}

std::vector<int> Digraph::out_neighbors(int v) const {
  std::vector<int> r;
  r.reserve(out_deg_[v]);
  for_each_out(v, [&](int w) { r.push_back(w); });
  return r;
}

std::vector<int> Digraph::in_neighbors(int v) const {
  std::vector<int> r;
  r.reserve(in_deg_[v]);
  for_each_in(v, [&](int w) { r.push_back(w); });
  return r;
}

std::vector<std::pair<int, int>> Digraph::edge_list() const {
  std::vector<std::pair<int, int>> r;
  r.reserve(m_live_);
  for (int e = 0; e < store_edge_count(); ++e)
    if (edge_live_[e]) r.emplace_back(store_->tail[e], store_->head[e]);
  return r;
}

std::vector<int> Digraph::live_vertices() const {
  std::vector<int> r;
  r.reserve(n_live_);
  for (int v = 0; v < vertex_count(); ++v)
    if (vertex_live_[v]) r.push_back(v);
  return r;
}

int Digraph::support_size() const {
  int c = 0;
  for (int v = 0; v < vertex_count(); ++v)
    if (vertex_live_[v] && (out_deg_[v] > 0 || in_deg_[v] > 0)) ++c;
  return c;
}

void Digraph::kill_edge(int eid) {
  if (!edge_live_[eid]) return;
  edge_live_[eid] = 0;
  out_deg_[store_->tail[eid]]--;
  in_deg_[store_->head[eid]]--;
  m_live_--;
}

void Digraph::kill_vertex(int v) {
  if (!vertex_live_[v]) return;
  vertex_live_[v] = 0;
  n_live_--;
  for (int e = store_->out_start[v]; e < store_->out_start[v + 1]; ++e) kill_edge(e);
  for (int i = store_->in_start[v]; i < store_->in_start[v + 1]; ++i)
    kill_edge(store_->in_eid[i]);
}

Digraph Digraph::without_vertices(const std::vector<int>& s) const {
  Digraph g = *this;
  for (int v : s) {
    g.check_vertex(v);
    g.kill_vertex(v);
  }
  return g;
}

Digraph Digraph::induced(const std::vector<int>& keep) const {
  std::vector<char> in_keep(vertex_count(), 0);
  for (int v : keep) {
    check_vertex(v);
    in_keep[v] = 1;
  }
  Digraph g = *this;
  for (int v = 0; v < vertex_count(); ++v)
    if (vertex_live_[v] && !in_keep[v]) g.kill_vertex(v);
  return g;
}

Digraph Digraph::without_isolated() const {
  Digraph g = *this;
  for (int v = 0; v < vertex_count(); ++v)
    if (g.vertex_live_[v] && g.out_deg_[v] == 0 && g.in_deg_[v] == 0)
      g.kill_vertex(v);
  return g;
}

Digraph Digraph::with_edges_removed(const std::vector<char>& kill_eid) const {
  Digraph g = *this;
  for (int e = 0; e < store_edge_count(); ++e)
    if (kill_eid[e]) g.kill_edge(e);
  return g;
}

Digraph Digraph::restricted_to_edges(const std::vector<char>& keep_eid) const {
  Digraph g = *this;
  for (int e = 0; e < store_edge_count(); ++e)
    if (!keep_eid[e]) g.kill_edge(e);
  return g;
}

Digraph Digraph::transposed() const {
  std::vector<std::pair<int, int>> rev;
  rev.reserve(m_live_);
  for (auto [u, v] : edge_list()) rev.emplace_back(v, u);
  Digraph t = from_edges(vertex_count(), rev);
  for (int v = 0; v < vertex_count(); ++v)
    if (!vertex_live_[v]) t.kill_vertex(v);
  return t;
}

bool is_eulerian(const Digraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.vertex_alive(v) && g.out_degree(v) != g.in_degree(v)) return false;
  return true;
}

std::vector<std::vector<int>> underlying_components(const Digraph& g) {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(g.vertex_count(), 0);
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (!g.vertex_alive(s) || seen[s]) continue;
    std::vector<int> comp, stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      auto push = [&](int w) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      };
      g.for_each_out(v, push);
      g.for_each_in(v, push);
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_connected_underlying(const Digraph& g) {
  return underlying_components(g).size() <= 1;
}

bool check_path(const Digraph& g, const std::vector<int>& w) {
  if (w.empty()) return false;
  std::vector<char> seen(g.vertex_count(), 0);
  for (int v : w) {
    if (v < 0 || v >= g.vertex_count() || !g.vertex_alive(v)) return false;
    if (seen[v]) return false;
    seen[v] = 1;
  }
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (!g.has_edge(w[i], w[i + 1])) return false;
  return true;
}

namespace {

// Iterative Tarjan; emits components in reverse topological order, which we
// flip so sources come first.
struct TarjanState {
  const Digraph& g;
  std::vector<int> index, low, comp;
  std::vector<char> on_stack;
  std::vector<int> stack;
  int counter = 0, ncomp = 0;
  std::vector<std::vector<int>> comps;

  explicit TarjanState(const Digraph& g_)
      : g(g_),
        index(g_.vertex_count(), -1),
        low(g_.vertex_count(), 0),
        comp(g_.vertex_count(), -1),
        on_stack(g_.vertex_count(), 0) {
    out_start_.assign(g.vertex_count() + 1, 0);
    for (int e = 0; e < g.store_edge_count(); ++e) out_start_[g.edge_tail(e) + 1]++;
    for (int v = 0; v < g.vertex_count(); ++v) out_start_[v + 1] += out_start_[v];
  }

  void run(int root) {
    // explicit DFS stack: (vertex, next edge offset)
    struct Frame {
      int v;
      int eid;
    };
    std::vector<Frame> frames;
    auto open = [&](int v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = 1;
      frames.push_back({v, -1});
    };
    open(root);
    while (!frames.empty()) {
      auto& fr = frames.back();
      int v = fr.v;
      // advance to the next live out-edge after fr.eid
      bool descended = false;
      {
        // raw edge ids so the scan can resume mid-list after a descent
        int from = fr.eid + 1;
        int lo_e = out_start_[v], hi_e = out_start_[v + 1];
        for (int e = std::max(from, lo_e); e < hi_e; ++e) {
          if (!g.edge_alive(e)) continue;
          int w = g.edge_head(e);
          fr.eid = e;
          if (index[w] == -1) {
            open(w);
            descended = true;
            break;
          }
          if (on_stack[w]) low[v] = std::min(low[v], index[w]);
        }
        if (!descended) fr.eid = hi_e;
      }
      if (descended) continue;
      // close v
      if (low[v] == index[v]) {
        std::vector<int> c;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomp;
          c.push_back(w);
        } while (w != v);
        std::sort(c.begin(), c.end());
        comps.push_back(std::move(c));
        ncomp++;
      }
      frames.pop_back();
      if (!frames.empty()) {
        int parent = frames.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }

  std::vector<int> out_start_;
};

}  // namespace

SccPartition sccs(const Digraph& g) {
  TarjanState ts(g);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.vertex_alive(v) && ts.index[v] == -1) ts.run(v);

  SccPartition part;
  const int k = ts.ncomp;
  // Tarjan finishes a component only after all its successors, so reversing
  // gives a topological order of the condensation.
  part.components.resize(k);
  part.component_of.assign(g.vertex_count(), -1);
  for (int i = 0; i < k; ++i) part.components[i] = std::move(ts.comps[k - 1 - i]);
  for (int i = 0; i < k; ++i)
    for (int v : part.components[i]) part.component_of[v] = i;

  for (auto [u, v] : g.edge_list()) {
    int a = part.component_of[u], b = part.component_of[v];
    if (a != b) part.condensation_edges.emplace_back(a, b);
  }
  std::sort(part.condensation_edges.begin(), part.condensation_edges.end());
  part.condensation_edges.erase(
      std::unique(part.condensation_edges.begin(), part.condensation_edges.end()),
      part.condensation_edges.end());
  return part;
}

bool is_strongly_connected(const Digraph& g) {
  if (g.live_vertex_count() <= 1) return true;
  return sccs(g).components.size() == 1;
}

PathWitness path_to_set(const Digraph& g, int v, const std::vector<int>& targets) {
  if (v < 0 || v >= g.vertex_count() || !g.vertex_alive(v))
    throw Error(ErrorKind::VertexOutOfRange, std::to_string(v));
  std::vector<char> in_t(g.vertex_count(), 0);
  for (int t : targets)
    if (t >= 0 && t < g.vertex_count()) in_t[t] = 1;
  if (in_t[v]) return PathWitness{{v}, "path_to_set"};

  std::vector<int> parent(g.vertex_count(), -1);
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> queue{v};
  seen[v] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    if (in_t[u]) {
      std::vector<int> path;
      for (int x = u; x != -1; x = parent[x]) path.push_back(x);
      std::reverse(path.begin(), path.end());
      return PathWitness{std::move(path), "path_to_set"};
    }
    g.for_each_out(u, [&](int w) {
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = u;
        queue.push_back(w);
      }
    });
  }
  throw Error(ErrorKind::Unreachable,
              "no path from " + std::to_string(v) + " to target set");
}

Digraph read_edge_list(std::istream& in) {
  std::string line;
  long long n = -1, m = -1;
  std::vector<std::pair<int, int>> edges;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m) || n < 0 || m < 0)
        throw Error(ErrorKind::InvalidFormat,
                    "line " + std::to_string(lineno) + ": expected 'n m'");
    } else {
      long long u, v;
      if (!(ls >> u >> v))
        throw Error(ErrorKind::InvalidFormat,
                    "line " + std::to_string(lineno) + ": expected 'u v'");
      edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
  }
  if (n < 0) throw Error(ErrorKind::InvalidFormat, "empty input");
  if (static_cast<long long>(edges.size()) != m)
    throw Error(ErrorKind::InvalidFormat,
                "expected " + std::to_string(m) + " edges, found " +
                    std::to_string(edges.size()));
  return Digraph::from_edges(static_cast<int>(n), edges);
}

Digraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidFormat, "cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(const Digraph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
}

}  // namespace eulerpath
