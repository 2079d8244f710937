#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "eulerpath/errors.hpp"

namespace eulerpath {

// Immutable edge store shared by every subgraph view of one host graph.
// Edges are sorted by (tail, head); the index in that order is the edge id.
struct EdgeStore {
  int n = 0;
  std::vector<int> out_start;  // size n+1
  std::vector<int> head;       // head[eid], ascending within each tail slice
  std::vector<int> tail;       // tail[eid]
  std::vector<int> in_start;   // size n+1
  std::vector<int> in_eid;     // edge ids grouped by head, ascending tail
};

// Simple digraph: no loops, no repeated ordered pair (antiparallel pairs are
// fine). A Digraph is a view over a shared EdgeStore plus liveness masks, so
// subgraph surgery never copies adjacency and never renumbers vertices.
class Digraph {
 public:
  Digraph() = default;

  static Digraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return store_ ? store_->n : 0; }
  int live_vertex_count() const { return n_live_; }
  long long edge_count() const { return m_live_; }
  bool vertex_alive(int v) const { return vertex_live_[v] != 0; }
  int out_degree(int v) const { return out_deg_[v]; }
  int in_degree(int v) const { return in_deg_[v]; }
  double average_degree() const {
    return n_live_ ? static_cast<double>(m_live_) / n_live_ : 0.0;
  }
  // live vertices touched by at least one live edge
  int support_size() const;

  bool has_edge(int u, int v) const { return edge_id(u, v) >= 0; }

  template <class F>
  void for_each_out(int v, F&& f) const {
    for (int e = store_->out_start[v]; e < store_->out_start[v + 1]; ++e)
      if (edge_live_[e]) f(store_->head[e]);
  }
  template <class F>
  void for_each_in(int v, F&& f) const {
    for (int i = store_->in_start[v]; i < store_->in_start[v + 1]; ++i) {
      int e = store_->in_eid[i];
      if (edge_live_[e]) f(store_->tail[e]);
    }
  }
  std::vector<int> out_neighbors(int v) const;
  std::vector<int> in_neighbors(int v) const;
  std::vector<std::pair<int, int>> edge_list() const;
  std::vector<int> live_vertices() const;

  // Views over the same store.
  Digraph without_vertices(const std::vector<int>& s) const;
  Digraph induced(const std::vector<int>& keep) const;
  Digraph without_isolated() const;
  Digraph with_edges_removed(const std::vector<char>& kill_eid) const;
  Digraph restricted_to_edges(const std::vector<char>& keep_eid) const;

  // Fresh store with every live arc reversed; liveness carried over.
  Digraph transposed() const;

  bool same_graph(const Digraph& other) const {
    return store_ == other.store_ && edge_live_ == other.edge_live_ &&
           vertex_live_ == other.vertex_live_;
  }

  // Edge-id layer, used by the cycle machinery.
  int edge_id(int u, int v) const;  // -1 when absent or masked
  int store_edge_count() const { return store_ ? (int)store_->head.size() : 0; }
  bool edge_alive(int eid) const { return edge_live_[eid] != 0; }
  int edge_tail(int eid) const { return store_->tail[eid]; }
  int edge_head(int eid) const { return store_->head[eid]; }

 private:
  void kill_edge(int eid);
  void kill_vertex(int v);
  void check_vertex(int v) const;

  std::shared_ptr<const EdgeStore> store_;
  std::vector<char> edge_live_;
  std::vector<char> vertex_live_;
  std::vector<int> out_deg_, in_deg_;
  long long m_live_ = 0;
  int n_live_ = 0;
};

// Every vertex balanced (in-degree == out-degree); connectivity not required.
bool is_eulerian(const Digraph& g);

// Over live vertices; graphs with at most one live vertex count as strongly
// connected.
bool is_strongly_connected(const Digraph& g);
bool is_connected_underlying(const Digraph& g);
// Connected components of the underlying undirected graph, over live
// vertices; each component sorted ascending, components ordered by minimum.
std::vector<std::vector<int>> underlying_components(const Digraph& g);

struct PathWitness {
  std::vector<int> vertices;
  std::string branch_tag;
  int length() const { return static_cast<int>(vertices.size()) - 1; }
};

// True iff w is a nonempty simple directed path of the live graph.
bool check_path(const Digraph& g, const std::vector<int>& w);

struct SccPartition {
  std::vector<std::vector<int>> components;        // topological order
  std::vector<int> component_of;                   // -1 for masked vertices
  std::vector<std::pair<int, int>> condensation_edges;  // sorted, deduped
};

SccPartition sccs(const Digraph& g);

// Shortest path from v whose only vertex in `targets` is its last vertex.
// BFS order with ascending neighbor expansion, so the result is deterministic.
PathWitness path_to_set(const Digraph& g, int v, const std::vector<int>& targets);

// Edge-list text format: "n m" then one "u v" line per edge; lines whose
// first non-blank character is '#' are comments.
Digraph read_edge_list(std::istream& in);
Digraph read_edge_list_file(const std::string& path);
void write_edge_list(const Digraph& g, std::ostream& out);

}  // namespace eulerpath
