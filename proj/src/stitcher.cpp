#include "eulerpath/stitcher.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace eulerpath {

namespace {

std::vector<long long> positions_on_path(const Digraph& g, const PathWitness& p) {
  std::vector<long long> pos(g.vertex_count(), -1);
  for (size_t i = 0; i < p.vertices.size(); ++i) pos[p.vertices[i]] = i;
  return pos;
}

}  // namespace

std::vector<int> DetourSet::y_prime() const {
  std::vector<int> r;
  for (size_t i = 0; i < y.size(); ++i)
    if (in_y_prime[i]) r.push_back(y[i]);
  return r;
}

int DetourSet::index_of(int vertex) const {
  for (size_t i = 0; i < y.size(); ++i)
    if (y[i] == vertex) return static_cast<int>(i);
  return -1;
}

DetourSet build_detour_set(const Digraph& g, const PathWitness& p,
                           const std::vector<int>& y, const BoundParams& params,
                           const StitchKnobs& knobs) {
  if (!check_path(g, p.vertices))
    throw Error(ErrorKind::InvalidPath, "build_detour_set");
  const double gamma = params.gamma();
  const double window = knobs.window.value_or(std::pow(gamma, 9.0));

  DetourSet d;
  d.p = p.length();
  d.y = y;
  auto pos = positions_on_path(g, p);
  d.y_pos.reserve(y.size());
  for (int v : y) {
    if (pos[v] < 0) throw Error(ErrorKind::InvalidPath, "Y vertex not on path");
    d.y_pos.push_back(pos[v]);
  }

  const long long ell = static_cast<long long>(y.size());
  // segment lengths t_0..t_ell between consecutive heavy vertices
  d.gaps.assign(ell + 1, 0);
  if (ell == 0) {
    d.gaps[0] = d.p;
  } else {
    d.gaps[0] = d.y_pos[0];
    for (long long i = 1; i < ell; ++i) d.gaps[i] = d.y_pos[i] - d.y_pos[i - 1];
    d.gaps[ell] = d.p - d.y_pos[ell - 1];
  }

  const double crucial_bound =
      knobs.crucial_bound.value_or(d.p / (2.0 * gamma * gamma));
  d.crucial.assign(ell, 0);
  for (long long i = 0; i < ell; ++i) {
    // 1-based heavy index against segment indices 0..ell
    const long long idx = i + 1;
    long long sum = 0;
    for (long long j = std::max<long long>(0, (long long)std::ceil(idx - window));
         j <= std::min<long long>(ell, (long long)std::floor(idx + window)); ++j)
      sum += d.gaps[j];
    d.crucial[i] = static_cast<double>(sum) >= crucial_bound;
  }

  d.chord.assign(ell, std::nullopt);
  for (long long i = 0; i < ell; ++i) {
    for (long long j = std::max<long long>(0, (long long)std::ceil(i - window));
         j < i && !d.chord[i]; ++j)
      for (long long jp = i + 1;
           jp <= ell - 1 && jp <= (long long)std::floor(i + window); ++jp) {
        if (d.y_pos[jp] >= d.p) continue;
        if (g.has_edge(y[j], p.vertices[d.y_pos[jp] + 1])) {
          d.chord[i] = std::make_pair(j, jp);
          break;
        }
      }
  }

  d.in_y_prime.assign(ell, 0);
  for (long long i = 0; i < ell; ++i)
    d.in_y_prime[i] = !d.crucial[i] && d.chord[i].has_value();
  return d;
}

PathWitness reroute_avoiding(const Digraph& g, const PathWitness& p,
                             const DetourSet& d, const std::vector<int>& s,
                             std::optional<int> z, const BoundParams& params,
                             const StitchKnobs& knobs) {
  const double gamma = params.gamma();
  const double spacing = knobs.spacing.value_or(std::pow(gamma, 9.0));
  const double cap = knobs.detour_cap.value_or(gamma * gamma);

  if (static_cast<double>(s.size()) >= cap && !s.empty())
    throw Error(ErrorKind::PreconditionViolated,
                "|S|=" + std::to_string(s.size()) + " not below " +
                    std::to_string(cap));

  std::vector<long long> indices;
  for (int v : s) {
    int i = d.index_of(v);
    if (i < 0 || !d.in_y_prime[i])
      throw Error(ErrorKind::PreconditionViolated,
                  "S vertex " + std::to_string(v) + " not in Y'");
    if (!d.chord[i])
      throw Error(ErrorKind::MissingChord, std::to_string(v));
    indices.push_back(i);
  }
  std::sort(indices.begin(), indices.end());
  for (size_t a = 1; a < indices.size(); ++a)
    if (indices[a] - indices[a - 1] <= 3 * spacing)
      throw Error(ErrorKind::PreconditionViolated,
                  "detour indices closer than 3x spacing");

  long long end_pos = d.p;
  long long h1 = -1;
  if (z) {
    auto pos = positions_on_path(g, p);
    if (*z < 0 || *z >= g.vertex_count() || pos[*z] < 0)
      throw Error(ErrorKind::PreconditionViolated, "z not on path");
    end_pos = pos[*z];
    h1 = 0;
    for (long long i = 0; i < (long long)d.y.size(); ++i)
      if (d.y_pos[i] <= end_pos) h1 = i + 1;
    for (long long i : indices)
      if (std::llabs((i + 1) - h1) <= spacing)
        throw Error(ErrorKind::PreconditionViolated,
                    "detour index within the window of z");
  }

  // (start, land) position pairs, each replaced by the chord edge
  std::vector<std::pair<long long, long long>> skips;
  for (long long i : indices) {
    if (z && i + 1 > h1) continue;  // beyond z; the prefix never reaches it
    auto [j, jp] = *d.chord[i];
    skips.emplace_back(d.y_pos[j], d.y_pos[jp] + 1);
  }
  std::sort(skips.begin(), skips.end());

  std::vector<int> out;
  long long cur = 0;
  size_t next_skip = 0;
  while (cur <= end_pos) {
    out.push_back(p.vertices[cur]);
    if (next_skip < skips.size() && skips[next_skip].first == cur) {
      long long land = skips[next_skip].second;
      if (land <= cur || land > end_pos)
        throw Error(ErrorKind::PreconditionViolated, "chords overlap");
      cur = land;
      ++next_skip;
    } else {
      ++cur;
    }
  }
  if (next_skip != skips.size())
    throw Error(ErrorKind::PreconditionViolated, "chords overlap");
  PathWitness w{std::move(out), "reroute"};
  if (!check_path(g, w.vertices))
    throw Error(ErrorKind::MissingChord, "rerouted walk is not a path");
  return w;
}

Digraph strip_problematic(const Digraph& g, const PathWitness& p,
                          const BoundParams& params, const StitchKnobs& knobs,
                          StripDiag* diag) {
  if (!check_path(g, p.vertices))
    throw Error(ErrorKind::InvalidPath, "strip_problematic");
  const double gamma = params.gamma();
  const double max_len = knobs.strip_len.value_or(std::sqrt(params.d) * gamma);
  const double meet = knobs.strip_meet.value_or(gamma * gamma);
  long long budget = knobs.strip_node_budget;

  StripDiag local;
  StripDiag& dg = diag ? *diag : local;

  std::vector<char> on_path(g.vertex_count(), 0);
  for (int v : p.vertices) on_path[v] = 1;

  Digraph h = g;
  const long long len_cap = static_cast<long long>(std::floor(max_len));
  if (len_cap < 1) return h;

  // DFS from a path vertex; stop at any path vertex once the walk meets the
  // path in more than `meet` vertices
  std::vector<int> walk;
  std::vector<char> on_walk(g.vertex_count(), 0);
  auto find_problematic = [&](std::vector<int>& found) -> bool {
    struct Frame {
      std::vector<int> nbrs;
      size_t next = 0;
    };
    for (int s = 0; s < g.vertex_count(); ++s) {
      if (!on_path[s] || !h.vertex_alive(s) || h.out_degree(s) == 0) continue;
      walk.assign(1, s);
      on_walk[s] = 1;
      long long meets = 1;
      std::vector<Frame> frames;
      frames.push_back({h.out_neighbors(s), 0});
      bool ok = true;
      while (!frames.empty() && ok) {
        Frame& fr = frames.back();
        bool advanced = false;
        while (fr.next < fr.nbrs.size()) {
          if (--budget <= 0) {
            dg.budget_exhausted = true;
            ok = false;
            break;
          }
          int w = fr.nbrs[fr.next++];
          if (on_walk[w]) continue;
          long long new_meets = meets + (on_path[w] ? 1 : 0);
          if (on_path[w] && static_cast<double>(new_meets) > meet) {
            walk.push_back(w);
            found = walk;
            for (int x : walk) on_walk[x] = 0;
            return true;
          }
          if (static_cast<long long>(walk.size()) >= len_cap) continue;
          walk.push_back(w);
          on_walk[w] = 1;
          meets = new_meets;
          frames.push_back({h.out_neighbors(w), 0});
          advanced = true;
          break;
        }
        if (!advanced) {
          frames.pop_back();
          int w = walk.back();
          on_walk[w] = 0;
          if (on_path[w]) --meets;
          walk.pop_back();
        }
      }
      for (int x : walk) on_walk[x] = 0;
      if (!ok) return false;
    }
    return false;
  };

  std::vector<int> found;
  while (!dg.budget_exhausted && find_problematic(found)) {
    std::vector<char> kill(h.store_edge_count(), 0);
    for (size_t i = 0; i + 1 < found.size(); ++i) {
      int e = h.edge_id(found[i], found[i + 1]);
      assert(e >= 0);
      kill[e] = 1;
    }
    h = h.with_edges_removed(kill);
    dg.removed_paths++;
    dg.removed_edges += static_cast<long long>(found.size()) - 1;
  }
  return h;
}

int RewiredGraph::fake_index(int u, int w) const {
  for (size_t i = 0; i < fakes.size(); ++i)
    if (fakes[i].u == u && fakes[i].w == w) return static_cast<int>(i);
  return -1;
}

bool RewiredGraph::off_path_balanced() const {
  std::vector<long long> fake_out(live.vertex_count(), 0),
      fake_in(live.vertex_count(), 0);
  for (const auto& f : fakes) {
    fake_out[f.u]++;
    fake_in[f.w]++;
  }
  for (int v = 0; v < live.vertex_count(); ++v) {
    if (!live.vertex_alive(v) || on_path[v]) continue;
    if (live.out_degree(v) + fake_out[v] != live.in_degree(v) + fake_in[v])
      return false;
  }
  return true;
}

RewiredGraph rewire(const Digraph& h0, const PathWitness& p, const DetourSet& d,
                    const BoundParams& params, const StitchKnobs& knobs) {
  const double gamma = params.gamma();
  const double threshold =
      knobs.rewire_threshold.value_or(7.0 * std::pow(gamma, 11.0));

  RewiredGraph rw;
  rw.base = h0;
  rw.live = h0;
  rw.on_path.assign(h0.vertex_count(), 0);
  for (int v : p.vertices) rw.on_path[v] = 1;

  // retained heavy vertices by ascending path index
  std::vector<int> yp;
  std::vector<int> y_order(h0.vertex_count(), -1);
  for (size_t i = 0; i < d.y.size(); ++i)
    if (d.in_y_prime[i]) {
      y_order[d.y[i]] = static_cast<int>(i);
      yp.push_back(d.y[i]);
    }

  for (;;) {
    // walks u -> y -> w through retained heavy vertices; a fake edge never
    // lands in Y', so only real live edges matter here
    std::map<std::pair<int, int>, long long> count;
    for (int y : yp) {
      auto ins = rw.live.in_neighbors(y);
      auto outs = rw.live.out_neighbors(y);
      for (int u : ins) {
        if (rw.on_path[u]) continue;
        for (int w : outs) {
          if (rw.on_path[w] || w == u) continue;
          count[{u, w}]++;
        }
      }
    }
    int bu = -1, bw = -1;
    for (const auto& [pair, c] : count) {
      if (static_cast<double>(c) < threshold) continue;
      if (rw.live.has_edge(pair.first, pair.second)) continue;
      if (rw.fake_index(pair.first, pair.second) >= 0) continue;
      bu = pair.first;
      bw = pair.second;
      break;  // map iterates in ascending (u, w) order
    }
    if (bu < 0) break;

    // lowest path-index detour vertex currently usable
    int pick = -1;
    for (int y : yp)
      if (rw.live.has_edge(bu, y) && rw.live.has_edge(y, bw)) {
        pick = y;
        break;
      }
    assert(pick >= 0);

    FakeEdge fe;
    fe.u = bu;
    fe.w = bw;
    fe.consumed = pick;
    for (int y : yp)
      if (rw.base.has_edge(bu, y) && rw.base.has_edge(y, bw))
        fe.candidates.push_back(y);

    RewireStep step;
    step.u = bu;
    step.w = bw;
    step.y = pick;
    step.edges_before = rw.edge_count_with_fakes();

    std::vector<char> kill(rw.live.store_edge_count(), 0);
    kill[rw.live.edge_id(bu, pick)] = 1;
    kill[rw.live.edge_id(pick, bw)] = 1;
    rw.live = rw.live.with_edges_removed(kill);
    rw.fakes.push_back(std::move(fe));

    step.edges_after = rw.edge_count_with_fakes();
    step.balanced_off_path = rw.off_path_balanced();
    assert(step.balanced_off_path);
    assert(step.edges_after == step.edges_before - 1);
    rw.log.push_back(step);
  }
  return rw;
}

Digraph extract_k(const RewiredGraph& h, const PathWitness& p) {
  const int n = h.live.vertex_count();
  std::vector<char> on_path(n, 0);
  for (int v : p.vertices) on_path[v] = 1;

  struct Arc {
    int u, v;
  };
  std::vector<Arc> arcs;
  for (auto [u, v] : h.live.edge_list()) arcs.push_back({u, v});
  for (const auto& f : h.fakes) arcs.push_back({f.u, f.w});

  std::vector<std::vector<int>> out_arcs(n);
  for (size_t i = 0; i < arcs.size(); ++i) out_arcs[arcs[i].u].push_back((int)i);
  for (auto& lst : out_arcs)
    std::sort(lst.begin(), lst.end(),
              [&](int a, int b) { return arcs[a].v < arcs[b].v; });

  std::vector<char> used(arcs.size(), 0);
  std::vector<size_t> cursor(n, 0);
  auto next_arc = [&](int v) -> int {
    while (cursor[v] < out_arcs[v].size() && used[out_arcs[v][cursor[v]]]) cursor[v]++;
    return cursor[v] < out_arcs[v].size() ? out_arcs[v][cursor[v]] : -1;
  };

  std::vector<int> k_arcs;  // arc indices that belong to K
  std::vector<long long> pos_on_walk(n, -1);

  for (int s = 0; s < n; ++s) {
    if (!on_path[s]) continue;
    int a;
    while ((a = next_arc(s)) >= 0) {
      // walk until the next path vertex; pops of revisited off-path vertices
      // are cycles disjoint from the path and go straight into K
      std::vector<std::pair<int, int>> walk{{s, -1}};
      pos_on_walk[s] = 0;
      int cur = s;
      for (;;) {
        int arc = next_arc(cur);
        if (arc < 0) {
          for (auto& [vtx, ign] : walk) pos_on_walk[vtx] = -1;
          throw Error(ErrorKind::BalanceViolated,
                      "stuck off the path at " + std::to_string(cur));
        }
        used[arc] = 1;
        int to = arcs[arc].v;
        if (on_path[to]) break;  // path-to-path piece complete; discard
        long long pp = pos_on_walk[to];
        if (pp >= 0) {
          for (size_t i = pp + 1; i < walk.size(); ++i) {
            k_arcs.push_back(walk[i].second);
            pos_on_walk[walk[i].first] = -1;
          }
          k_arcs.push_back(arc);
          walk.resize(pp + 1);
          cur = to;
          continue;
        }
        pos_on_walk[to] = static_cast<long long>(walk.size());
        walk.push_back({to, arc});
        cur = to;
      }
      for (auto& [vtx, ign] : walk) pos_on_walk[vtx] = -1;
    }
  }

  // residual arcs live entirely off the path and are balanced, hence a
  // disjoint union of cycles
  std::vector<std::pair<int, int>> k_edges;
  std::vector<long long> bal(n, 0);
  for (size_t i = 0; i < arcs.size(); ++i) {
    if (used[i]) continue;
    if (on_path[arcs[i].u] || on_path[arcs[i].v])
      throw Error(ErrorKind::BalanceViolated, "path-incident arc survived");
    bal[arcs[i].u]++;
    bal[arcs[i].v]--;
    k_edges.emplace_back(arcs[i].u, arcs[i].v);
  }
  for (int ai : k_arcs) k_edges.emplace_back(arcs[ai].u, arcs[ai].v);
  for (int v = 0; v < n; ++v)
    if (bal[v] != 0)
      throw Error(ErrorKind::BalanceViolated, "unbalanced residual at " +
                                                  std::to_string(v));
  Digraph k = Digraph::from_edges(n, k_edges);
  assert(is_eulerian(k));
  return k;
}

std::pair<PathWitness, std::vector<int>> realize_fake_edges(
    const PathWitness& r, const RewiredGraph& h, const DetourSet& d,
    const BoundParams& params, const StitchKnobs& knobs) {
  const double gamma = params.gamma();
  const double cap = knobs.detour_cap.value_or(gamma * gamma);
  const double spacing = knobs.spacing.value_or(std::pow(gamma, 9.0));

  std::vector<std::pair<size_t, int>> fake_positions;  // (index in r, fake idx)
  for (size_t i = 0; i + 1 < r.vertices.size(); ++i) {
    int fi = h.fake_index(r.vertices[i], r.vertices[i + 1]);
    if (fi >= 0) fake_positions.emplace_back(i, fi);
  }
  const double s = static_cast<double>(fake_positions.size());
  if (s > cap)
    throw Error(ErrorKind::TooManyFakeEdges,
                std::to_string(fake_positions.size()) + " fake edges exceed " +
                    std::to_string(cap));

  std::vector<long long> chosen_idx;
  std::vector<int> chosen;
  for (auto [pos, fi] : fake_positions) {
    (void)pos;
    const auto& cand = h.fakes[fi].candidates;
    int pick = -1;
    long long pick_idx = -1;
    for (int y : cand) {
      long long yi = d.index_of(y);
      assert(yi >= 0);
      bool ok = true;
      for (long long other : chosen_idx)
        if (yi == other || std::llabs(yi - other) <= 3 * spacing) {
          ok = false;
          break;
        }
      if (ok) {
        pick = y;
        pick_idx = yi;
        break;  // candidates are stored in ascending path-index order
      }
    }
    if (pick < 0)
      throw Error(ErrorKind::NoFeasibleDetour,
                  "no detour vertex satisfies the spacing constraints");
    chosen.push_back(pick);
    chosen_idx.push_back(pick_idx);
  }

  std::vector<int> out;
  size_t next_fake = 0;
  for (size_t i = 0; i < r.vertices.size(); ++i) {
    out.push_back(r.vertices[i]);
    if (next_fake < fake_positions.size() && fake_positions[next_fake].first == i) {
      out.push_back(chosen[next_fake]);
      ++next_fake;
    }
  }
  return {PathWitness{std::move(out), "realized"}, chosen};
}

void TraceLog::write(std::ostream& out) const {
  for (const auto& line : lines) out << line << '\n';
}

PathWitness greedy_longest_path(const Digraph& g, int v, long long node_budget) {
  if (v < 0 || v >= g.vertex_count() || !g.vertex_alive(v))
    throw Error(ErrorKind::VertexOutOfRange, std::to_string(v));
  struct Frame {
    std::vector<int> nbrs;
    size_t next = 0;
  };
  std::vector<int> path{v}, best{v};
  std::vector<char> on_path(g.vertex_count(), 0);
  on_path[v] = 1;
  std::vector<Frame> frames;
  frames.push_back({g.out_neighbors(v), 0});
  long long budget = node_budget;
  while (!frames.empty()) {
    Frame& fr = frames.back();
    bool advanced = false;
    while (fr.next < fr.nbrs.size() && budget > 0) {
      int w = fr.nbrs[fr.next++];
      if (on_path[w]) continue;
      --budget;
      path.push_back(w);
      on_path[w] = 1;
      if (path.size() > best.size()) best = path;
      frames.push_back({g.out_neighbors(w), 0});
      advanced = true;
      break;
    }
    if (!advanced) {
      if (budget <= 0) break;
      frames.pop_back();
      on_path[path.back()] = 0;
      path.pop_back();
    }
  }
  return PathWitness{std::move(best), "greedy_fallback"};
}

PathWitness wind_cycle_from(const Digraph& g, int v, const std::vector<int>& cycle) {
  PathWitness to_cycle = path_to_set(g, v, cycle);
  int entry = to_cycle.vertices.back();
  size_t at = 0;
  while (cycle[at] != entry) ++at;
  std::vector<int> out = to_cycle.vertices;
  for (size_t k = 1; k < cycle.size(); ++k)
    out.push_back(cycle[(at + k) % cycle.size()]);
  PathWitness w{std::move(out), "cycle_splice"};
  if (!check_path(g, w.vertices))
    throw Error(ErrorKind::InvalidPath, "cycle splice failed");
  return w;
}

namespace {

struct Candidate {
  PathWitness path;
  bool certified = false;
  bool truncated = false;
};

void trace_kv(TraceLog* trace, const std::string& line) {
  if (trace) trace->add(line);
}

// The construction inside the d-full core h, starting at w.
Candidate pipeline_inside(const Digraph& h, int w, const BoundParams& bp,
                          const PipelineConfig& cfg, Rng& rng, int depth,
                          TraceLog* trace) {
  const double phi_d = phi(bp);
  const double gamma = bp.gamma();
  std::vector<Candidate> candidates;
  bool truncated = false;

  // structural dichotomy around the start vertex
  if (std::sqrt(bp.d) * std::pow(gamma, -5.0) >= 1.0) {
    Dichotomy dich = connectivity_or_longpath(h, w, {w}, bp, rng, cfg, depth);
    if (dich.outcome == Dichotomy::Outcome::Path) {
      bool cert = dich.path.branch_tag != "dichotomy.fallback" &&
                  dich.path.length() >= phi_d;
      trace_kv(trace, "stage=dichotomy outcome=path branch=" +
                          dich.path.branch_tag +
                          " length=" + std::to_string(dich.path.length()));
      candidates.push_back({dich.path, cert, false});
    } else {
      trace_kv(trace, "stage=dichotomy outcome=certified");
    }
  }

  // long-cycle route: a cycle of length >= phi(d)+1 winds into a long path
  if (static_cast<double>(h.live_vertex_count()) < std::pow(bp.d, 10.0)) {
    try {
      Digraph hc = h.without_isolated();
      LongCycleDiag diag;
      auto cyc = long_cycle_bounded_degree(hc, hc.average_degree(), rng,
                                           cfg.resample_budget, 0.0, &diag);
      PathWitness wound = wind_cycle_from(h, w, cyc);
      bool cert = static_cast<double>(cyc.size()) >= phi_d + 1.0 &&
                  wound.length() >= phi_d;
      trace_kv(trace, "stage=cycle_route cycle_length=" +
                          std::to_string(cyc.size()) +
                          " spliced=" + std::to_string(wound.length()) +
                          " certified=" + std::to_string(cert));
      candidates.push_back({std::move(wound), cert, false});
    } catch (const Error& e) {
      trace_kv(trace, std::string("stage=cycle_route skipped=") +
                          error_kind_name(e.kind()));
    }
  }

  // good path + strip/rewire/recurse/stitch
  try {
    GoodPathReport rep =
        find_good_path(h, w, bp, rng, cfg.good_path_retries);
    trace_kv(trace, "stage=good_path length=" +
                        std::to_string(rep.path.length()) +
                        " certified=" + std::to_string(rep.certified) +
                        " heavy=" + std::to_string(rep.heavy.size()));
    DetourSet detours = build_detour_set(h, rep.path, rep.heavy, bp);
    StitchKnobs knobs;
    knobs.strip_node_budget = cfg.strip_node_budget;
    StripDiag sdiag;
    Digraph h0 = strip_problematic(h, rep.path, bp, knobs, &sdiag);
    trace_kv(trace, "stage=strip removed_paths=" +
                        std::to_string(sdiag.removed_paths) + " removed_edges=" +
                        std::to_string(sdiag.removed_edges) + " e_h0=" +
                        std::to_string(h0.edge_count()));
    RewiredGraph rw = rewire(h0, rep.path, detours, bp, knobs);
    trace_kv(trace, "stage=rewire steps=" + std::to_string(rw.log.size()) +
                        " e_h=" + std::to_string(rw.edge_count_with_fakes()));
    Digraph k = extract_k(rw, rep.path);
    trace_kv(trace, "stage=extract_k e_k=" + std::to_string(k.edge_count()));

    Candidate stitched{rep.path, rep.certified && rep.path.length() >= phi_d,
                       false};
    const auto comps = underlying_components(k);
    int best_comp = -1;
    double best_avg = 0;
    for (size_t i = 0; i < comps.size(); ++i) {
      if (comps[i].size() < 2) continue;
      long long e = 0;
      for (int x : comps[i]) e += k.out_degree(x);
      double avg = static_cast<double>(e) / comps[i].size();
      if (best_comp < 0 || avg > best_avg) {
        best_comp = static_cast<int>(i);
        best_avg = avg;
      }
    }
    if (best_comp >= 0) {
      int v_end = rep.path.vertices.back();
      std::vector<int> interior(rep.path.vertices.begin(),
                                rep.path.vertices.end() - 1);
      try {
        PathWitness conn =
            path_to_set(h.without_vertices(interior), v_end, comps[best_comp]);
        int z = conn.vertices.back();
        LongPathResult rec = long_path_impl(k.induced(comps[best_comp]), z, cfg,
                                            rng, depth - 1, bp.d - 1, trace);
        truncated = truncated || rec.recursion_truncated;
        auto [realized, consumed] =
            realize_fake_edges(rec.path, rw, detours, bp, knobs);
        PathWitness rerouted =
            reroute_avoiding(h, rep.path, detours, consumed, std::nullopt, bp,
                             knobs);
        std::vector<int> full = rerouted.vertices;
        full.insert(full.end(), conn.vertices.begin() + 1, conn.vertices.end());
        full.insert(full.end(), realized.vertices.begin() + 1,
                    realized.vertices.end());
        if (check_path(h, full)) {
          bool cert = rep.certified && rec.certified &&
                      static_cast<double>(full.size() - 1) >= phi_d;
          stitched = Candidate{{std::move(full), "stitch"}, cert, truncated};
          trace_kv(trace, "stage=stitch length=" +
                              std::to_string(stitched.path.length()) +
                              " certified=" + std::to_string(stitched.certified));
        } else {
          trace_kv(trace, "stage=stitch failed=check_path");
        }
      } catch (const Error& e) {
        trace_kv(trace, std::string("stage=stitch degraded=") +
                            error_kind_name(e.kind()));
      }
    } else {
      trace_kv(trace, "stage=stitch skipped=empty_k");
    }
    candidates.push_back(std::move(stitched));
  } catch (const NotDFullError&) {
    throw;  // handled by the extraction loop above us
  } catch (const Error& e) {
    trace_kv(trace, std::string("stage=good_path failed=") +
                        error_kind_name(e.kind()));
  }

  Candidate best;
  bool have = false;
  for (auto& c : candidates) {
    if (!check_path(h, c.path.vertices) || c.path.vertices.front() != w) continue;
    if (!have || c.path.length() > best.path.length() ||
        (c.path.length() == best.path.length() && c.certified && !best.certified)) {
      best = std::move(c);
      have = true;
    }
  }
  if (!have || static_cast<double>(best.path.length()) < std::max(1.0, phi_d)) {
    PathWitness greedy = greedy_longest_path(h, w, cfg.greedy_node_budget);
    if (!have || greedy.length() > best.path.length())
      best = Candidate{std::move(greedy), false, truncated};
  }
  best.truncated = best.truncated || truncated;
  return best;
}

}  // namespace

LongPathResult long_path_impl(const Digraph& g, int v, const PipelineConfig& cfg,
                              Rng& rng, int depth, double d_cap,
                              TraceLog* trace) {
  if (v < 0 || v >= g.vertex_count() || !g.vertex_alive(v))
    throw Error(ErrorKind::VertexOutOfRange, std::to_string(v));
  LongPathResult res;
  if (g.edge_count() == 0) {
    res.path = PathWitness{{v}, "trivial"};
    res.branch = "trivial";
    return res;
  }

  const double d = std::min(g.average_degree(), d_cap);
  if (d <= 0) {
    res.path = PathWitness{{v}, "trivial"};
    res.branch = "trivial";
    return res;
  }
  BoundParams bp = cfg.bound_params(d);
  res.d_used = d;
  res.phi_d = phi(bp);
  trace_kv(trace, "stage=enter n=" + std::to_string(g.live_vertex_count()) +
                      " m=" + std::to_string(g.edge_count()) +
                      " d=" + std::to_string(d) +
                      " phi=" + std::to_string(res.phi_d) +
                      " depth=" + std::to_string(depth));

  if (depth <= 0) {
    res.path = greedy_longest_path(g, v, cfg.greedy_node_budget);
    res.branch = "greedy_fallback";
    res.recursion_truncated = true;
    trace_kv(trace, "stage=depth_limit length=" +
                        std::to_string(res.path.length()));
    return res;
  }

  Digraph core = extract_d_full(g, d, cfg.dfull_budget);
  Candidate inner;
  PathWitness approach;
  for (int round = 0;; ++round) {
    approach = path_to_set(g, v, core.live_vertices());
    int w = approach.vertices.back();
    trace_kv(trace, "stage=core e=" + std::to_string(core.edge_count()) +
                        " support=" + std::to_string(core.support_size()) +
                        " w=" + std::to_string(w));
    try {
      inner = pipeline_inside(core, w, bp, cfg, rng, depth, trace);
      break;
    } catch (const NotDFullError& e) {
      if (round >= 8) {
        inner = Candidate{greedy_longest_path(core, w, cfg.greedy_node_budget),
                          false, false};
        break;
      }
      // the witness is denser than the claimed core; restart inside it
      trace_kv(trace, "stage=refuted_fullness witness_size=" +
                          std::to_string(e.component.size()));
      core = extract_d_full(core.induced(e.component), d, cfg.dfull_budget);
    }
  }

  std::vector<int> full = approach.vertices;
  full.insert(full.end(), inner.path.vertices.begin() + 1,
              inner.path.vertices.end());
  assert(check_path(g, full));
  res.path = PathWitness{std::move(full), inner.path.branch_tag};
  res.certified = inner.certified &&
                  static_cast<double>(res.path.length()) >= res.phi_d;
  res.branch = inner.path.branch_tag;
  res.recursion_truncated = inner.truncated;
  trace_kv(trace, "stage=result branch=" + res.branch +
                      " length=" + std::to_string(res.path.length()) +
                      " certified=" + std::to_string(res.certified) +
                      " truncated=" + std::to_string(res.recursion_truncated));
  return res;
}

LongPathResult long_path_from(const Digraph& g, int v, const PipelineConfig& cfg,
                              Rng& rng, TraceLog* trace) {
  if (!is_eulerian(g)) throw Error(ErrorKind::NotEulerian, "long_path_from");
  if (!is_connected_underlying(g))
    throw Error(ErrorKind::NotConnected, "long_path_from");
  return long_path_impl(g, v, cfg, rng, cfg.dichotomy_recursion_limit,
                        std::numeric_limits<double>::infinity(), trace);
}

}  // namespace eulerpath
