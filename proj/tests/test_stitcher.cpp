#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "brute.hpp"
#include "common.hpp"
#include "doctest.h"
#include "eulerpath/lab.hpp"
#include "eulerpath/stitcher.hpp"

using namespace eulerpath;
using namespace testgraphs;

namespace {

// long path 0..10 plus chords 2->7 and 4->9; heavy set fixed as {2,4,6,8}
struct Planted {
  Digraph g;
  PathWitness p;
  DetourSet d;
};

Planted make_planted(double crucial_bound) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 10; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(2, 7);
  edges.emplace_back(4, 9);
  Planted out{Digraph::from_edges(11, edges),
              {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, "test"},
              {}};
  StitchKnobs knobs;
  knobs.window = 2.0;
  knobs.crucial_bound = crucial_bound;
  out.d = build_detour_set(out.g, out.p, {2, 4, 6, 8},
                           {0.01, 1.0 / 40.0, 1.0}, knobs);
  return out;
}

}  // namespace

TEST_CASE("build_detour_set degenerate cases") {
  BoundParams bp{0.01, 1.0 / 40.0, 1.0};
  Digraph g = cycle(6);
  PathWitness p{{0, 1, 2, 3}, "test"};

  DetourSet d = build_detour_set(g, p, {}, bp);
  CHECK(d.y_prime().empty());
  CHECK(d.gaps == std::vector<long long>{3});

  // a single heavy vertex can never have a chord around it
  d = build_detour_set(g, p, {2}, bp);
  CHECK(d.y_prime().empty());
  CHECK(d.gaps == std::vector<long long>{2, 1});
}

TEST_CASE("build_detour_set finds the planted chord") {
  Planted t = make_planted(99.0);
  CHECK(t.d.gaps == std::vector<long long>{2, 2, 2, 2, 2});
  CHECK(t.d.y_prime() == std::vector<int>{4, 6});
  REQUIRE(t.d.chord[1].has_value());
  CHECK(*t.d.chord[1] == std::make_pair(0LL, 2LL));  // 2 -> successor of 6
  REQUIRE(t.d.chord[2].has_value());
  CHECK(*t.d.chord[2] == std::make_pair(1LL, 3LL));  // 4 -> successor of 8
  CHECK(std::count(t.d.crucial.begin(), t.d.crucial.end(), 1) == 0);

  // with the default crucial bound every window sum reaches p/(2 gamma^2)
  Planted crucial = make_planted(5.0);
  CHECK(crucial.d.y_prime().empty());
  CHECK(std::count(crucial.d.crucial.begin(), crucial.d.crucial.end(), 1) == 4);
}

TEST_CASE("detour set segment lengths always sum to the path length") {
  for (int seed = 0; seed < 30; ++seed) {
    Digraph g = random_cycle_union(10, 4, 5, seed).without_isolated();
    auto comps = underlying_components(g);
    if (comps.empty() || comps[0].size() < 4) continue;
    Digraph h = g.induced(comps[0]);
    Rng rng(seed);
    PathWitness p = greedy_longest_path(h, comps[0][0], 10000);
    std::vector<int> y;
    for (size_t i = 0; i < p.vertices.size(); i += 2) y.push_back(p.vertices[i]);
    DetourSet d = build_detour_set(h, p, y, {0.01, 1.0 / 40.0, 1.0});
    long long total = 0;
    for (long long t : d.gaps) total += t;
    CHECK(total == p.length());
  }
}

TEST_CASE("reroute_avoiding identity and planted skip") {
  Planted t = make_planted(99.0);
  StitchKnobs knobs;
  knobs.window = 2.0;
  BoundParams bp{0.01, 1.0 / 40.0, 1.0};

  PathWitness same =
      reroute_avoiding(t.g, t.p, t.d, {}, std::nullopt, bp, knobs);
  CHECK(same.vertices == t.p.vertices);

  PathWitness skipped =
      reroute_avoiding(t.g, t.p, t.d, {4}, std::nullopt, bp, knobs);
  CHECK(skipped.vertices == std::vector<int>{0, 1, 2, 7, 8, 9, 10});
  CHECK(skipped.length() == t.p.length() - 4);
  CHECK(check_path(t.g, skipped.vertices));
}

TEST_CASE("reroute_avoiding ending at z keeps the prefix") {
  Planted t = make_planted(99.0);
  StitchKnobs knobs;
  knobs.window = 2.0;
  knobs.spacing = 1.0;
  BoundParams bp{0.01, 1.0 / 40.0, 1.0};
  // z = vertex 10 (after the last heavy vertex): h = 4, index of 4 is 2
  PathWitness w = reroute_avoiding(t.g, t.p, t.d, {4}, 10, bp, knobs);
  CHECK(w.vertices.back() == 10);
  CHECK(w.vertices == std::vector<int>{0, 1, 2, 7, 8, 9, 10});
}

TEST_CASE("reroute_avoiding validates spacing and membership") {
  Planted t = make_planted(99.0);
  BoundParams bp{0.01, 1.0 / 40.0, 1.0};
  StitchKnobs knobs;
  knobs.window = 2.0;
  knobs.detour_cap = 5.0;

  try {
    reroute_avoiding(t.g, t.p, t.d, {4, 6}, std::nullopt, bp, knobs);
    FAIL("expected PreconditionViolated");  // indices 1 and 2 are adjacent
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }

  StitchKnobs loose = knobs;
  loose.spacing = 0.0;  // now the spacing passes but the chords overlap
  try {
    reroute_avoiding(t.g, t.p, t.d, {4, 6}, std::nullopt, bp, loose);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }

  try {
    reroute_avoiding(t.g, t.p, t.d, {3}, std::nullopt, bp, knobs);
    FAIL("expected PreconditionViolated");  // 3 is not in Y'
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }
}

TEST_CASE("strip_problematic fixtures") {
  BoundParams bp{0.01, 1.0 / 40.0, 1.0};

  // override the meet threshold so nothing qualifies
  Digraph t3 = triangle();
  StitchKnobs lax;
  lax.strip_meet = 5.0;
  CHECK(strip_problematic(t3, {{0, 1}, "t"}, bp, lax).edge_count() == 3);

  // planted: a three-edge path 0->2->3->1 between the endpoints of P
  Digraph g = Digraph::from_edges(4, {{0, 1}, {0, 2}, {2, 3}, {3, 1}});
  StitchKnobs knobs;
  knobs.strip_len = 3.0;
  knobs.strip_meet = 1.0;
  StripDiag diag;
  Digraph h0 = strip_problematic(g, {{0, 1}, "t"}, bp, knobs, &diag);
  CHECK_FALSE(h0.has_edge(0, 2));
  CHECK_FALSE(h0.has_edge(2, 3));
  CHECK_FALSE(h0.has_edge(3, 1));
  CHECK(diag.removed_paths >= 1);
  StripDiag again;
  strip_problematic(h0, {{0, 1}, "t"}, bp, knobs, &again);
  CHECK(again.removed_paths == 0);  // fixpoint

  // P covering the whole graph: every edge is a problematic path at d=1
  Digraph c5 = cycle(5);
  Digraph stripped = strip_problematic(c5, {{0, 1, 2, 3, 4}, "t"}, bp);
  CHECK(stripped.edge_count() == 0);
}

TEST_CASE("strip_problematic keeps off-path vertices balanced") {
  BoundParams bp{0.01, 1.0 / 40.0, 2.0};
  for (int seed = 0; seed < 40; ++seed) {
    Digraph g = random_cycle_union(12, 5, 5, seed).without_isolated();
    auto comps = underlying_components(g);
    if (comps.empty() || comps[0].size() < 4) continue;
    Digraph h = g.induced(comps[0]);
    PathWitness p = greedy_longest_path(h, comps[0][0], 5000);
    Digraph h0 = strip_problematic(h, p, bp);
    std::vector<char> on_path(h.vertex_count(), 0);
    for (int v : p.vertices) on_path[v] = 1;
    for (int v : h0.live_vertices())
      if (!on_path[v]) CHECK(h0.out_degree(v) == h0.in_degree(v));
  }
}

namespace {

DetourSet manual_detours(const Digraph& g, const PathWitness& p,
                         std::vector<int> y) {
  DetourSet d;
  d.p = p.length();
  d.y = std::move(y);
  std::vector<long long> pos(g.vertex_count(), -1);
  for (size_t i = 0; i < p.vertices.size(); ++i) pos[p.vertices[i]] = i;
  for (int v : d.y) d.y_pos.push_back(pos[v]);
  d.crucial.assign(d.y.size(), 0);
  d.in_y_prime.assign(d.y.size(), 1);
  d.chord.assign(d.y.size(), std::nullopt);
  d.gaps.assign(1, d.p);
  return d;
}

}  // namespace

TEST_CASE("rewire replaces a forced two-edge detour") {
  Digraph g = Digraph::from_edges(5, {{0, 1}, {1, 2}, {3, 1}, {1, 4}});
  PathWitness p{{0, 1, 2}, "t"};
  DetourSet d = manual_detours(g, p, {1});
  StitchKnobs knobs;
  knobs.rewire_threshold = 1.0;
  RewiredGraph rw = rewire(g, p, d, {0.01, 1.0 / 40.0, 1.0}, knobs);

  REQUIRE(rw.fakes.size() == 1);
  CHECK(rw.fakes[0].u == 3);
  CHECK(rw.fakes[0].w == 4);
  CHECK(rw.fakes[0].consumed == 1);
  CHECK(rw.fakes[0].candidates == std::vector<int>{1});
  CHECK_FALSE(rw.live.has_edge(3, 1));
  CHECK_FALSE(rw.live.has_edge(1, 4));
  CHECK(rw.live.has_edge(0, 1));
  REQUIRE(rw.log.size() == 1);
  CHECK(rw.log[0].edges_before == 4);
  CHECK(rw.log[0].edges_after == 3);
  CHECK(rw.log[0].balanced_off_path);
}

TEST_CASE("rewire is the identity under the default threshold") {
  Digraph g = Digraph::from_edges(5, {{0, 1}, {1, 2}, {3, 1}, {1, 4}});
  PathWitness p{{0, 1, 2}, "t"};
  DetourSet d = manual_detours(g, p, {1});
  RewiredGraph rw = rewire(g, p, d, {0.01, 1.0 / 40.0, 1.0});
  CHECK(rw.fakes.empty());
  CHECK(rw.live.edge_count() == 4);
}

TEST_CASE("rewire consumes the lowest path index and snapshots candidates") {
  // heavy vertices 1 and 2 both join 3 to 4
  Digraph g = Digraph::from_edges(
      6, {{0, 1}, {1, 2}, {2, 5}, {3, 1}, {1, 4}, {3, 2}, {2, 4}});
  PathWitness p{{0, 1, 2, 5}, "t"};
  DetourSet d = manual_detours(g, p, {1, 2});
  StitchKnobs knobs;
  knobs.rewire_threshold = 2.0;
  RewiredGraph rw = rewire(g, p, d, {0.01, 1.0 / 40.0, 1.0}, knobs);

  REQUIRE(rw.fakes.size() == 1);
  CHECK(rw.fakes[0].consumed == 1);
  CHECK(rw.fakes[0].candidates == std::vector<int>{1, 2});
  CHECK(rw.live.has_edge(3, 2));  // the second detour survives
  CHECK(rw.live.has_edge(2, 4));
}

TEST_CASE("extract_k keeps exactly the off-path cycles") {
  // disjoint cycle {2,3,4} plus a path 0->5->1 between path vertices
  Digraph live = Digraph::from_edges(
      6, {{0, 1}, {0, 5}, {5, 1}, {2, 3}, {3, 4}, {4, 2}});
  RewiredGraph rw;
  rw.base = live;
  rw.live = live;
  rw.on_path.assign(6, 0);
  PathWitness p{{0, 1}, "t"};
  Digraph k = extract_k(rw, p);
  CHECK(k.edge_list() ==
        std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {4, 2}});
  CHECK(is_eulerian(k));
  CHECK(k.out_degree(0) == 0);
  CHECK(k.in_degree(1) == 0);

  // everything incident to the path
  Digraph all_p = Digraph::from_edges(2, {{0, 1}, {1, 0}});
  RewiredGraph rw2;
  rw2.base = all_p;
  rw2.live = all_p;
  rw2.on_path.assign(2, 0);
  CHECK(extract_k(rw2, p).edge_count() == 0);

  // two cycles, one through the path
  Digraph two = Digraph::from_edges(5, {{0, 2}, {2, 0}, {3, 4}, {4, 3}});
  RewiredGraph rw3;
  rw3.base = two;
  rw3.live = two;
  rw3.on_path.assign(5, 0);
  Digraph k3 = extract_k(rw3, PathWitness{{0}, "t"});
  CHECK(k3.edge_list() == std::vector<std::pair<int, int>>{{3, 4}, {4, 3}});
}

TEST_CASE("extract_k rejects unbalanced off-path remainders") {
  Digraph bad = Digraph::from_edges(4, {{0, 2}, {2, 3}});
  RewiredGraph rw;
  rw.base = bad;
  rw.live = bad;
  rw.on_path.assign(4, 0);
  try {
    extract_k(rw, PathWitness{{0}, "t"});
    FAIL("expected BalanceViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BalanceViolated);
  }
}

TEST_CASE("realize_fake_edges fixtures") {
  BoundParams bp{0.01, 1.0 / 40.0, 1.0};
  Digraph g = Digraph::from_edges(
      8, {{0, 1}, {1, 2}, {2, 7}, {3, 1}, {1, 4}, {4, 5}, {5, 2}, {2, 6}});
  PathWitness p{{0, 1, 2, 7}, "t"};
  DetourSet d = manual_detours(g, p, {1, 2});

  RewiredGraph rw;
  rw.base = g;
  rw.live = g;
  rw.on_path.assign(8, 0);
  for (int v : p.vertices) rw.on_path[v] = 1;

  // no fake edges: identity
  auto [same, none] = realize_fake_edges(PathWitness{{4, 5}, "t"}, rw, d, bp);
  CHECK(same.vertices == std::vector<int>{4, 5});
  CHECK(none.empty());

  // one fake edge with a single candidate
  rw.fakes.push_back({3, 4, {1}, 1});
  StitchKnobs knobs;
  knobs.detour_cap = 5.0;
  auto [one, used] = realize_fake_edges(PathWitness{{3, 4}, "t"}, rw, d, bp, knobs);
  CHECK(one.vertices == std::vector<int>{3, 1, 4});
  CHECK(used == std::vector<int>{1});

  // two fakes with overlapping candidates must consume distinct vertices
  rw.fakes.push_back({5, 6, {1, 2}, 1});
  rw.fakes[0].candidates = {1, 2};
  knobs.spacing = 0.0;
  auto [both, pair_used] =
      realize_fake_edges(PathWitness{{3, 4, 5, 6}, "t"}, rw, d, bp, knobs);
  CHECK(both.vertices == std::vector<int>{3, 1, 4, 5, 2, 6});
  CHECK(pair_used == std::vector<int>{1, 2});

  knobs.detour_cap = 1.0;
  try {
    realize_fake_edges(PathWitness{{3, 4, 5, 6}, "t"}, rw, d, bp, knobs);
    FAIL("expected TooManyFakeEdges");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooManyFakeEdges);
  }

  knobs.detour_cap = 5.0;
  rw.fakes[0].candidates = {1};
  rw.fakes[1].candidates = {1};
  try {
    realize_fake_edges(PathWitness{{3, 4, 5, 6}, "t"}, rw, d, bp, knobs);
    FAIL("expected NoFeasibleDetour");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoFeasibleDetour);
  }
}

TEST_CASE("wind_cycle_from splices a walk with a full cycle traversal") {
  PathWitness w = wind_cycle_from(triangle(), 0, {0, 1, 2});
  CHECK(w.vertices == std::vector<int>{0, 1, 2});

  Digraph g = bowtie();
  w = wind_cycle_from(g, 1, {0, 3, 4});
  CHECK(check_path(g, w.vertices));
  CHECK(w.vertices.front() == 1);
  CHECK(w.length() >= 3);
}

TEST_CASE("long_path_from walks the full cycle") {
  PipelineConfig cfg;
  for (int n : {4, 7, 12}) {
    Rng rng(17);
    LongPathResult res = long_path_from(cycle(n), 0, cfg, rng);
    CHECK(res.path.length() == n - 1);
    CHECK(res.path.vertices.front() == 0);
  }
}

TEST_CASE("long_path_from matches the oracle maximum on the bowtie") {
  PipelineConfig cfg;
  Rng rng(23);
  LongPathResult res = long_path_from(bowtie(), 0, cfg, rng);
  CHECK(res.path.length() == 2);
  CHECK(res.path.length() == oracle_longest_path_from(bowtie(), 0));
}

TEST_CASE("long_path_from on a blowup stays within the oracle bound") {
  Digraph b = blowup(6, 3);
  PipelineConfig cfg;
  Rng rng(5);
  LongPathResult res = long_path_from(b, 0, cfg, rng);
  CHECK(check_path(b, res.path.vertices));
  CHECK(res.path.vertices.front() == 0);
  CHECK(res.path.length() >= 1);
  CHECK(res.path.length() <= 17);
  CHECK(res.phi_d == doctest::Approx(0.01 * std::pow(3.0, 0.525)));
}

TEST_CASE("long_path_from is replay stable and oracle bounded on small graphs") {
  PipelineConfig cfg;
  for (int seed = 0; seed < 30; ++seed) {
    Digraph g = random_cycle_union(9, 3, 5, seed).without_isolated();
    auto comps = underlying_components(g);
    if (comps.empty() || comps[0].size() < 2) continue;
    Digraph h = g.induced(comps[0]);
    int v = comps[0][0];
    Rng rng1(seed), rng2(seed);
    LongPathResult a = long_path_from(h, v, cfg, rng1);
    LongPathResult b = long_path_from(h, v, cfg, rng2);
    CHECK(a.path.vertices == b.path.vertices);
    CHECK(check_path(h, a.path.vertices));
    CHECK(a.path.vertices.front() == v);
    if (h.out_degree(v) > 0) CHECK(a.path.length() >= 1);
    CHECK(a.path.length() <= brute::longest_path_from(h, v));
  }
}

TEST_CASE("long_path_from validates its preconditions") {
  PipelineConfig cfg;
  Rng rng(1);
  try {
    long_path_from(path3(), 0, cfg, rng);
    FAIL("expected NotEulerian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotEulerian);
  }
  Digraph two = Digraph::from_edges(
      6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  try {
    long_path_from(two, 0, cfg, rng);
    FAIL("expected NotConnected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotConnected);
  }
}

TEST_CASE("long_path_from emits a branch trace") {
  PipelineConfig cfg;
  Rng rng(3);
  TraceLog trace;
  long_path_from(blowup(4, 2), 0, cfg, rng, &trace);
  CHECK_FALSE(trace.lines.empty());
  bool has_result = false;
  for (const auto& line : trace.lines)
    if (line.find("stage=result") != std::string::npos) has_result = true;
  CHECK(has_result);
}

TEST_CASE("rewiring ledger identities hold on forced pipelines") {
  BoundParams bp{0.01, 1.0 / 40.0, 2.0};
  StitchKnobs knobs;
  knobs.rewire_threshold = 1.0;
  for (int seed = 0; seed < 40; ++seed) {
    Digraph g = random_cycle_union(12, 5, 4, seed).without_isolated();
    auto comps = underlying_components(g);
    if (comps.empty() || comps[0].size() < 4) continue;
    Digraph h = g.induced(comps[0]);
    PathWitness p = greedy_longest_path(h, comps[0][0], 5000);
    if (p.length() < 2) continue;
    std::vector<int> y(p.vertices.begin() + 1, p.vertices.end() - 1);
    Digraph h0 = strip_problematic(h, p, bp);
    DetourSet d = manual_detours(h0, p, y);
    RewiredGraph rw = rewire(h0, p, d, bp, knobs);
    long long expect = h0.edge_count();
    for (const auto& step : rw.log) {
      CHECK(step.edges_before == expect);
      CHECK(step.edges_after == expect - 1);
      CHECK(step.balanced_off_path);
      expect = step.edges_after;
    }
    CHECK(rw.edge_count_with_fakes() ==
          h0.edge_count() - (long long)rw.log.size());
  }
}
