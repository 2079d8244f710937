#include "eulerpath/lab.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace eulerpath {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  size_t b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!trim(cur).empty()) parts.push_back(trim(cur));
  return parts;
}

}  // namespace

std::string GeneratorSpec::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Cycle: out << "cycle(" << n << ")"; break;
    case Kind::Blowup: out << "blowup(" << k << "," << t << ")"; break;
    case Kind::Complete: out << "complete(" << n << ")"; break;
    case Kind::SharedVertexTriangles:
      out << "shared_vertex_triangles(" << count << ")";
      break;
    case Kind::RandomCycleUnion:
      out << "random_cycle_union(" << n << "," << cycles << "," << max_len;
      if (has_seed) out << "," << seed;
      out << ")";
      break;
  }
  return out.str();
}

std::string GeneratorSpec::params_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Cycle: out << n; break;
    case Kind::Blowup: out << k << ";" << t; break;
    case Kind::Complete: out << n; break;
    case Kind::SharedVertexTriangles: out << count; break;
    case Kind::RandomCycleUnion:
      out << n << ";" << cycles << ";" << max_len;
      break;
  }
  return out.str();
}

GeneratorSpec GeneratorSpec::parse(const std::string& text) {
  std::string s = trim(text);
  size_t open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw Error(ErrorKind::BadParams, "expected kind(args): " + text);
  std::string name = trim(s.substr(0, open));
  std::string args_str = s.substr(open + 1, s.size() - open - 2);
  std::vector<long long> args;
  for (const auto& tok : split_top_level(args_str, ','))
    try {
      args.push_back(std::stoll(tok));
    } catch (...) {
      throw Error(ErrorKind::BadParams, "bad generator argument: " + tok);
    }

  GeneratorSpec spec;
  auto want = [&](size_t lo, size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw Error(ErrorKind::BadParams, "wrong argument count for " + name);
  };
  if (name == "cycle") {
    want(1, 1);
    spec.kind = Kind::Cycle;
    spec.n = static_cast<int>(args[0]);
  } else if (name == "blowup") {
    want(2, 2);
    spec.kind = Kind::Blowup;
    spec.k = static_cast<int>(args[0]);
    spec.t = static_cast<int>(args[1]);
  } else if (name == "complete") {
    want(1, 1);
    spec.kind = Kind::Complete;
    spec.n = static_cast<int>(args[0]);
  } else if (name == "shared_vertex_triangles") {
    want(1, 1);
    spec.kind = Kind::SharedVertexTriangles;
    spec.count = static_cast<int>(args[0]);
  } else if (name == "random_cycle_union") {
    want(3, 4);
    spec.kind = Kind::RandomCycleUnion;
    spec.n = static_cast<int>(args[0]);
    spec.cycles = static_cast<int>(args[1]);
    spec.max_len = static_cast<int>(args[2]);
    if (args.size() == 4) {
      spec.seed = static_cast<std::uint64_t>(args[3]);
      spec.has_seed = true;
    }
  } else {
    throw Error(ErrorKind::BadParams, "unknown generator: " + name);
  }
  return spec;
}

Digraph generate(const GeneratorSpec& spec, std::uint64_t seed_override,
                 bool use_override) {
  std::vector<std::pair<int, int>> edges;
  switch (spec.kind) {
    case GeneratorSpec::Kind::Cycle: {
      if (spec.n < 2) throw Error(ErrorKind::BadParams, "cycle needs n >= 2");
      for (int i = 0; i < spec.n; ++i) edges.emplace_back(i, (i + 1) % spec.n);
      return Digraph::from_edges(spec.n, edges);
    }
    case GeneratorSpec::Kind::Blowup: {
      if (spec.k < 2 || spec.t < 1)
        throw Error(ErrorKind::BadParams, "blowup needs k >= 2, t >= 1");
      const int n = spec.k * spec.t;
      for (int layer = 0; layer < spec.k; ++layer)
        for (int a = 0; a < spec.t; ++a)
          for (int b = 0; b < spec.t; ++b)
            edges.emplace_back(layer * spec.t + a,
                               ((layer + 1) % spec.k) * spec.t + b);
      return Digraph::from_edges(n, edges);
    }
    case GeneratorSpec::Kind::Complete: {
      if (spec.n < 2) throw Error(ErrorKind::BadParams, "complete needs n >= 2");
      for (int u = 0; u < spec.n; ++u)
        for (int v = 0; v < spec.n; ++v)
          if (u != v) edges.emplace_back(u, v);
      return Digraph::from_edges(spec.n, edges);
    }
    case GeneratorSpec::Kind::SharedVertexTriangles: {
      if (spec.count < 1)
        throw Error(ErrorKind::BadParams, "shared_vertex_triangles needs count >= 1");
      for (int i = 0; i < spec.count; ++i) {
        int a = 2 * i + 1, b = 2 * i + 2;
        edges.emplace_back(0, a);
        edges.emplace_back(a, b);
        edges.emplace_back(b, 0);
      }
      return Digraph::from_edges(2 * spec.count + 1, edges);
    }
    case GeneratorSpec::Kind::RandomCycleUnion: {
      if (spec.n < 2 || spec.cycles < 1 || spec.max_len < 2)
        throw Error(ErrorKind::BadParams,
                    "random_cycle_union needs n >= 2, cycles >= 1, max_len >= 2");
      Rng rng(use_override ? seed_override : spec.seed);
      std::set<std::pair<int, int>> present;
      for (int c = 0; c < spec.cycles; ++c) {
        int local_max = std::min(spec.max_len, spec.n);
        int rejections = 0;
        for (;;) {
          int len = 2 + static_cast<int>(rng.below(local_max - 1));
          // ordered sample without replacement
          std::vector<int> verts;
          std::vector<char> used(spec.n, 0);
          for (int i = 0; i < len; ++i) {
            int pick = static_cast<int>(rng.below(spec.n - i));
            int v = -1;
            for (int x = 0; x < spec.n; ++x)
              if (!used[x] && pick-- == 0) {
                v = x;
                break;
              }
            used[v] = 1;
            verts.push_back(v);
          }
          bool clash = false;
          for (int i = 0; i < len && !clash; ++i)
            clash = present.count({verts[i], verts[(i + 1) % len]}) > 0;
          if (!clash) {
            for (int i = 0; i < len; ++i)
              present.insert({verts[i], verts[(i + 1) % len]});
            break;
          }
          if (++rejections >= 100) {
            if (local_max > 2) {
              --local_max;
              rejections = 0;
            } else {
              break;  // saturated; skip this cycle
            }
          }
        }
      }
      edges.assign(present.begin(), present.end());
      return Digraph::from_edges(spec.n, edges);
    }
  }
  throw Error(ErrorKind::BadParams, "unreachable generator kind");
}

namespace {

struct CompactGraph {
  std::vector<int> ids;                  // compact -> original
  std::vector<std::vector<int>> out;     // compact adjacency
  std::vector<std::vector<int>> in;
};

CompactGraph compact(const Digraph& g, int cap, const char* who) {
  if (g.live_vertex_count() > cap)
    throw Error(ErrorKind::TooLarge, std::string(who) + ": n=" +
                                         std::to_string(g.live_vertex_count()) +
                                         " above cap " + std::to_string(cap));
  CompactGraph c;
  std::vector<int> compact_of(g.vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.vertex_alive(v)) {
      compact_of[v] = static_cast<int>(c.ids.size());
      c.ids.push_back(v);
    }
  c.out.resize(c.ids.size());
  c.in.resize(c.ids.size());
  for (size_t i = 0; i < c.ids.size(); ++i) {
    g.for_each_out(c.ids[i], [&](int w) { c.out[i].push_back(compact_of[w]); });
    g.for_each_in(c.ids[i], [&](int w) { c.in[i].push_back(compact_of[w]); });
  }
  return c;
}

}  // namespace

int oracle_longest_path_from(const Digraph& g, int v, int cap) {
  if (v < 0 || v >= g.vertex_count() || !g.vertex_alive(v))
    throw Error(ErrorKind::VertexOutOfRange, std::to_string(v));
  CompactGraph c = compact(g, cap, "oracle_longest_path_from");
  const int k = static_cast<int>(c.ids.size());
  int src = -1;
  for (int i = 0; i < k; ++i)
    if (c.ids[i] == v) src = i;

  std::vector<std::int16_t> memo(static_cast<size_t>(k) << k, -1);
  // longest extension from (last, visited); plain exhaustive DP
  auto rec = [&](auto&& self, int last, std::uint32_t mask) -> int {
    auto& slot = memo[(static_cast<size_t>(last) << k) + mask];
    if (slot >= 0) return slot;
    int best = 0;
    for (int w : c.out[last])
      if (!(mask >> w & 1))
        best = std::max(best, 1 + self(self, w, mask | (1u << w)));
    slot = static_cast<std::int16_t>(best);
    return best;
  };
  return rec(rec, src, 1u << src);
}

int oracle_longest_cycle(const Digraph& g, int cap) {
  CompactGraph c = compact(g, cap, "oracle_longest_cycle");
  const int k = static_cast<int>(c.ids.size());
  int best = 0;
  // paths with a fixed minimum vertex s; closing edge back to s
  for (int s = 0; s < k; ++s) {
    std::vector<std::vector<char>> reach(
        1u << (k - s), std::vector<char>(k, 0));
    // masks are over vertices s..k-1, shifted down by s
    reach[1][s] = 1;
    for (std::uint32_t mask = 1; mask < (1u << (k - s)); ++mask)
      for (int last = s; last < k; ++last) {
        if (!reach[mask][last]) continue;
        for (int w : c.out[last]) {
          if (w == s) best = std::max(best, __builtin_popcount(mask));
          if (w > s && !(mask >> (w - s) & 1)) {
            std::uint32_t nm = mask | (1u << (w - s));
            reach[nm][w] = 1;
          }
        }
      }
  }
  return best;
}

std::vector<std::uint64_t> enumerate_simple_cycles(const Digraph& g,
                                                   std::size_t max_cycles) {
  if (g.store_edge_count() > 64)
    throw Error(ErrorKind::TooLarge, "more than 64 edges");
  std::vector<std::uint64_t> cycles;
  std::vector<int> path;
  std::vector<char> on_path(g.vertex_count(), 0);
  std::uint64_t edge_mask = 0;

  auto dfs = [&](auto&& self, int s, int v) -> void {
    for (int w : g.out_neighbors(v)) {
      if (w == s) {
        std::uint64_t full = edge_mask | (1ull << g.edge_id(v, s));
        cycles.push_back(full);
        if (cycles.size() > max_cycles)
          throw Error(ErrorKind::TooLarge,
                      "more than " + std::to_string(max_cycles) +
                          " simple cycles");
        continue;
      }
      if (w < s || on_path[w]) continue;
      on_path[w] = 1;
      path.push_back(w);
      edge_mask |= 1ull << g.edge_id(v, w);
      self(self, s, w);
      edge_mask &= ~(1ull << g.edge_id(v, w));
      path.pop_back();
      on_path[w] = 0;
    }
  };

  for (int s = 0; s < g.vertex_count(); ++s) {
    if (!g.vertex_alive(s)) continue;
    on_path[s] = 1;
    dfs(dfs, s, s);
    on_path[s] = 0;
  }
  return cycles;
}

void for_each_eulerian_edge_subset(const Digraph& g, std::size_t max_cycles,
                                   const std::function<void(std::uint64_t)>& fn) {
  auto cycles = enumerate_simple_cycles(g, max_cycles);
  const size_t k = cycles.size();
  if (k == 0) return;
  if (k >= 25)
    throw Error(ErrorKind::TooLarge,
                "2^" + std::to_string(k) + " cycle subsets");

  const int m = g.store_edge_count();
  std::vector<int> tails(m), heads(m);
  for (int e = 0; e < m; ++e) {
    tails[e] = g.edge_tail(e);
    heads[e] = g.edge_head(e);
  }
  std::unordered_set<std::uint64_t> seen;
  std::vector<int> bal(g.vertex_count(), 0);
  for (std::uint64_t sub = 1; sub < (1ull << k); ++sub) {
    std::uint64_t onion = 0;
    for (size_t i = 0; i < k; ++i)
      if (sub >> i & 1) onion |= cycles[i];
    if (seen.count(onion)) continue;
    seen.insert(onion);
    bool ok = true;
    std::fill(bal.begin(), bal.end(), 0);
    for (std::uint64_t rest = onion; rest;) {
      int e = __builtin_ctzll(rest);
      rest &= rest - 1;
      bal[tails[e]]++;
      bal[heads[e]]--;
    }
    for (std::uint64_t rest = onion; rest && ok;) {
      int e = __builtin_ctzll(rest);
      rest &= rest - 1;
      ok = bal[tails[e]] == 0 && bal[heads[e]] == 0;
    }
    if (ok) fn(onion);
  }
}

DensityOracleResult oracle_max_density_eulerian_subgraph(const Digraph& g,
                                                         std::size_t max_cycles) {
  const int m = g.store_edge_count();
  std::vector<int> tails(m), heads(m);
  for (int e = 0; e < m; ++e) {
    tails[e] = g.edge_tail(e);
    heads[e] = g.edge_head(e);
  }
  bool found = false;
  double best_density = 0;
  std::uint64_t best_mask = 0;
  std::vector<int> best_support;

  for_each_eulerian_edge_subset(g, max_cycles, [&](std::uint64_t mask) {
    std::vector<int> support;
    std::vector<char> seen(g.vertex_count(), 0);
    int edges = 0;
    for (std::uint64_t rest = mask; rest;) {
      int e = __builtin_ctzll(rest);
      rest &= rest - 1;
      ++edges;
      if (!seen[tails[e]]) {
        seen[tails[e]] = 1;
        support.push_back(tails[e]);
      }
      if (!seen[heads[e]]) {
        seen[heads[e]] = 1;
        support.push_back(heads[e]);
      }
    }
    if (support.size() < 2) return;
    std::sort(support.begin(), support.end());
    double density = static_cast<double>(edges) / (support.size() - 1);
    bool take = !found || density > best_density ||
                (density == best_density &&
                 std::lexicographical_compare(support.begin(), support.end(),
                                              best_support.begin(),
                                              best_support.end()));
    if (take) {
      found = true;
      best_density = density;
      best_mask = mask;
      best_support = std::move(support);
    }
  });
  if (!found)
    throw Error(ErrorKind::TooLarge, "no Eulerian subgraph with 2+ vertices");

  std::vector<char> keep(m, 0);
  for (std::uint64_t rest = best_mask; rest;) {
    int e = __builtin_ctzll(rest);
    rest &= rest - 1;
    keep[e] = 1;
  }
  Digraph sub = g.restricted_to_edges(keep).induced(best_support);
  return DensityOracleResult{sub, best_density};
}

ExperimentConfig ExperimentConfig::from_stream(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::string pipeline_lines;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ConfigError,
                  "line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "generators") {
      for (const auto& tok : split_top_level(value, ','))
        cfg.generators.push_back(GeneratorSpec::parse(tok));
    } else if (key == "seeds") {
      for (const auto& tok : split_top_level(value, ',')) {
        size_t dots = tok.find("..");
        if (dots != std::string::npos) {
          std::uint64_t a = std::stoull(trim(tok.substr(0, dots)));
          std::uint64_t b = std::stoull(trim(tok.substr(dots + 2)));
          for (std::uint64_t x = a; x <= b; ++x) cfg.seeds.push_back(x);
        } else {
          cfg.seeds.push_back(std::stoull(tok));
        }
      }
    } else if (key == "oracle") {
      if (value == "on") cfg.oracle_mode = OracleMode::On;
      else if (value == "off") cfg.oracle_mode = OracleMode::Off;
      else if (value == "auto") cfg.oracle_mode = OracleMode::Auto;
      else throw Error(ErrorKind::ConfigError, "oracle must be on|off|auto");
    } else if (key == "oracle_cap") {
      cfg.oracle_cap = std::stoi(value);
    } else if (key == "clock") {
      if (value == "real") cfg.real_clock = true;
      else if (value == "none") cfg.real_clock = false;
      else throw Error(ErrorKind::ConfigError, "clock must be real|none");
    } else {
      pipeline_lines += line + "\n";  // shared key=value format
    }
  }
  if (!pipeline_lines.empty()) {
    std::istringstream ps(pipeline_lines);
    cfg.pipeline = PipelineConfig::from_stream(ps);
  }
  if (cfg.generators.empty())
    throw Error(ErrorKind::ConfigError, "no generators configured");
  if (cfg.seeds.empty()) cfg.seeds.push_back(0);
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open " + path);
  return from_stream(in);
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
  std::vector<ExperimentRecord> records;
  for (size_t gi = 0; gi < cfg.generators.size(); ++gi) {
    const auto& spec = cfg.generators[gi];
    for (std::uint64_t seed : cfg.seeds) {
      const std::uint64_t cell = mix_seed(seed, gi);
      Digraph g = generate(spec, mix_seed(cell, 1),
                           spec.kind == GeneratorSpec::Kind::RandomCycleUnion &&
                               !spec.has_seed);
      // the guarantee is about connected graphs; restrict to the densest
      // component and start from its lowest vertex
      auto comps = underlying_components(g);
      size_t pick = 0;
      double best_avg = -1;
      for (size_t i = 0; i < comps.size(); ++i) {
        long long e = 0;
        for (int v : comps[i]) e += g.out_degree(v);
        double avg = static_cast<double>(e) / comps[i].size();
        if (avg > best_avg) {
          best_avg = avg;
          pick = i;
        }
      }
      Digraph work = g.induced(comps[pick]);
      const int v = comps[pick].front();

      ExperimentRecord rec;
      rec.generator = [&] {
        switch (spec.kind) {
          case GeneratorSpec::Kind::Cycle: return std::string("cycle");
          case GeneratorSpec::Kind::Blowup: return std::string("blowup");
          case GeneratorSpec::Kind::Complete: return std::string("complete");
          case GeneratorSpec::Kind::SharedVertexTriangles:
            return std::string("shared_vertex_triangles");
          case GeneratorSpec::Kind::RandomCycleUnion:
            return std::string("random_cycle_union");
        }
        return std::string("unknown");
      }();
      rec.params = spec.params_string();
      rec.seed = seed;
      rec.n = work.live_vertex_count();
      rec.m = work.edge_count();
      rec.d_measured = work.average_degree();
      rec.phi_d = phi(cfg.pipeline.bound_params(std::max(rec.d_measured, 1e-9)));

      Rng rng(mix_seed(cell, 2));
      auto t0 = std::chrono::steady_clock::now();
      LongPathResult res = long_path_from(work, v, cfg.pipeline, rng);
      auto t1 = std::chrono::steady_clock::now();
      rec.achieved_length = res.path.length();
      rec.certified = res.certified;
      rec.runtime_ms =
          cfg.real_clock
              ? std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
                    .count()
              : 0;
      if (cfg.oracle_mode == ExperimentConfig::OracleMode::On ||
          (cfg.oracle_mode == ExperimentConfig::OracleMode::Auto &&
           rec.n <= cfg.oracle_cap))
        rec.oracle_length = oracle_longest_path_from(work, v, cfg.oracle_cap);

      assert(rec.achieved_length <= rec.n - 1);
      assert(!rec.oracle_length || rec.achieved_length <= *rec.oracle_length);
      records.push_back(std::move(rec));
    }
  }
  return records;
}

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

std::string experiment_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  out << "generator,params,seed,n,m,d_measured,phi_d,achieved,certified,oracle,"
         "runtime_ms\n";
  for (const auto& r : records) {
    out << r.generator << ',' << r.params << ',' << r.seed << ',' << r.n << ','
        << r.m << ',' << fmt_double(r.d_measured) << ',' << fmt_double(r.phi_d)
        << ',' << r.achieved_length << ',' << (r.certified ? "true" : "false")
        << ',';
    if (r.oracle_length) out << *r.oracle_length;
    out << ',' << r.runtime_ms << '\n';
  }
  return out.str();
}

void write_experiment_svg(const std::string& csv_text, std::ostream& out) {
  std::istringstream in(csv_text);
  std::string line;
  std::vector<std::array<double, 3>> rows;  // d, achieved, phi
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (trim(line).empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    for (char ch : line)
      if (ch == ',') {
        f.push_back(cur);
        cur.clear();
      } else cur.push_back(ch);
    f.push_back(cur);
    if (f.size() < 11) throw Error(ErrorKind::InvalidFormat, "short CSV row");
    rows.push_back({std::stod(f[5]), std::stod(f[7]), std::stod(f[6])});
  }
  if (rows.empty()) throw Error(ErrorKind::InvalidFormat, "no data rows");

  double dmax = 0, ymax = 0;
  for (auto& r : rows) {
    dmax = std::max(dmax, r[0]);
    ymax = std::max({ymax, r[1], r[2]});
  }
  dmax = std::max(dmax, 1e-9) * 1.05;
  ymax = std::max(ymax, 1e-9) * 1.05;

  const double W = 640, H = 480, ML = 64, MR = 20, MT = 24, MB = 48;
  auto px = [&](double d) { return ML + d / dmax * (W - ML - MR); };
  auto py = [&](double y) { return H - MB - y / ymax * (H - MT - MB); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR
      << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML
      << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    double d = dmax * i / 5, y = ymax * i / 5;
    out << "<text x=\"" << px(d) << "\" y=\"" << H - MB + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt_double(d)
        << "</text>\n";
    out << "<text x=\"" << ML - 6 << "\" y=\"" << py(y) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_double(y)
        << "</text>\n";
  }
  out << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 10
      << "\" font-size=\"13\" text-anchor=\"middle\">average degree d</text>\n";
  out << "<text x=\"16\" y=\"" << (MT + H - MB) / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (MT + H - MB) / 2 << ")\">path length</text>\n";

  auto sorted = rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  out << "<polyline fill=\"none\" stroke=\"#aa2222\" stroke-width=\"1.5\" points=\"";
  for (auto& r : sorted) out << px(r[0]) << ',' << py(r[2]) << ' ';
  out << "\"/>\n";
  for (auto& r : rows)
    out << "<circle cx=\"" << px(r[0]) << "\" cy=\"" << py(r[1])
        << "\" r=\"3\" fill=\"#3366aa\" fill-opacity=\"0.7\"/>\n";
  out << "<text x=\"" << W - MR - 4 << "\" y=\"" << MT + 12
      << "\" font-size=\"12\" text-anchor=\"end\" fill=\"#aa2222\">phi(d)"
      << "</text>\n";
  out << "</svg>\n";
}

}  // namespace eulerpath
