#include "tpack/lfgraph.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <mutex>
#include <queue>

#include "tpack/errors.hpp"

namespace tpack {

namespace {

struct WindowCache {
  std::mutex mu;
  std::map<std::pair<unsigned, std::size_t>, TruncatedGraph> byr;
};

}  // namespace

LFGraphPresentation::LFGraphPresentation(AdjFn adj, VertexId root,
                                         std::vector<EndDecl> ends)
    : adj_(std::move(adj)),
      root_(std::move(root)),
      ends_(std::move(ends)),
      window_cache_(std::make_shared<WindowCache>()) {}

std::vector<LFGraphPresentation::AdjEntry> LFGraphPresentation::adjacency(
    const VertexId& v) const {
  if (!adj_) throw Error(ErrorKind::Internal, "presentation has no adjacency");
  auto entries = adj_(v);
  std::sort(entries.begin(), entries.end());
  return entries;
}

const EndDecl& LFGraphPresentation::end(const EndId& id) const {
  for (const auto& e : ends_) {
    if (e.id == id) return e;
  }
  throw Error(ErrorKind::Domain, "unknown end: " + id);
}

bool LFGraphPresentation::has_end(const EndId& id) const {
  return std::any_of(ends_.begin(), ends_.end(),
                     [&](const EndDecl& e) { return e.id == id; });
}

const VertexFamily& LFGraphPresentation::family(const std::string& name) const {
  for (const auto& f : families_) {
    if (f.name == name) return f;
  }
  throw Error(ErrorKind::Domain, "unknown vertex family: " + name);
}

LFGraphPresentation presentation_from_graph(const MultiGraph& g) {
  if (g.vertex_count() == 0) {
    throw Error(ErrorKind::Domain, "cannot present an empty graph");
  }
  if (!g.connected()) {
    throw Error(ErrorKind::Domain,
                "presentations must be connected; analyze components separately");
  }
  MultiGraph copy = g;
  auto adj = [copy](const VertexId& v) {
    std::vector<LFGraphPresentation::AdjEntry> out;
    if (!copy.has_vertex(v)) return out;
    for (std::size_t ei : copy.incident(v)) {
      const auto& e = copy.edges()[ei];
      out.push_back({e.id, e.u == v ? e.v : e.u});
    }
    return out;
  };
  LFGraphPresentation p(adj, g.vertices().front(), {});
  p.set_finite(true);
  p.set_ends_complete(true);
  p.set_conclusive_radius(0);
  return p;
}

bool TerminalSpec::has_end(const EndId& e) const {
  return std::find(end_terminals.begin(), end_terminals.end(), e) != end_terminals.end();
}

std::vector<VertexId> TruncatedGraph::supers() const {
  std::set<VertexId> s;
  for (const auto& [end, super] : end_region) {
    (void)end;
    s.insert(super);
  }
  s.insert(nonend_regions.begin(), nonend_regions.end());
  return {s.begin(), s.end()};
}

namespace {

std::string super_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "$%02zu", k);
  return buf;
}

// Scans a declared ray far enough to find where its tail leaves the ball.
// Validates adjacency and distinctness along the scanned prefix; a ray whose
// consecutive vertices are not adjacent makes the presentation invalid.
struct TailScan {
  VertexId first_outside;   // first vertex after the last in-ball visit
  std::size_t index;        // its ray index
};

TailScan scan_tail(const LFGraphPresentation& g, const RayFn& ray,
                   const std::set<VertexId>& ball, unsigned radius) {
  std::size_t horizon = ball.size() + 4 * (radius + 1) + 64;
  std::set<VertexId> seen;
  std::size_t last_in = 0;
  bool any_in = false;
  VertexId prev;
  for (std::size_t i = 0; i <= horizon; ++i) {
    VertexId v = ray(i);
    if (!seen.insert(v).second) {
      throw Error(ErrorKind::Domain,
                  "presentation invalid: ray representative repeats vertex " + v);
    }
    if (i > 0) {
      bool adjacent = false;
      for (const auto& [eid, w] : g.adjacency(prev)) {
        (void)eid;
        if (w == v) {
          adjacent = true;
          break;
        }
      }
      if (!adjacent) {
        throw Error(ErrorKind::Domain, "presentation invalid: ray representative jumps from " +
                                           prev + " to " + v);
      }
    }
    if (ball.count(v)) {
      last_in = i;
      any_in = true;
    }
    prev = v;
  }
  std::size_t start = any_in ? last_in + 1 : 0;
  return {ray(start), start};
}

}  // namespace

TruncatedGraph window_uncached(const LFGraphPresentation& g, unsigned r,
                               const WindowOptions& opts) {
  auto excluded = [&](const VertexId& v) {
    return opts.exclude && opts.exclude(v);
  };

  TruncatedGraph W;
  W.radius = r;

  // Ball by BFS in the full graph; exclusion filters the output, not distances.
  std::map<VertexId, unsigned> dist;
  dist[g.root()] = 0;
  std::deque<VertexId> q{g.root()};
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    unsigned d = dist.at(v);
    if (d == r) continue;
    for (const auto& [eid, w] : g.adjacency(v)) {
      (void)eid;
      if (!dist.count(w)) {
        dist[w] = d + 1;
        q.push_back(w);
      }
    }
  }
  for (const auto& [v, d] : dist) {
    if (!excluded(v)) {
      W.ball.insert(v);
      W.distance[v] = d;
    }
  }

  // Components of G - B_r (minus excluded vertices), explored from the ball
  // boundary with a budget; budget-exhausted components count as infinite.
  // Union-find keeps two probes of one component from splitting it.
  std::map<VertexId, int> comp_of;
  std::vector<int> parent;
  std::vector<char> exhausted;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  std::vector<VertexId> seeds;
  for (const VertexId& v : W.ball) {
    for (const auto& [eid, w] : g.adjacency(v)) {
      (void)eid;
      if (!dist.count(w) && !excluded(w)) seeds.push_back(w);
    }
  }
  for (const VertexId& seed : seeds) {
    if (comp_of.count(seed)) continue;
    int c = static_cast<int>(parent.size());
    parent.push_back(c);
    exhausted.push_back(0);
    comp_of[seed] = c;
    std::deque<VertexId> bfs{seed};
    std::size_t visited = 1;
    while (!bfs.empty()) {
      if (visited > opts.component_budget) {
        exhausted[c] = 1;
        break;
      }
      VertexId v = bfs.front();
      bfs.pop_front();
      for (const auto& [eid, w] : g.adjacency(v)) {
        (void)eid;
        if (dist.count(w) || excluded(w)) continue;
        auto it = comp_of.find(w);
        if (it != comp_of.end()) {
          if (find(it->second) != find(c)) unite(it->second, c);
          continue;
        }
        comp_of[w] = c;
        ++visited;
        bfs.push_back(w);
      }
    }
  }

  // Resolve classes; collect members and exhaustion per class root.
  std::map<int, std::vector<VertexId>> members;
  std::map<int, bool> class_exhausted;
  for (auto& [v, c] : comp_of) {
    int root = find(c);
    members[root].push_back(v);
    class_exhausted[root] = class_exhausted[root] || exhausted[c] != 0;
  }

  // Locate declared end tails before classifying finite/infinite.
  std::map<EndId, int> end_class;
  for (const auto& e : g.ends()) {
    TailScan tail = scan_tail(g, e.ray, W.ball, r);
    auto it = comp_of.find(tail.first_outside);
    if (it == comp_of.end()) {
      if (excluded(tail.first_outside)) {
        // μ-style windows: the declared ray runs through excluded vertices;
        // fall back to a traversable neighbor of the tail.
        int fallback = -1;
        for (std::size_t i = tail.index; i < tail.index + 64 && fallback < 0; ++i) {
          for (const auto& [eid, w] : g.adjacency(e.ray(i))) {
            (void)eid;
            auto jt = comp_of.find(w);
            if (jt != comp_of.end()) {
              fallback = find(jt->second);
              break;
            }
          }
        }
        if (fallback >= 0) {
          end_class[e.id] = fallback;
          continue;
        }
        continue;  // end unreachable in this window; no region entry
      }
      throw Error(ErrorKind::Domain, "presentation invalid: ray tail vertex " +
                                         tail.first_outside + " not reachable from the ball");
    }
    end_class[e.id] = find(it->second);
  }

  // Classify: a class is contracted when it is exhausted or carries a tail;
  // fully explored tail-free classes stay explicit.
  std::map<int, VertexId> super_of;
  std::set<VertexId> kept = W.ball;
  std::size_t next_super = 0;
  for (const auto& [root, verts] : members) {
    bool has_tail = false;
    for (const auto& [eid, c] : end_class) {
      (void)eid;
      if (c == root) has_tail = true;
    }
    if (class_exhausted.at(root) || has_tail) {
      if (!class_exhausted.at(root) && has_tail) {
        throw Error(ErrorKind::Domain,
                    "presentation invalid: a declared ray tail lies in a finite component");
      }
      VertexId name = super_name(next_super++);
      super_of[root] = name;
      auto sorted = verts;
      std::sort(sorted.begin(), sorted.end());
      W.region_members[name] = std::move(sorted);
    } else {
      kept.insert(verts.begin(), verts.end());
    }
  }
  for (const auto& [eid, c] : end_class) W.end_region[eid] = super_of.at(c);
  for (const auto& [root, name] : super_of) {
    bool has_end = false;
    for (const auto& [eid, c] : end_class) {
      (void)eid;
      if (c == root) has_end = true;
    }
    if (!has_end) W.nonend_regions.push_back(name);
  }

  // Assemble the finite graph.
  std::vector<VertexId> verts(kept.begin(), kept.end());
  for (const auto& [root, name] : super_of) {
    (void)root;
    verts.push_back(name);
  }
  std::vector<MultiGraph::Edge> edges;
  std::set<EdgeId> seen_edges;
  for (const VertexId& v : kept) {
    for (const auto& [eid, w] : g.adjacency(v)) {
      if (excluded(w)) {
        W.excluded_stubs[v].push_back(eid);
        continue;
      }
      VertexId target;
      if (kept.count(w)) {
        target = w;
      } else {
        auto it = comp_of.find(w);
        if (it == comp_of.end()) {
          throw Error(ErrorKind::Internal, "window: neighbor " + w + " unclassified");
        }
        target = super_of.at(find(it->second));
      }
      if (seen_edges.insert(eid).second) {
        edges.push_back({eid, v, target});
      }
    }
  }
  W.graph = MultiGraph::make(std::move(verts), std::move(edges));
  return W;
}

TruncatedGraph window(const LFGraphPresentation& g, unsigned r, const WindowOptions& opts) {
  if (opts.exclude || !g.window_cache()) {
    return window_uncached(g, r, opts);  // not cacheable
  }
  auto cache = std::static_pointer_cast<WindowCache>(g.window_cache());
  auto key = std::make_pair(r, opts.component_budget);
  {
    std::lock_guard<std::mutex> lock(cache->mu);
    auto it = cache->byr.find(key);
    if (it != cache->byr.end()) return it->second;
  }
  TruncatedGraph W = window_uncached(g, r, opts);
  {
    std::lock_guard<std::mutex> lock(cache->mu);
    cache->byr.emplace(key, W);
  }
  return W;
}

namespace {

// Window component (super-vertex) where a ray's tail lives, if contracted.
std::optional<VertexId> tail_region(const LFGraphPresentation& g, const TruncatedGraph& W,
                                    const RayFn& ray) {
  TailScan tail = scan_tail(g, ray, W.ball, W.radius);
  for (const auto& [name, verts] : W.region_members) {
    if (std::binary_search(verts.begin(), verts.end(), tail.first_outside)) return name;
  }
  return std::nullopt;
}

}  // namespace

std::map<std::string, DiscreteVerdict> check_discrete(const LFGraphPresentation& g,
                                                      const TerminalSpec& t,
                                                      unsigned r_max) {
  std::map<std::string, DiscreteVerdict> out;
  for (const VertexId& v : t.vertex_terminals) {
    out[v] = {DiscreteVerdict::Status::Discrete, 0,
              {"vertex sets of a locally finite graph are discrete"}};
  }
  for (const std::string& fam : t.families) {
    g.family(fam);
    out["family:" + fam] = {DiscreteVerdict::Status::Discrete, 0,
                            {"vertex sets of a locally finite graph are discrete"}};
  }
  for (const EndId& e : t.end_terminals) {
    g.end(e);
    DiscreteVerdict verdict;
    std::vector<std::string> family_blocks;
    bool family_blocked_everywhere = !t.families.empty();
    bool separated = false;
    for (unsigned r = 1; r <= r_max && !separated; ++r) {
      TruncatedGraph W = window(g, r);
      auto it = W.end_region.find(e);
      if (it == W.end_region.end()) continue;
      const VertexId& mine = it->second;
      bool blocked = false;
      bool family_blocked_here = false;
      for (const EndId& other : t.end_terminals) {
        if (other != e && W.end_region.count(other) && W.end_region.at(other) == mine) {
          blocked = true;
        }
      }
      for (const VertexId& vt : t.vertex_terminals) {
        if (W.graph.has_vertex(vt)) continue;
        auto mem = W.region_members.find(mine);
        if (mem == W.region_members.end()) continue;
        if (std::binary_search(mem->second.begin(), mem->second.end(), vt)) {
          blocked = true;
        } else {
          bool located = false;
          for (const auto& [name, verts] : W.region_members) {
            if (std::binary_search(verts.begin(), verts.end(), vt)) located = true;
          }
          if (!located) blocked = true;  // cannot certify separation yet
        }
      }
      for (const std::string& fname : t.families) {
        const VertexFamily& fam = g.family(fname);
        for (const RayFn& tail : fam.tails) {
          auto reg = tail_region(g, W, tail);
          if (reg && *reg == mine) {
            blocked = true;
            family_blocked_here = true;
            if (r <= 3 || r == r_max) {
              family_blocks.push_back("radius " + std::to_string(r) + ": family '" + fname +
                                      "' has a tail in the window component of " + e);
            }
          }
        }
      }
      if (!family_blocked_here) family_blocked_everywhere = false;
      if (!blocked) {
        verdict.status = DiscreteVerdict::Status::Discrete;
        verdict.radius = r;
        separated = true;
      }
    }
    if (!separated) {
      verdict.radius = r_max;
      if (family_blocked_everywhere && !t.families.empty()) {
        verdict.status = DiscreteVerdict::Status::NotDiscrete;
        verdict.evidence = family_blocks;
      } else {
        verdict.status = DiscreteVerdict::Status::Unknown;
        verdict.evidence.push_back("no separating radius up to " + std::to_string(r_max));
      }
    }
    out[e] = std::move(verdict);
  }
  return out;
}

std::set<EdgeId> window_boundary_edges(const TruncatedGraph& w, unsigned radius) {
  std::set<EdgeId> out;
  for (const auto& e : w.graph.edges()) {
    auto du = w.distance.find(e.u);
    auto dv = w.distance.find(e.v);
    if (du == w.distance.end() || dv == w.distance.end() || du->second > radius ||
        dv->second > radius) {
      out.insert(e.id);
    }
  }
  return out;
}

std::optional<Cut> interior_certificate(const TruncatedGraph& w, const MultiGraph& view,
                                        const std::set<VertexId>& x,
                                        const std::set<VertexId>& y, unsigned radius,
                                        std::size_t target) {
  std::set<EdgeId> boundary = window_boundary_edges(w, radius);
  std::set<EdgeId> uncut;
  for (const auto& e : view.edges()) {
    if (boundary.count(e.id)) uncut.insert(e.id);
  }
  MinCutResult mc = min_cut_avoiding(view, x, y, uncut);
  if (mc.value != target) return std::nullopt;
  for (const EdgeId& eid : mc.cut.edge_set) {
    if (uncut.count(eid)) return std::nullopt;
  }
  return mc.cut;
}

LambdaEndResult lambda_end(const LFGraphPresentation& g, const TerminalRef& t,
                           const std::vector<TerminalRef>& rest, unsigned r_max,
                           const std::vector<std::string>& rest_families) {
  nlohmann::json trail = nlohmann::json::array();
  std::optional<std::size_t> prev_value;
  unsigned prev_radius = 0;
  for (unsigned r = 1; r <= r_max; ++r) {
    TruncatedGraph W = window(g, r);
    std::set<VertexId> sinks;
    bool visible = true;
    VertexId src;
    if (t.is_end) {
      auto it = W.end_region.find(t.end);
      if (it == W.end_region.end()) visible = false;
      else src = it->second;
    } else {
      if (!W.graph.has_vertex(t.vertex)) visible = false;
      else src = t.vertex;
    }
    for (const TerminalRef& ref : rest) {
      if (ref.is_end) {
        auto it = W.end_region.find(ref.end);
        if (it == W.end_region.end()) visible = false;
        else sinks.insert(it->second);
      } else {
        if (!W.graph.has_vertex(ref.vertex)) visible = false;
        else sinks.insert(ref.vertex);
      }
    }
    for (const std::string& fname : rest_families) {
      const VertexFamily& fam = g.family(fname);
      for (const VertexId& v : W.graph.vertices()) {
        if (!W.is_super(v) && fam.contains(v)) sinks.insert(v);
      }
      for (const RayFn& tail : fam.tails) {
        auto reg = tail_region(g, W, tail);
        if (reg) sinks.insert(*reg);
      }
    }
    if (!visible || sinks.empty() || sinks.count(src)) {
      trail.push_back({{"radius", r}, {"skipped", "not separated in this window"}});
      prev_value.reset();
      continue;
    }
    MinCutResult mc = min_cut(W.graph, {src}, sinks);
    trail.push_back({{"radius", r}, {"value", mc.value}});
    if (prev_value && *prev_value == mc.value && prev_radius + 1 == r) {
      auto cert = interior_certificate(W, W.graph, {src}, sinks, r - 1, mc.value);
      if (cert) return {mc.value, *cert, r};
    }
    prev_value = mc.value;
    prev_radius = r;
  }
  throw Error(ErrorKind::Unstabilized,
              "lambda did not stabilize within r_max=" + std::to_string(r_max),
              nlohmann::json{{"values", trail}});
}

std::string parity_name(Parity p) {
  switch (p) {
    case Parity::Even:
      return "even";
    case Parity::Odd:
      return "odd";
    default:
      return "unknown";
  }
}

EndParityResult end_degree_parity(const LFGraphPresentation& g, const EndId& omega,
                                  unsigned r_max) {
  g.end(omega);
  EndParityResult res;
  for (unsigned r = 1; r + 1 <= r_max; ++r) {
    // c_r: stabilized min cut separating the ball B_r from the end, computed
    // on deeper windows so the cut can live beyond radius r.
    std::optional<std::size_t> c_r;
    std::optional<std::size_t> prev;
    unsigned prev_radius = 0;
    for (unsigned R = r + 1; R <= r_max; ++R) {
      TruncatedGraph W = window(g, R);
      auto it = W.end_region.find(omega);
      if (it == W.end_region.end()) break;
      std::set<VertexId> sources;
      for (const auto& [v, d] : W.distance) {
        if (d <= r) sources.insert(v);
      }
      if (sources.count(it->second)) break;
      MinCutResult mc = min_cut(W.graph, sources, {it->second});
      if (prev && *prev == mc.value && prev_radius + 1 == R &&
          interior_certificate(W, W.graph, sources, {it->second}, R - 1, mc.value)) {
        c_r = mc.value;
        break;
      }
      prev = mc.value;
      prev_radius = R;
    }
    if (!c_r) return res;  // unknown
    res.degrees.push_back(*c_r);
    if (res.degrees.size() >= 2) {
      std::size_t a = res.degrees[res.degrees.size() - 2];
      std::size_t b = res.degrees.back();
      if (a % 2 == b % 2) {
        res.parity = b % 2 == 0 ? Parity::Even : Parity::Odd;
        return res;
      }
    }
  }
  return res;
}

EndsVerdict is_inner_eulerian_with_ends(const LFGraphPresentation& g,
                                        const TerminalSpec& t, unsigned r_max) {
  EndsVerdict v;
  auto is_terminal_vertex = [&](const VertexId& x) {
    if (t.vertex_terminals.count(x)) return true;
    for (const std::string& fname : t.families) {
      if (g.family(fname).contains(x)) return true;
    }
    return false;
  };

  TruncatedGraph W = window(g, r_max);
  for (const VertexId& x : W.ball) {
    if (is_terminal_vertex(x)) continue;
    if (g.adjacency(x).size() % 2 != 0) {
      v.status = EndsVerdict::Status::False;
      v.witness = TerminalRef::of_vertex(x);
      v.note = "vertex " + x + " has odd degree";
      return v;
    }
  }
  bool pending = false;
  for (const auto& e : g.ends()) {
    if (t.has_end(e.id)) continue;
    EndParityResult p = end_degree_parity(g, e.id, r_max);
    if (p.parity == Parity::Odd) {
      v.status = EndsVerdict::Status::False;
      v.witness = TerminalRef::of_end(e.id);
      v.note = "end " + e.id + " has odd degree";
      return v;
    }
    if (p.parity == Parity::Unknown) pending = true;
  }
  if (pending) {
    v.status = EndsVerdict::Status::Unknown;
    v.note = "some end parity did not certify within r_max";
    return v;
  }
  if (g.finite()) {
    v.status = EndsVerdict::Status::True;
    return v;
  }
  if (g.conclusive_radius() && r_max >= *g.conclusive_radius() && g.ends_complete()) {
    v.status = EndsVerdict::Status::True;
    v.note = "conclusive at declared radius " + std::to_string(*g.conclusive_radius());
    return v;
  }
  v.status = EndsVerdict::Status::Unknown;
  v.note = "degrees beyond r_max cannot be certified for this presentation";
  return v;
}

namespace {

CutParityVerdict premise_enumerate(const MultiGraph& g, const std::set<VertexId>& forced,
                                   std::size_t vertex_guard, unsigned radius) {
  if (g.vertex_count() > vertex_guard) {
    throw Error(ErrorKind::Domain,
                "cut parity enumeration refuses " + std::to_string(g.vertex_count()) +
                    " vertices (guard " + std::to_string(vertex_guard) + ")");
  }
  std::vector<VertexId> free;
  for (const VertexId& v : g.vertices()) {
    if (!forced.count(v)) free.push_back(v);
  }
  CutParityVerdict verdict;
  verdict.radius = radius;
  std::size_t f = free.size();
  for (std::size_t bits = 1; bits < (std::size_t{1} << f); ++bits) {
    std::set<VertexId> side_b;
    for (std::size_t i = 0; i < f; ++i) {
      if (bits & (std::size_t{1} << i)) side_b.insert(free[i]);
    }
    if (side_b.size() == g.vertex_count()) continue;  // side_a must be nonempty
    std::size_t crossing = 0;
    for (const auto& e : g.edges()) {
      if (side_b.count(e.u) != side_b.count(e.v)) ++crossing;
    }
    if (crossing % 2 != 0) {
      Cut cut;
      cut.side_b = side_b;
      for (const VertexId& v : g.vertices()) {
        if (!side_b.count(v)) cut.side_a.insert(v);
      }
      for (const auto& e : g.edges()) {
        if (side_b.count(e.u) != side_b.count(e.v)) cut.edge_set.insert(e.id);
      }
      verdict.status = CutParityVerdict::Status::False;
      verdict.odd_witness = std::move(cut);
      return verdict;
    }
  }
  verdict.status = CutParityVerdict::Status::True;
  return verdict;
}

}  // namespace

CutParityVerdict check_cut_parity_premise(const LFGraphPresentation& g,
                                          const TerminalSpec& t, unsigned r,
                                          std::size_t vertex_guard) {
  TruncatedGraph W = window(g, r);
  std::set<VertexId> forced;
  for (const VertexId& v : t.vertex_terminals) {
    if (!W.graph.has_vertex(v)) {
      throw Error(ErrorKind::Domain, "terminal " + v + " not within radius " +
                                         std::to_string(r));
    }
    forced.insert(v);
  }
  for (const EndId& e : t.end_terminals) {
    auto it = W.end_region.find(e);
    if (it == W.end_region.end()) {
      throw Error(ErrorKind::Domain, "end " + e + " has no region at radius " +
                                         std::to_string(r));
    }
    forced.insert(it->second);
  }
  for (const std::string& fname : t.families) {
    const VertexFamily& fam = g.family(fname);
    for (const VertexId& v : W.graph.vertices()) {
      if (!W.is_super(v) && fam.contains(v)) forced.insert(v);
    }
    for (const RayFn& tail : fam.tails) {
      auto reg = tail_region(g, W, tail);
      if (reg) forced.insert(*reg);
    }
  }
  return premise_enumerate(W.graph, forced, vertex_guard, r);
}

CutParityVerdict check_cut_parity_premise(const MultiGraph& g, const TerminalSpec& t,
                                          std::size_t vertex_guard) {
  std::set<VertexId> forced = t.vertex_terminals;
  for (const VertexId& v : forced) g.vertex_index(v);
  if (!t.end_terminals.empty()) {
    throw Error(ErrorKind::Domain, "finite graphs have no ends");
  }
  return premise_enumerate(g, forced, vertex_guard, 0);
}

HandshakeResult handshake_check(const LFGraphPresentation& g, unsigned r_max) {
  HandshakeResult res;
  if (g.finite()) {
    TruncatedGraph W = window(g, r_max);
    for (const VertexId& v : W.graph.vertices()) {
      if (W.graph.degree(v) % 2 != 0) res.odd_vertices.push_back(v);
    }
    res.status = HandshakeResult::Status::Even;
    if (res.odd_vertices.size() % 2 != 0) {
      res.status = HandshakeResult::Status::Unknown;
      res.note = "odd total on a finite graph; vertices beyond the window?";
    }
    return res;
  }
  if (!g.conclusive_radius() || r_max < 2 * *g.conclusive_radius()) {
    res.note = "needs r_max >= twice the conclusive radius";
    return res;
  }
  unsigned c = *g.conclusive_radius();
  TruncatedGraph W = window(g, 2 * c);
  bool recurring_odd = false;
  for (const VertexId& v : W.ball) {
    if (g.adjacency(v).size() % 2 == 0) continue;
    if (W.distance.at(v) <= c) {
      res.odd_vertices.push_back(v);
    } else {
      recurring_odd = true;  // odd degrees repeat in the periodic part
    }
  }
  if (recurring_odd) {
    res.status = HandshakeResult::Status::PotentiallyInfinite;
    res.note = "odd vertices recur beyond the conclusive radius";
    return res;
  }
  for (const auto& e : g.ends()) {
    EndParityResult p = end_degree_parity(g, e.id, r_max);
    if (p.parity == Parity::Unknown) {
      res.status = HandshakeResult::Status::Unknown;
      res.note = "end " + e.id + " parity did not certify";
      return res;
    }
    if (p.parity == Parity::Odd) res.odd_ends.push_back(e.id);
  }
  if (!g.ends_complete()) {
    res.status = HandshakeResult::Status::Unknown;
    res.note = "declared ends may be incomplete";
    return res;
  }
  if ((res.odd_vertices.size() + res.odd_ends.size()) % 2 == 0) {
    res.status = HandshakeResult::Status::Even;
  } else {
    res.status = HandshakeResult::Status::Unknown;
    res.note = "odd total: undeclared odd ends or insufficient radius";
  }
  return res;
}

}  // namespace tpack
