#include "tpack/arcs.hpp"

#include <algorithm>
#include <deque>

#include "tpack/errors.hpp"
#include "tpack/flow.hpp"

namespace tpack {

namespace {

std::string terminal_super(const EndId& e) { return "$t:" + e; }

std::set<VertexId> component_of(const MultiGraph& g, const std::set<EdgeId>& cut,
                                const VertexId& seed) {
  std::set<VertexId> comp{seed};
  std::vector<VertexId> stack{seed};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (std::size_t ei : g.incident(v)) {
      const auto& e = g.edges()[ei];
      if (cut.count(e.id)) continue;
      const VertexId& w = e.u == v ? e.v : e.u;
      if (comp.insert(w).second) stack.push_back(w);
    }
  }
  return comp;
}

std::vector<TerminalRef> terminal_refs(const TerminalSpec& t) {
  std::vector<TerminalRef> out;
  for (const VertexId& v : t.vertex_terminals) out.push_back(TerminalRef::of_vertex(v));
  for (const EndId& e : t.end_terminals) out.push_back(TerminalRef::of_end(e));
  return out;
}

// Stage-n minor at one radius: previous components contracted to $t: supers.
struct StageView {
  TruncatedGraph W;
  ContractionMinor minor;
  bool usable = false;
  std::vector<std::set<VertexId>> components;  // C_i for i < n, window-level
};

StageView stage_view(const LFGraphPresentation& g, unsigned radius,
                     const std::vector<StageCut>& prev) {
  StageView sv;
  sv.W = window(g, radius);
  std::vector<std::set<VertexId>> classes;
  std::vector<VertexId> names;
  for (const StageCut& sc : prev) {
    auto it = sv.W.end_region.find(sc.end);
    if (it == sv.W.end_region.end()) return sv;
    for (const EdgeId& eid : sc.cut.edge_set) {
      if (!sv.W.graph.has_edge(eid)) return sv;
    }
    auto comp = component_of(sv.W.graph, sc.cut.edge_set, it->second);
    classes.push_back(comp);
    names.push_back(terminal_super(sc.end));
  }
  // previous components must be pairwise disjoint in this window
  std::set<VertexId> seen;
  for (const auto& cls : classes) {
    for (const VertexId& v : cls) {
      if (!seen.insert(v).second) return sv;
    }
  }
  sv.components = classes;
  sv.minor = contract(sv.W.graph, classes, names);
  sv.usable = true;
  return sv;
}

}  // namespace

std::vector<StageCut> compute_separating_cuts(const LFGraphPresentation& g,
                                              const TerminalSpec& t, unsigned r,
                                              const PipelineOptions& opts) {
  auto discrete = check_discrete(g, t, opts.r_max);
  for (const EndId& e : t.end_terminals) {
    if (discrete.at(e).status != DiscreteVerdict::Status::Discrete) {
      nlohmann::json w;
      w["end"] = e;
      w["evidence"] = discrete.at(e).evidence;
      throw Error(ErrorKind::Precondition, "terminal end " + e + " is not certified discrete",
                  w);
    }
  }

  std::vector<StageCut> stages;
  for (const EndId& omega : t.end_terminals) {
    nlohmann::json trail = nlohmann::json::array();
    std::optional<std::size_t> prev_value;
    unsigned prev_radius = 0;
    bool done = false;
    for (unsigned radius = std::max(r, 1u); radius <= opts.r_max && !done; ++radius) {
      StageView sv = stage_view(g, radius, stages);
      if (!sv.usable) {
        prev_value.reset();
        continue;
      }
      auto region_it = sv.W.end_region.find(omega);
      if (region_it == sv.W.end_region.end()) {
        prev_value.reset();
        continue;
      }
      VertexId src = sv.minor.class_map.count(region_it->second)
                         ? sv.minor.class_map.at(region_it->second)
                         : region_it->second;
      std::set<VertexId> sinks;
      bool visible = true;
      for (const VertexId& v : t.vertex_terminals) {
        if (!sv.minor.minor.has_vertex(v)) {
          visible = false;
          break;
        }
        sinks.insert(v);
      }
      for (const StageCut& sc : stages) sinks.insert(terminal_super(sc.end));
      for (const EndId& other : t.end_terminals) {
        if (other == omega) continue;
        bool already = false;
        for (const StageCut& sc : stages) {
          if (sc.end == other) already = true;
        }
        if (already) continue;
        auto it = sv.W.end_region.find(other);
        if (it == sv.W.end_region.end()) {
          visible = false;
          break;
        }
        VertexId img = sv.minor.class_map.count(it->second)
                           ? sv.minor.class_map.at(it->second)
                           : it->second;
        sinks.insert(img);
      }
      if (!visible || sinks.count(src)) {
        prev_value.reset();
        continue;
      }
      MinCutResult mc = min_cut(sv.minor.minor, {src}, sinks);
      trail.push_back({{"radius", radius}, {"value", mc.value}});
      std::optional<Cut> cert;
      if (prev_value && *prev_value == mc.value && prev_radius + 1 == radius) {
        cert = interior_certificate(sv.W, sv.minor.minor, {src}, sinks, radius - 1,
                                    mc.value);
      }
      if (cert) {
        StageCut sc;
        sc.end = omega;
        sc.cut = *cert;
        sc.radius = radius;
        sc.component = component_of(sv.W.graph, cert->edge_set, region_it->second);
        sc.stage_minor = std::move(sv.minor);
        stages.push_back(std::move(sc));
        done = true;
      } else {
        prev_value = mc.value;
        prev_radius = radius;
      }
    }
    if (!done) {
      throw Error(ErrorKind::Unstabilized,
                  "separating cut for end " + omega + " did not stabilize",
                  nlohmann::json{{"end", omega}, {"values", trail}});
    }
  }
  return stages;
}

FinalMinor build_final_minor(const LFGraphPresentation& g, const TerminalSpec& t,
                             const std::vector<StageCut>& stages, unsigned radius) {
  FinalMinor fm;
  fm.window = window(g, radius);
  std::vector<std::set<VertexId>> classes;
  std::vector<VertexId> names;
  for (const StageCut& sc : stages) {
    auto it = fm.window.end_region.find(sc.end);
    if (it == fm.window.end_region.end()) {
      throw Error(ErrorKind::Internal, "end region for " + sc.end + " missing at radius " +
                                           std::to_string(radius));
    }
    classes.push_back(component_of(fm.window.graph, sc.cut.edge_set, it->second));
    names.push_back(terminal_super(sc.end));
  }
  // pairwise disjointness of the C_n (asserted, not assumed)
  std::set<VertexId> seen;
  for (const auto& cls : classes) {
    for (const VertexId& v : cls) {
      if (!seen.insert(v).second) {
        throw Error(ErrorKind::Internal, "components C_n are not pairwise disjoint at " + v);
      }
    }
  }
  for (const VertexId& v : t.vertex_terminals) {
    if (seen.count(v)) {
      throw Error(ErrorKind::Internal,
                  "vertex terminal " + v + " fell inside a contracted component");
    }
    if (!fm.window.graph.has_vertex(v)) {
      throw Error(ErrorKind::Domain,
                  "vertex terminal " + v + " not within radius " + std::to_string(radius));
    }
  }
  fm.minor = contract(fm.window.graph, classes, names);
  for (const VertexId& v : t.vertex_terminals) {
    fm.terminal_image[v] = v;
    fm.terminal_vertices.insert(v);
  }
  for (const StageCut& sc : stages) {
    fm.terminal_image[sc.end] = terminal_super(sc.end);
    fm.terminal_vertices.insert(terminal_super(sc.end));
  }
  return fm;
}

namespace {

bool is_nonterminal_super(const VertexId& v, const std::set<VertexId>& terminal_supers) {
  return !v.empty() && v[0] == '$' && !terminal_supers.count(v);
}

// A packed path through a non-terminal region super-vertex must become a real
// walk: splice in a path through the region's explored vertices, avoiding
// edges other reroutes already took. Region-internal edges are invisible to
// the window, so they cannot collide with the packed edges themselves.
void splice_region(const LFGraphPresentation& g, const TruncatedGraph& W, Path& p,
                   std::size_t i, std::set<EdgeId>& used) {
  const VertexId super = p.verts[i];
  auto mem_it = W.region_members.find(super);
  if (mem_it == W.region_members.end()) {
    throw Error(ErrorKind::Internal, "no explored members for region " + super);
  }
  std::set<VertexId> members(mem_it->second.begin(), mem_it->second.end());
  VertexId entry, exit;
  for (const auto& [eid, w] : g.adjacency(p.verts[i - 1])) {
    if (eid == p.edges[i - 1]) entry = w;
  }
  for (const auto& [eid, w] : g.adjacency(p.verts[i + 1])) {
    if (eid == p.edges[i]) exit = w;
  }
  if (!members.count(entry) || !members.count(exit)) {
    throw Error(ErrorKind::Internal, "region traversal endpoints not in " + super);
  }
  // BFS inside the region over unused edges
  std::map<VertexId, std::pair<VertexId, EdgeId>> parent;
  std::deque<VertexId> q{entry};
  parent[entry] = {entry, ""};
  bool found = entry == exit;
  while (!q.empty() && !found) {
    VertexId v = q.front();
    q.pop_front();
    for (const auto& [eid, w] : g.adjacency(v)) {
      if (!members.count(w) || used.count(eid) || parent.count(w)) continue;
      parent[w] = {v, eid};
      if (w == exit) {
        found = true;
        break;
      }
      q.push_back(w);
    }
  }
  if (!found) {
    throw Error(ErrorKind::Unstabilized,
                "no edge-disjoint route through region " + super +
                    " at this radius; raise the window");
  }
  std::vector<VertexId> seg{exit};
  std::vector<EdgeId> seg_edges;
  while (seg.back() != entry) {
    auto [pv, pe] = parent.at(seg.back());
    seg_edges.push_back(pe);
    seg.push_back(pv);
  }
  std::reverse(seg.begin(), seg.end());
  std::reverse(seg_edges.begin(), seg_edges.end());
  used.insert(seg_edges.begin(), seg_edges.end());

  std::vector<VertexId> verts(p.verts.begin(), p.verts.begin() + i);
  verts.insert(verts.end(), seg.begin(), seg.end());
  verts.insert(verts.end(), p.verts.begin() + i + 1, p.verts.end());
  std::vector<EdgeId> edges(p.edges.begin(), p.edges.begin() + i);
  edges.insert(edges.end(), seg_edges.begin(), seg_edges.end());
  edges.insert(edges.end(), p.edges.begin() + i, p.edges.end());
  p.verts = std::move(verts);
  p.edges = std::move(edges);
}

void check_premise(const LFGraphPresentation& g, const TerminalSpec& t, unsigned r,
                   const PipelineOptions& opts) {
  if (opts.via_inner_eulerian) {
    EndsVerdict v = is_inner_eulerian_with_ends(g, t, opts.r_max);
    if (v.status != EndsVerdict::Status::True) {
      nlohmann::json w;
      w["route"] = "inner_eulerian_with_ends";
      if (v.witness) w["witness"] = v.witness->token();
      w["note"] = v.note;
      throw Error(ErrorKind::Precondition, "inner-Eulerian premise not certified: " + v.note,
                  w);
    }
    return;
  }
  // Exhaustive cut-parity verification when the window is small enough,
  // otherwise the inner-Eulerian sufficient condition.
  try {
    CutParityVerdict cp = check_cut_parity_premise(g, t, r, opts.premise_guard);
    if (cp.status == CutParityVerdict::Status::False) {
      nlohmann::json w;
      w["route"] = "cut_parity_enumeration";
      w["odd_cut"] = std::vector<EdgeId>(cp.odd_witness->edge_set.begin(),
                                         cp.odd_witness->edge_set.end());
      w["side"] = std::vector<VertexId>(cp.odd_witness->side_b.begin(),
                                        cp.odd_witness->side_b.end());
      throw Error(ErrorKind::Precondition,
                  "cut-parity premise fails: odd cut with T on one side", w);
    }
    return;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Domain) throw;  // guard refusal falls through
  }
  EndsVerdict v = is_inner_eulerian_with_ends(g, t, opts.r_max);
  if (v.status == EndsVerdict::Status::True) return;
  nlohmann::json w;
  w["route"] = "fallback";
  if (v.witness) w["witness"] = v.witness->token();
  throw Error(ErrorKind::Precondition,
              "premise not verifiable: window too large to enumerate and "
              "inner-Eulerian-with-ends did not certify (" +
                  v.note + ")",
              w);
}

Arc finite_path_arc(const Path& p) {
  Arc a;
  a.kind = Arc::Kind::FinitePath;
  a.verts = p.verts;
  a.edges = p.edges;
  a.from = TerminalRef::of_vertex(p.verts.front());
  a.to = TerminalRef::of_vertex(p.verts.back());
  return a;
}

Path reversed(const Path& p) {
  Path r;
  r.verts.assign(p.verts.rbegin(), p.verts.rend());
  r.edges.assign(p.edges.rbegin(), p.edges.rend());
  return r;
}

}  // namespace

std::pair<ArcSystem, PipelineState> assemble_arcs(const LFGraphPresentation& g,
                                                  const TerminalSpec& t, unsigned r,
                                                  unsigned depth,
                                                  const PipelineOptions& opts) {
  if (!t.families.empty()) {
    throw Error(ErrorKind::Domain,
                "arc assembly needs a finite terminal set; families are check-only");
  }
  if (t.vertex_terminals.size() + t.end_terminals.size() < 2) {
    throw Error(ErrorKind::Domain, "arc assembly needs at least two terminals");
  }
  check_premise(g, t, r, opts);

  PipelineState state;
  state.end_order = t.end_terminals;
  state.stages = compute_separating_cuts(g, t, r, opts);

  unsigned radius = std::max(r, 1u);
  for (const StageCut& sc : state.stages) radius = std::max(radius, sc.radius);

  // Pack on the truncated G_k. Paths may cross non-terminal region
  // super-vertices; those traversals are replaced by real routes through the
  // regions' explored vertices. When the routes do not fit at this radius,
  // deepen the window and retry.
  FinalMinor fm;
  std::optional<std::pair<PathSystem, PackingCertificate>> packed;
  std::vector<Path> routable;
  for (int attempt = 0; attempt < 4; ++attempt) {
    fm = build_final_minor(g, t, state.stages, radius);
    TerminalSet tset{fm.terminal_vertices};
    auto result = pack_tpaths(fm.minor.minor, tset);
    routable = result.first.paths;
    std::set<EdgeId> reroute_used;
    bool routed = true;
    try {
      for (Path& p : routable) {
        for (std::size_t i = 1; i + 1 < p.verts.size();) {
          if (is_nonterminal_super(p.verts[i], fm.terminal_vertices)) {
            splice_region(g, fm.window, p, i, reroute_used);
          } else {
            ++i;
          }
        }
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Unstabilized || attempt == 3) throw;
      routed = false;
    }
    if (routed) {
      packed = std::move(result);
      break;
    }
    radius *= 2;
  }
  if (!packed) {
    throw Error(ErrorKind::Unstabilized,
                "packing keeps routing through unmaterialized regions; raise the radius");
  }
  state.final_radius = radius;
  state.final_window = fm.window;
  state.final_minor = fm.minor;
  state.terminal_image = fm.terminal_image;
  state.packing = packed->first;
  state.packing_cert = packed->second;

  // λ profile of the infinite instance, stabilized independently of the minor.
  auto refs = terminal_refs(t);
  for (const TerminalRef& ref : refs) {
    std::vector<TerminalRef> rest;
    for (const TerminalRef& other : refs) {
      if (other.token() != ref.token()) rest.push_back(other);
    }
    LambdaEndResult lr = lambda_end(g, ref, rest, opts.r_max);
    state.lambda[ref.token()] = lr.value;
    std::size_t minor_lambda = state.packing_cert.lambda_profile.at(
        state.terminal_image.at(ref.token()));
    if (minor_lambda != lr.value) {
      throw Error(ErrorKind::Internal,
                  "minor lambda (" + std::to_string(minor_lambda) +
                      ") disagrees with the stabilized lambda (" + std::to_string(lr.value) +
                      ") at " + ref.token());
    }
  }

  // Ray systems per cut, one ray per cut edge.
  std::map<EndId, std::map<EdgeId, std::size_t>> start_index;
  for (const StageCut& sc : state.stages) {
    RaySystem rs = ray_system_against_cut(g, sc.cut.edge_set, sc.end, depth);
    start_index[sc.end] = start_edge_index(rs, rs.against);
    state.ray_systems.emplace(sc.end, std::move(rs));
  }

  auto end_of_super = [&](const VertexId& v) -> std::optional<EndId> {
    for (const StageCut& sc : state.stages) {
      if (terminal_super(sc.end) == v) return sc.end;
    }
    return std::nullopt;
  };

  ArcSystem arcs;
  for (const Path& p : routable) {
    auto front_end = end_of_super(p.verts.front());
    auto back_end = end_of_super(p.verts.back());
    if (p.edges.size() == 1 && front_end && back_end) {
      // single edge between two contraction vertices: the double-ray exception
      const EdgeId& e = p.edges.front();
      const RaySystem& rn = state.ray_systems.at(*front_end);
      const RaySystem& rm = state.ray_systems.at(*back_end);
      const Path& ray_n = rn.rays[start_index.at(*front_end).at(e)];
      const Path& ray_m = rm.rays[start_index.at(*back_end).at(e)];
      if (ray_n.verts.size() < 2 || ray_m.verts.size() < 2 ||
          ray_n.verts[0] != ray_m.verts[1] || ray_n.verts[1] != ray_m.verts[0]) {
        throw Error(ErrorKind::Internal, "double-ray rays do not meet across edge " + e);
      }
      Arc a;
      a.kind = Arc::Kind::DoubleRay;
      Path left = reversed(ray_n);
      a.verts = left.verts;
      a.edges = left.edges;
      a.verts.insert(a.verts.end(), ray_m.verts.begin() + 2, ray_m.verts.end());
      a.edges.insert(a.edges.end(), ray_m.edges.begin() + 1, ray_m.edges.end());
      a.from = TerminalRef::of_end(*front_end);
      a.to = TerminalRef::of_end(*back_end);
      a.materialized_depth = static_cast<unsigned>(
          std::min(ray_n.verts.size(), ray_m.verts.size()));
      arcs.arcs.push_back(std::move(a));
      continue;
    }
    Path body = p;
    TerminalRef from = TerminalRef::of_vertex(body.verts.front());
    TerminalRef to = TerminalRef::of_vertex(body.verts.back());
    unsigned depth_seen = 0;
    if (front_end) {
      const Path& ray = state.ray_systems.at(*front_end)
                            .rays[start_index.at(*front_end).at(body.edges.front())];
      if (ray.verts.front() != body.verts[1]) {
        throw Error(ErrorKind::Internal, "front ray does not start at the path's S-vertex");
      }
      Path rev = reversed(ray);
      Path glued;
      glued.verts = rev.verts;
      glued.edges = rev.edges;
      glued.verts.insert(glued.verts.end(), body.verts.begin() + 2, body.verts.end());
      glued.edges.insert(glued.edges.end(), body.edges.begin() + 1, body.edges.end());
      body = std::move(glued);
      from = TerminalRef::of_end(*front_end);
      depth_seen = static_cast<unsigned>(ray.verts.size());
    }
    if (back_end) {
      const Path& ray = state.ray_systems.at(*back_end)
                            .rays[start_index.at(*back_end).at(body.edges.back())];
      if (ray.verts.front() != body.verts[body.verts.size() - 2]) {
        throw Error(ErrorKind::Internal, "back ray does not start at the path's S-vertex");
      }
      body.verts.pop_back();
      body.edges.pop_back();
      body.verts.insert(body.verts.end(), ray.verts.begin() + 1, ray.verts.end());
      body.edges.insert(body.edges.end(), ray.edges.begin(), ray.edges.end());
      to = TerminalRef::of_end(*back_end);
      depth_seen = depth_seen == 0 ? static_cast<unsigned>(ray.verts.size())
                                   : std::min(depth_seen,
                                              static_cast<unsigned>(ray.verts.size()));
    }
    Arc a;
    a.kind = front_end || back_end
                 ? (front_end && back_end ? Arc::Kind::DoubleRay : Arc::Kind::Ray)
                 : Arc::Kind::FinitePath;
    if (a.kind == Arc::Kind::FinitePath) {
      a = finite_path_arc(body);
    } else {
      a.verts = body.verts;
      a.edges = body.edges;
      a.from = from;
      a.to = to;
      a.materialized_depth = depth_seen;
    }
    arcs.arcs.push_back(std::move(a));
  }

  // three disjointness laws, asserted independently
  {
    std::set<EdgeId> used;
    for (const Arc& a : arcs.arcs) {
      for (const EdgeId& e : a.edges) {
        if (!used.insert(e).second) {
          throw Error(ErrorKind::Internal, "arcs share edge " + e);
        }
      }
      std::set<VertexId> distinct(a.verts.begin(), a.verts.end());
      if (distinct.size() != a.verts.size()) {
        throw Error(ErrorKind::Internal, "an assembled arc repeats a vertex");
      }
    }
  }

  for (const Arc& a : arcs.arcs) {
    arcs.counts[a.from.token()]++;
    arcs.counts[a.to.token()]++;
  }
  for (const auto& [token, lam] : state.lambda) {
    std::size_t got = arcs.counts.count(token) ? arcs.counts.at(token) : 0;
    if (got != lam) {
      throw Error(ErrorKind::Internal, "arc count at " + token + " (" + std::to_string(got) +
                                           ") differs from lambda (" + std::to_string(lam) +
                                           ")");
    }
  }
  return {std::move(arcs), std::move(state)};
}

MuResult mu_estimate(const LFGraphPresentation& g, const TerminalRef& t,
                     const TerminalSpec& rest, unsigned r, const PipelineOptions& opts) {
  // rest vertex terminals (explicit and family) are usable only as arc
  // endpoints: they are cut out of the window and their incident edges become
  // unit arcs into the sink.
  std::vector<std::function<bool(const VertexId&)>> member_tests;
  for (const std::string& fname : rest.families) {
    const VertexFamily& fam = g.family(fname);
    member_tests.push_back(fam.contains);
  }
  std::set<VertexId> explicit_sinks = rest.vertex_terminals;
  VertexId tv = t.is_end ? VertexId{} : t.vertex;
  auto excluded = [member_tests, explicit_sinks, tv](const VertexId& v) {
    if (!tv.empty() && v == tv) return false;
    if (explicit_sinks.count(v)) return true;
    for (const auto& test : member_tests) {
      if (test(v)) return true;
    }
    return false;
  };

  auto mu_at = [&](unsigned radius) -> std::optional<std::size_t> {
    WindowOptions wo;
    wo.exclude = excluded;
    TruncatedGraph W = window(g, radius, wo);

    std::optional<VertexId> src;
    if (t.is_end) {
      auto it = W.end_region.find(t.end);
      if (it != W.end_region.end()) src = it->second;
    } else {
      if (W.graph.has_vertex(t.vertex)) src = t.vertex;
    }
    if (!src) return std::nullopt;

    std::set<VertexId> sink_regions;
    for (const EndId& e : rest.end_terminals) {
      auto it = W.end_region.find(e);
      if (it == W.end_region.end()) return std::nullopt;
      if (it->second == *src) return std::nullopt;  // not separated yet
      sink_regions.insert(it->second);
    }

    flow::Network net(0);
    std::map<VertexId, int> index;
    for (const VertexId& v : W.graph.vertices()) {
      // non-terminal end regions stay out: they are unmaterialized territory
      if (W.is_super(v) && v != *src && !sink_regions.count(v)) continue;
      index[v] = net.add_vertex();
    }
    const auto& edges = W.graph.edges();
    for (std::size_t ei = 0; ei < edges.size(); ++ei) {
      auto iu = index.find(edges[ei].u);
      auto iv = index.find(edges[ei].v);
      if (iu == index.end() || iv == index.end()) continue;
      net.add_undirected(iu->second, iv->second, 1, static_cast<int>(ei));
    }
    int sink = net.add_vertex();
    int big = static_cast<int>(W.graph.edge_count()) + 2;
    for (const VertexId& reg : sink_regions) {
      net.add_directed(index.at(reg), sink, big, -1);
    }
    for (const auto& [v, stubs] : W.excluded_stubs) {
      auto iv = index.find(v);
      if (iv == index.end()) continue;
      for (std::size_t k = 0; k < stubs.size(); ++k) {
        net.add_directed(iv->second, sink, 1, -1);
      }
    }
    return static_cast<std::size_t>(net.max_flow(index.at(*src), sink));
  };

  MuResult res;
  res.radius = r;
  auto here = mu_at(r);
  if (!here) {
    throw Error(ErrorKind::Unstabilized,
                "mu: terminals not separated or not visible at radius " + std::to_string(r));
  }
  res.value = *here;
  auto next = mu_at(r + 1);
  res.stabilized = next && *next == *here;
  (void)opts;
  return res;
}

ValidityReport verify_arc_system(const LFGraphPresentation& g, const TerminalSpec& t,
                                 const ArcSystem& a, const PipelineState& state,
                                 unsigned r) {
  ValidityReport rep;
  auto complain = [&rep](std::string msg) { rep.violations.push_back(std::move(msg)); };

  std::set<EdgeId> used;
  for (std::size_t ai = 0; ai < a.arcs.size(); ++ai) {
    const Arc& arc = a.arcs[ai];
    std::string tag = "arc " + std::to_string(ai);
    if (arc.verts.size() != arc.edges.size() + 1 || arc.edges.empty()) {
      complain(tag + ": malformed");
      continue;
    }
    for (const EdgeId& e : arc.edges) {
      if (!used.insert(e).second) complain("edge " + e + " used by two arcs");
    }
    // materialized edges must join consecutive vertices in g
    for (std::size_t i = 0; i < arc.edges.size(); ++i) {
      bool found = false;
      for (const auto& [eid, w] : g.adjacency(arc.verts[i])) {
        if (eid == arc.edges[i] && w == arc.verts[i + 1]) found = true;
      }
      if (!found) {
        complain(tag + ": edge " + arc.edges[i] + " does not join " + arc.verts[i] +
                 " and " + arc.verts[i + 1]);
      }
    }
    std::set<VertexId> distinct(arc.verts.begin(), arc.verts.end());
    if (distinct.size() != arc.verts.size()) complain(tag + ": repeats a vertex");

    // endpoints and inner T-avoidance
    std::size_t lo = 0, hi = arc.verts.size();
    if (!arc.from.is_end) {
      if (!t.vertex_terminals.count(arc.verts.front())) {
        complain(tag + ": front endpoint " + arc.verts.front() + " is not a terminal");
      }
      lo = 1;
    }
    if (!arc.to.is_end) {
      if (!t.vertex_terminals.count(arc.verts.back())) {
        complain(tag + ": back endpoint " + arc.verts.back() + " is not a terminal");
      }
      hi -= 1;
    }
    for (std::size_t i = lo; i < hi; ++i) {
      if (t.vertex_terminals.count(arc.verts[i])) {
        complain(tag + ": inner vertex " + arc.verts[i] + " is a terminal");
      }
    }
    // tails of infinite arcs live in their claimed ends' window components
    auto check_tail = [&](const TerminalRef& ref, const VertexId& tail_vertex) {
      if (!ref.is_end) return;
      for (unsigned rho : {std::max(1u, r / 2), r}) {
        TruncatedGraph W = window(g, rho);
        auto it = W.end_region.find(ref.end);
        if (it == W.end_region.end()) continue;
        auto mem = W.region_members.find(it->second);
        if (mem == W.region_members.end()) continue;
        if (W.graph.has_vertex(tail_vertex) && !W.is_super(tail_vertex)) continue;
        if (!std::binary_search(mem->second.begin(), mem->second.end(), tail_vertex)) {
          complain(tag + ": tail vertex " + tail_vertex + " is outside the component of " +
                   ref.end + " at radius " + std::to_string(rho));
        }
      }
    };
    check_tail(arc.from, arc.verts.front());
    check_tail(arc.to, arc.verts.back());
  }

  // per-terminal counts equal the certified lambda values
  for (const auto& [token, lam] : state.lambda) {
    std::size_t got = a.counts.count(token) ? a.counts.at(token) : 0;
    if (got != lam) {
      complain("terminal " + token + ": " + std::to_string(got) + " arcs, lambda is " +
               std::to_string(lam));
    }
  }

  // the finite packing and its cuts certify on the minor
  TerminalSet tset;
  for (const auto& [token, image] : state.terminal_image) {
    (void)token;
    tset.terminals.insert(image);
  }
  ValidityReport inner =
      verify_packing(state.final_minor.minor, tset, state.packing, state.packing_cert);
  for (const auto& v : inner.violations) rep.violations.push_back("minor packing: " + v);

  // every certificate cut lifts to a t-(T\{t}) cut of g of the same size
  for (const auto& [token, image] : state.terminal_image) {
    auto itc = state.packing_cert.per_terminal_cuts.find(image);
    if (itc == state.packing_cert.per_terminal_cuts.end()) continue;
    const Cut& cut = itc->second;
    if (!state.lambda.count(token) || cut.edge_set.size() != state.lambda.at(token)) {
      complain("lifted cut for " + token + " does not have size lambda");
      continue;
    }
    const TruncatedGraph& W = state.final_window;
    VertexId seed;
    bool is_end_terminal = t.has_end(token);
    if (is_end_terminal) {
      auto it = W.end_region.find(token);
      if (it == W.end_region.end()) continue;
      seed = it->second;
    } else {
      seed = token;
    }
    auto side = component_of(W.graph, cut.edge_set, seed);
    for (const auto& [other, other_image] : state.terminal_image) {
      (void)other_image;
      if (other == token) continue;
      VertexId other_seed = t.has_end(other) ? W.end_region.at(other) : other;
      if (side.count(other_seed)) {
        complain("lifted cut for " + token + " does not separate it from " + other);
      }
    }
  }
  return rep;
}

std::string arc_kind_name(Arc::Kind k) {
  switch (k) {
    case Arc::Kind::FinitePath:
      return "finite-path";
    case Arc::Kind::Ray:
      return "ray";
    default:
      return "double-ray";
  }
}

nlohmann::json arc_system_to_json(const ArcSystem& a, const PipelineState& state) {
  nlohmann::json doc;
  auto endpoint = [](const TerminalRef& ref) {
    nlohmann::json e;
    e["kind"] = ref.is_end ? "end" : "vertex";
    e["id"] = ref.token();
    return e;
  };
  auto& arcs = doc["arcs"] = nlohmann::json::array();
  for (const Arc& arc : a.arcs) {
    nlohmann::json aj;
    aj["kind"] = arc_kind_name(arc.kind);
    aj["endpoints"] = {endpoint(arc.from), endpoint(arc.to)};
    aj["edges"] = arc.edges;
    if (arc.kind != Arc::Kind::FinitePath) aj["materialized_depth"] = arc.materialized_depth;
    arcs.push_back(std::move(aj));
  }
  doc["counts"] = a.counts;
  doc["lambda"] = state.lambda;
  nlohmann::json pipeline;
  auto& cuts = pipeline["cuts"] = nlohmann::json::array();
  auto& comps = pipeline["components"] = nlohmann::json::array();
  for (const StageCut& sc : state.stages) {
    cuts.push_back({{"end", sc.end},
                    {"edges", std::vector<EdgeId>(sc.cut.edge_set.begin(),
                                                  sc.cut.edge_set.end())},
                    {"radius", sc.radius}});
    comps.push_back({{"end", sc.end},
                     {"vertices", std::vector<VertexId>(sc.component.begin(),
                                                        sc.component.end())}});
  }
  pipeline["minor_terminals"] = state.terminal_image;
  pipeline["radius"] = state.final_radius;
  auto& rays = pipeline["rays"] = nlohmann::json::object();
  for (const auto& [end, rs] : state.ray_systems) {
    rays[end] = ray_system_to_json(rs);
  }
  doc["pipeline"] = std::move(pipeline);
  return doc;
}

}  // namespace tpack
