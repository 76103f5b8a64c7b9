#include "tpack/rays.hpp"

#include <algorithm>

#include "tpack/errors.hpp"
#include "tpack/flow.hpp"

namespace tpack {

namespace {

// Stabilized min cut between a finite vertex set and an end: consecutive radii
// agree and the certificate lies strictly inside the smaller ball.
struct StableCut {
  std::size_t value = 0;
  Cut cut;
  unsigned radius = 0;
};

StableCut stabilize_source_cut(const LFGraphPresentation& g, const std::set<VertexId>& s,
                               const EndId& omega, unsigned r_max) {
  nlohmann::json trail = nlohmann::json::array();
  std::optional<std::size_t> prev;
  unsigned prev_radius = 0;
  for (unsigned r = 1; r <= r_max; ++r) {
    TruncatedGraph W = window(g, r);
    auto it = W.end_region.find(omega);
    if (it == W.end_region.end()) continue;
    bool visible = true;
    for (const VertexId& v : s) {
      if (!W.graph.has_vertex(v) || W.is_super(v)) visible = false;
    }
    if (!visible) {
      prev.reset();
      continue;
    }
    MinCutResult mc = min_cut(W.graph, s, {it->second});
    trail.push_back({{"radius", r}, {"value", mc.value}});
    if (prev && *prev == mc.value && prev_radius + 1 == r) {
      auto cert = interior_certificate(W, W.graph, s, {it->second}, r - 1, mc.value);
      if (cert) return {mc.value, *cert, r};
    }
    prev = mc.value;
    prev_radius = r;
  }
  throw Error(ErrorKind::Unstabilized,
              "S-omega cut did not stabilize within r_max=" + std::to_string(r_max),
              nlohmann::json{{"values", trail}});
}

struct RayNet {
  flow::Network net{0};
  std::vector<VertexId> verts;           // dense index -> window vertex
  std::map<VertexId, int> index;
  int src = -1;
  int sink = -1;
};

// Network over the window restricted to `allowed` vertices, real edges only,
// skipping `banned_edges`. The ω-region super is the sink.
RayNet build_ray_net(const TruncatedGraph& W, const std::set<VertexId>& allowed,
                     const std::set<EdgeId>& banned_edges, const VertexId& region) {
  RayNet rn;
  for (const VertexId& v : W.graph.vertices()) {
    if (!allowed.count(v)) continue;
    rn.index[v] = rn.net.add_vertex();
    rn.verts.push_back(v);
  }
  const auto& edges = W.graph.edges();
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    const auto& e = edges[ei];
    if (banned_edges.count(e.id)) continue;
    auto iu = rn.index.find(e.u);
    auto iv = rn.index.find(e.v);
    if (iu == rn.index.end() || iv == rn.index.end()) continue;
    rn.net.add_undirected(iu->second, iv->second, 1, static_cast<int>(ei));
  }
  rn.src = rn.net.add_vertex();
  rn.sink = rn.index.at(region);
  return rn;
}

Path trace_to_path(const TruncatedGraph& W, const RayNet& rn,
                   const flow::Network::TracedPath& tr, std::size_t skip_front) {
  Path p;
  for (std::size_t i = skip_front; i + 1 < tr.vertices.size(); ++i) {
    p.verts.push_back(rn.verts[tr.vertices[i]]);
  }
  for (std::size_t i = skip_front; i + 1 < tr.pairs.size(); ++i) {
    int label = rn.net.pair_label(tr.pairs[i]);
    p.edges.push_back(W.graph.edges()[label].id);
  }
  return p;
}

void check_simple(const Path& ray) {
  std::set<VertexId> seen(ray.verts.begin(), ray.verts.end());
  if (seen.size() != ray.verts.size()) {
    throw Error(ErrorKind::Internal, "ray materialization revisits a vertex");
  }
}

unsigned min_depth(const std::vector<Path>& rays) {
  std::size_t d = rays.empty() ? 0 : rays.front().verts.size();
  for (const auto& r : rays) d = std::min(d, r.verts.size());
  return static_cast<unsigned>(d);
}

}  // namespace

RaySystem max_ray_system(const LFGraphPresentation& g, const std::set<VertexId>& s,
                         const EndId& omega, unsigned depth, const RayBuildOptions& opts) {
  if (s.empty()) throw Error(ErrorKind::Domain, "max_ray_system: empty source set");
  g.end(omega);
  StableCut sc = stabilize_source_cut(g, s, omega, opts.r_max);

  unsigned build_r = sc.radius + depth + 4;
  TruncatedGraph W = window(g, build_r);
  auto region_it = W.end_region.find(omega);
  if (region_it == W.end_region.end()) {
    throw Error(ErrorKind::Internal, "end region vanished at larger radius");
  }
  const VertexId& region = region_it->second;

  // all real vertices plus the target region; other supers are unmaterialized
  // territory and stay out of the network
  std::set<VertexId> allowed;
  for (const VertexId& v : W.graph.vertices()) {
    if (!W.is_super(v) || v == region) allowed.insert(v);
  }
  RayNet rn = build_ray_net(W, allowed, {}, region);
  int big = static_cast<int>(W.graph.edge_count()) + 1;
  for (const VertexId& v : s) {
    rn.net.add_directed(rn.src, rn.index.at(v), big, -1);
  }
  std::size_t flow = static_cast<std::size_t>(rn.net.max_flow(rn.src, rn.sink));
  if (flow != sc.value) {
    throw Error(ErrorKind::Unstabilized,
                "flow at depth radius (" + std::to_string(flow) +
                    ") differs from the stabilized cut (" + std::to_string(sc.value) + ")");
  }

  RaySystem rs;
  rs.source_set = s;
  rs.end = omega;
  rs.claimed_size = sc.value;
  rs.stabilization_radius = sc.radius;
  rs.built_radius = build_r;
  rs.against = sc.cut;
  for (const auto& tr : rn.net.decompose(rn.src, rn.sink)) {
    Path p = trace_to_path(W, rn, tr, 1);
    // a ray has precisely its first vertex in S: trim at the last S-visit
    std::size_t last = 0;
    for (std::size_t i = 0; i < p.verts.size(); ++i) {
      if (s.count(p.verts[i])) last = i;
    }
    p.verts.erase(p.verts.begin(), p.verts.begin() + last);
    p.edges.erase(p.edges.begin(), p.edges.begin() + last);
    check_simple(p);
    rs.rays.push_back(std::move(p));
  }
  if (rs.rays.size() != rs.claimed_size) {
    throw Error(ErrorKind::Internal, "ray decomposition lost a ray");
  }
  rs.materialized_depth = min_depth(rs.rays);
  if (rs.materialized_depth < depth && rs.claimed_size > 0) {
    throw Error(ErrorKind::Internal, "ray materialization shorter than requested depth");
  }
  return rs;
}

RaySystem ray_system_against_cut(const LFGraphPresentation& g,
                                 const std::set<EdgeId>& cut_edges, const EndId& omega,
                                 unsigned depth, const RayBuildOptions& opts) {
  g.end(omega);
  // radius where every cut edge is visible with real endpoints
  unsigned base_r = 0;
  {
    unsigned r = 1;
    for (; r <= opts.r_max; ++r) {
      TruncatedGraph W = window(g, r);
      bool all = true;
      for (const EdgeId& eid : cut_edges) {
        if (!W.graph.has_edge(eid)) {
          all = false;
          break;
        }
        const auto& e = W.graph.edge(eid);
        if (W.is_super(e.u) || W.is_super(e.v)) {
          all = false;
          break;
        }
      }
      if (all) break;
    }
    if (r > opts.r_max) {
      throw Error(ErrorKind::Unstabilized, "cut edges not materialized within r_max");
    }
    base_r = r;
  }

  unsigned build_r = base_r + depth + 4;
  TruncatedGraph W = window(g, build_r);
  auto region_it = W.end_region.find(omega);
  if (region_it == W.end_region.end()) {
    throw Error(ErrorKind::Internal, "end region vanished at larger radius");
  }
  const VertexId& region = region_it->second;

  // component of W - cut containing ω's region
  std::set<VertexId> comp;
  {
    std::vector<VertexId> stack{region};
    comp.insert(region);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (std::size_t ei : W.graph.incident(v)) {
        const auto& e = W.graph.edges()[ei];
        if (cut_edges.count(e.id)) continue;
        const VertexId& w = e.u == v ? e.v : e.u;
        if (comp.insert(w).second) stack.push_back(w);
      }
    }
  }

  RaySystem rs;
  rs.end = omega;
  rs.claimed_size = cut_edges.size();
  rs.stabilization_radius = base_r;
  rs.built_radius = build_r;
  rs.against.edge_set = cut_edges;
  for (const VertexId& v : comp) rs.against.side_a.insert(v);
  for (const VertexId& v : W.graph.vertices()) {
    if (!comp.count(v)) rs.against.side_b.insert(v);
  }

  // sources: the far endpoints of the cut edges; rays stay inside the
  // component, so only its vertices (and the region itself) are allowed
  std::vector<std::pair<EdgeId, std::pair<VertexId, VertexId>>> entries;  // edge, (far, near)
  for (const EdgeId& eid : cut_edges) {
    const auto& e = W.graph.edge(eid);
    bool u_in = comp.count(e.u) > 0;
    bool v_in = comp.count(e.v) > 0;
    if (u_in == v_in) {
      throw Error(ErrorKind::Domain, "edge " + eid + " does not cross the omega component");
    }
    VertexId far = u_in ? e.v : e.u;
    VertexId near = u_in ? e.u : e.v;
    rs.source_set.insert(far);
    entries.push_back({eid, {far, near}});
  }
  std::sort(entries.begin(), entries.end());

  std::set<VertexId> allowed;
  for (const VertexId& v : comp) {
    if (!W.is_super(v) || v == region) allowed.insert(v);
  }
  if (!allowed.count(region)) {
    throw Error(ErrorKind::Internal, "omega region left the component");
  }
  std::set<EdgeId> banned = cut_edges;  // cut edges enter via attachments instead
  RayNet rn = build_ray_net(W, allowed, banned, region);
  for (const auto& [eid, fp] : entries) {
    (void)eid;
    rn.net.add_directed(rn.src, rn.index.at(fp.second), 1, -1);
  }
  std::size_t flow = static_cast<std::size_t>(rn.net.max_flow(rn.src, rn.sink));
  if (flow != cut_edges.size()) {
    throw Error(ErrorKind::Unstabilized,
                "rays did not saturate the cut at this radius (" + std::to_string(flow) +
                    " of " + std::to_string(cut_edges.size()) + ")");
  }
  auto traces = rn.net.decompose(rn.src, rn.sink);
  // the i-th attachment (in sorted cut-edge order) carries exactly one unit;
  // match traces to entries by their first real vertex's attachment order
  std::vector<Path> rays(entries.size());
  std::vector<bool> claimed(entries.size(), false);
  for (const auto& tr : traces) {
    Path body = trace_to_path(W, rn, tr, 1);
    // find the entry whose near endpoint starts this trace and is unclaimed
    bool matched = false;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (!claimed[i] && entries[i].second.second == body.verts.front()) {
        Path ray;
        ray.verts.push_back(entries[i].second.first);
        ray.edges.push_back(entries[i].first);
        ray.verts.insert(ray.verts.end(), body.verts.begin(), body.verts.end());
        ray.edges.insert(ray.edges.end(), body.edges.begin(), body.edges.end());
        check_simple(ray);
        rays[i] = std::move(ray);
        claimed[i] = true;
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw Error(ErrorKind::Internal, "ray trace does not match any cut edge");
    }
  }
  rs.rays = std::move(rays);
  rs.materialized_depth = min_depth(rs.rays);
  return rs;
}

RaySystem extend_rays(const LFGraphPresentation& g, const RaySystem& rs,
                      unsigned new_depth, const RayBuildOptions& opts) {
  (void)opts;
  if (new_depth <= rs.materialized_depth) return rs;
  if (rs.rays.empty()) {
    RaySystem out = rs;
    out.materialized_depth = new_depth;
    return out;
  }
  unsigned build_r = rs.stabilization_radius + new_depth + 4;
  TruncatedGraph W = window(g, build_r);
  auto region_it = W.end_region.find(rs.end);
  if (region_it == W.end_region.end()) {
    throw Error(ErrorKind::Internal, "end region vanished at larger radius");
  }
  const VertexId& region = region_it->second;

  std::set<EdgeId> used;
  for (const auto& ray : rs.rays) used.insert(ray.edges.begin(), ray.edges.end());

  std::set<VertexId> allowed;
  for (const VertexId& v : W.graph.vertices()) {
    if (rs.source_set.count(v)) continue;  // extensions never re-enter S
    if (!W.is_super(v) || v == region) allowed.insert(v);
  }
  RayNet rn = build_ray_net(W, allowed, used, region);
  for (const auto& ray : rs.rays) {
    rn.net.add_directed(rn.src, rn.index.at(ray.verts.back()), 1, -1);
  }
  std::size_t flow = static_cast<std::size_t>(rn.net.max_flow(rn.src, rn.sink));
  if (flow != rs.rays.size()) {
    throw Error(ErrorKind::Internal,
                "forced-prefix extension failed: only " + std::to_string(flow) + " of " +
                    std::to_string(rs.rays.size()) + " prefixes extend");
  }
  auto traces = rn.net.decompose(rn.src, rn.sink);
  RaySystem out = rs;
  std::vector<bool> claimed(rs.rays.size(), false);
  for (const auto& tr : traces) {
    Path ext = trace_to_path(W, rn, tr, 1);
    bool matched = false;
    for (std::size_t i = 0; i < out.rays.size(); ++i) {
      if (!claimed[i] && out.rays[i].verts.back() == ext.verts.front()) {
        claimed[i] = true;
        out.rays[i].verts.insert(out.rays[i].verts.end(), ext.verts.begin() + 1,
                                 ext.verts.end());
        out.rays[i].edges.insert(out.rays[i].edges.end(), ext.edges.begin(),
                                 ext.edges.end());
        check_simple(out.rays[i]);
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw Error(ErrorKind::Internal, "extension trace does not match any prefix");
    }
  }
  out.built_radius = build_r;
  out.materialized_depth = min_depth(out.rays);
  if (out.materialized_depth < new_depth) {
    throw Error(ErrorKind::Internal, "extension fell short of the requested depth");
  }
  return out;
}

std::map<EdgeId, std::size_t> start_edge_index(const RaySystem& rs, const Cut& f) {
  if (rs.rays.size() != f.edge_set.size()) {
    throw Error(ErrorKind::Domain,
                "ray system size " + std::to_string(rs.rays.size()) +
                    " does not match cut size " + std::to_string(f.edge_set.size()));
  }
  std::map<EdgeId, std::size_t> out;
  for (std::size_t i = 0; i < rs.rays.size(); ++i) {
    if (rs.rays[i].edges.empty()) {
      throw Error(ErrorKind::Domain, "ray " + std::to_string(i) + " has no edges");
    }
    const EdgeId& first = rs.rays[i].edges.front();
    if (!f.edge_set.count(first)) {
      throw Error(ErrorKind::Domain, "ray " + std::to_string(i) + " does not start in the cut");
    }
    if (!out.emplace(first, i).second) {
      throw Error(ErrorKind::Domain, "two rays start in edge " + first);
    }
  }
  return out;
}

nlohmann::json ray_system_to_json(const RaySystem& rs) {
  nlohmann::json doc;
  doc["end"] = rs.end;
  doc["source_set"] = std::vector<VertexId>(rs.source_set.begin(), rs.source_set.end());
  doc["claimed_size"] = rs.claimed_size;
  doc["materialized_depth"] = rs.materialized_depth;
  auto& rays = doc["rays"] = nlohmann::json::array();
  for (const auto& r : rs.rays) {
    rays.push_back({{"vertices", r.verts}, {"edges", r.edges}});
  }
  return doc;
}

}  // namespace tpack
