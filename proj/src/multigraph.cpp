#include "tpack/multigraph.hpp"

#include <algorithm>
#include <queue>

#include "tpack/errors.hpp"
#include "tpack/flow.hpp"

namespace tpack {

MultiGraph MultiGraph::make(std::vector<VertexId> vertices, std::vector<Edge> edges) {
  MultiGraph g;
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  g.vertices_ = std::move(vertices);
  for (std::size_t i = 0; i < g.vertices_.size(); ++i) g.vindex_[g.vertices_[i]] = i;

  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (const Edge& e : edges) {
    if (e.u == e.v) {
      throw Error(ErrorKind::Domain, "loop edge not allowed: " + e.id);
    }
    if (!g.vindex_.count(e.u) || !g.vindex_.count(e.v)) {
      throw Error(ErrorKind::Domain, "edge " + e.id + " references unknown vertex");
    }
    if (g.eindex_.count(e.id)) {
      throw Error(ErrorKind::Domain, "duplicate edge id: " + e.id);
    }
    g.eindex_[e.id] = g.edges_.size();
    g.edges_.push_back(e);
  }
  g.adj_.assign(g.vertices_.size(), {});
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    g.adj_[g.vindex_.at(g.edges_[i].u)].push_back(i);
    g.adj_[g.vindex_.at(g.edges_[i].v)].push_back(i);
  }
  return g;
}

bool MultiGraph::has_vertex(const VertexId& v) const { return vindex_.count(v) > 0; }
bool MultiGraph::has_edge(const EdgeId& e) const { return eindex_.count(e) > 0; }

std::size_t MultiGraph::vertex_index(const VertexId& v) const {
  auto it = vindex_.find(v);
  if (it == vindex_.end()) throw Error(ErrorKind::Domain, "unknown vertex: " + v);
  return it->second;
}

const MultiGraph::Edge& MultiGraph::edge(const EdgeId& e) const {
  auto it = eindex_.find(e);
  if (it == eindex_.end()) throw Error(ErrorKind::Domain, "unknown edge: " + e);
  return edges_[it->second];
}

const std::vector<std::size_t>& MultiGraph::incident(const VertexId& v) const {
  return adj_[vertex_index(v)];
}

std::size_t MultiGraph::degree(const VertexId& v) const { return incident(v).size(); }

std::size_t MultiGraph::boundary_size(const std::set<VertexId>& x) const {
  for (const VertexId& v : x) vertex_index(v);  // validate
  std::size_t count = 0;
  for (const Edge& e : edges_) {
    if (x.count(e.u) != x.count(e.v)) ++count;
  }
  return count;
}

std::vector<int> MultiGraph::component_labels() const {
  std::vector<int> label(vertices_.size(), -1);
  int next = 0;
  for (std::size_t start = 0; start < vertices_.size(); ++start) {
    if (label[start] >= 0) continue;
    label[start] = next;
    std::queue<std::size_t> q;
    q.push(start);
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop();
      for (std::size_t ei : adj_[v]) {
        const Edge& e = edges_[ei];
        std::size_t w = vindex_.at(e.u) == v ? vindex_.at(e.v) : vindex_.at(e.u);
        if (label[w] < 0) {
          label[w] = next;
          q.push(w);
        }
      }
    }
    ++next;
  }
  return label;
}

bool MultiGraph::connected() const {
  if (vertices_.empty()) return true;
  auto labels = component_labels();
  return std::all_of(labels.begin(), labels.end(), [](int l) { return l == 0; });
}

namespace {

// Shared scaffold for min_cut / edge_disjoint_paths: super-source and
// super-sink with high-capacity attachments that never show up in results.
struct StFlow {
  flow::Network net;
  int s;
  int t;

  StFlow(const MultiGraph& g, const std::set<VertexId>& x, const std::set<VertexId>& y,
         const std::set<EdgeId>* uncuttable = nullptr)
      : net(static_cast<int>(g.vertex_count()) + 2),
        s(static_cast<int>(g.vertex_count())),
        t(s + 1) {
    if (x.empty() || y.empty()) {
      throw Error(ErrorKind::Domain, "min_cut: x and y must be nonempty");
    }
    for (const VertexId& v : x) {
      if (y.count(v)) {
        throw Error(ErrorKind::Domain, "min_cut: x and y intersect at " + v);
      }
    }
    const auto& edges = g.edges();
    int big = static_cast<int>(edges.size()) + 1;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      int cap = uncuttable && uncuttable->count(edges[i].id) ? big : 1;
      net.add_undirected(static_cast<int>(g.vertex_index(edges[i].u)),
                         static_cast<int>(g.vertex_index(edges[i].v)), cap,
                         static_cast<int>(i));
    }
    int attach = big * (static_cast<int>(edges.size()) + 1);
    for (const VertexId& v : x) {
      net.add_directed(s, static_cast<int>(g.vertex_index(v)), attach, -1);
    }
    for (const VertexId& v : y) {
      net.add_directed(static_cast<int>(g.vertex_index(v)), t, attach, -1);
    }
  }
};

MinCutResult extract_cut(const MultiGraph& g, StFlow& f) {
  std::size_t value = static_cast<std::size_t>(f.net.max_flow(f.s, f.t));
  std::vector<char> reach = f.net.source_side(f.s);

  MinCutResult res;
  res.value = value;
  const auto& vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    (reach[i] ? res.cut.side_a : res.cut.side_b).insert(vs[i]);
  }
  for (const auto& e : g.edges()) {
    bool au = res.cut.side_a.count(e.u) > 0;
    bool av = res.cut.side_a.count(e.v) > 0;
    if (au != av) res.cut.edge_set.insert(e.id);
  }
  return res;
}

}  // namespace

MinCutResult min_cut(const MultiGraph& g, const std::set<VertexId>& x,
                     const std::set<VertexId>& y) {
  StFlow f(g, x, y);
  MinCutResult res = extract_cut(g, f);
  if (res.cut.edge_set.size() != res.value) {
    throw Error(ErrorKind::Internal, "min cut does not match flow value");
  }
  return res;
}

MinCutResult min_cut_avoiding(const MultiGraph& g, const std::set<VertexId>& x,
                              const std::set<VertexId>& y,
                              const std::set<EdgeId>& uncuttable) {
  StFlow f(g, x, y, &uncuttable);
  MinCutResult res = extract_cut(g, f);
  // value reported as the number of cut edges; when it stayed below the boost
  // threshold no uncuttable edge crosses, so the edge count is the capacity
  res.value = res.cut.edge_set.size();
  return res;
}

std::vector<Path> edge_disjoint_paths(const MultiGraph& g, const std::set<VertexId>& s,
                                      const std::set<VertexId>& y, std::size_t k) {
  StFlow f(g, s, y);
  std::size_t value = static_cast<std::size_t>(f.net.max_flow(f.s, f.t));
  if (value < k) {
    MinCutResult witness = min_cut(g, s, y);
    nlohmann::json w;
    w["max_flow"] = value;
    w["requested"] = k;
    w["min_cut"] = std::vector<EdgeId>(witness.cut.edge_set.begin(),
                                       witness.cut.edge_set.end());
    throw Error(ErrorKind::Domain, "edge_disjoint_paths: k exceeds max flow", w);
  }
  auto traces = f.net.decompose(f.s, f.t);
  std::vector<Path> out;
  for (const auto& tr : traces) {
    if (out.size() == k) break;
    Path p;
    // strip the attachment hops at both ends
    for (std::size_t i = 1; i + 1 < tr.vertices.size(); ++i) {
      p.verts.push_back(g.vertices()[tr.vertices[i]]);
    }
    for (std::size_t i = 1; i + 1 < tr.pairs.size(); ++i) {
      p.edges.push_back(g.edges()[f.net.pair_label(tr.pairs[i])].id);
    }
    out.push_back(std::move(p));
  }
  return out;
}

ContractionMinor contract(const MultiGraph& g,
                          const std::vector<std::set<VertexId>>& classes,
                          const std::vector<VertexId>& names) {
  if (!names.empty() && names.size() != classes.size()) {
    throw Error(ErrorKind::Domain, "contract: names must match classes");
  }
  ContractionMinor cm;
  std::set<VertexId> used;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& cls = classes[c];
    if (cls.empty()) throw Error(ErrorKind::Domain, "contract: empty class");
    for (const VertexId& v : cls) {
      g.vertex_index(v);
      if (!used.insert(v).second) {
        throw Error(ErrorKind::Domain, "contract: classes overlap at " + v);
      }
    }
    // connectivity of the induced subgraph
    std::set<VertexId> seen{*cls.begin()};
    std::queue<VertexId> q;
    q.push(*cls.begin());
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (std::size_t ei : g.incident(v)) {
        const auto& e = g.edges()[ei];
        const VertexId& w = e.u == v ? e.v : e.u;
        if (cls.count(w) && !seen.count(w)) {
          seen.insert(w);
          q.push(w);
        }
      }
    }
    if (seen.size() != cls.size()) {
      throw Error(ErrorKind::Domain, "contract: class not connected");
    }
    VertexId image = names.empty() ? *cls.begin() : names[c];
    if (!names.empty() && g.has_vertex(image) && !cls.count(image)) {
      throw Error(ErrorKind::Domain, "contract: name collides with vertex " + image);
    }
    for (const VertexId& v : cls) cm.class_map[v] = image;
    cm.super_vertices.insert(image);
  }
  for (const VertexId& v : g.vertices()) {
    if (!cm.class_map.count(v)) cm.class_map[v] = v;
  }

  std::vector<VertexId> mverts;
  for (const auto& [orig, image] : cm.class_map) {
    (void)orig;
    mverts.push_back(image);
  }
  std::vector<MultiGraph::Edge> medges;
  for (const auto& e : g.edges()) {
    VertexId cu = cm.class_map.at(e.u);
    VertexId cv = cm.class_map.at(e.v);
    if (cu == cv) continue;  // internal edge dropped
    medges.push_back({e.id, cu, cv});
    cm.edge_correspondence[e.id] = e.id;
  }
  cm.minor = MultiGraph::make(std::move(mverts), std::move(medges));
  return cm;
}

}  // namespace tpack
