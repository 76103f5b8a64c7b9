#include "tpack/zoo.hpp"

#include <algorithm>
#include <cstdio>

#include "tpack/errors.hpp"

namespace tpack {

namespace {

std::string num2(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02zu", i);
  return buf;
}

long param_or(const std::vector<long>& params, std::size_t idx, long fallback) {
  return idx < params.size() ? params[idx] : fallback;
}

MultiGraph build_star(long k) {
  if (k < 1) throw Error(ErrorKind::Domain, "star(k) needs k >= 1");
  std::vector<VertexId> verts{"c"};
  std::vector<MultiGraph::Edge> edges;
  for (long i = 1; i <= k; ++i) {
    VertexId leaf = "l" + num2(static_cast<std::size_t>(i));
    verts.push_back(leaf);
    edges.push_back({"e" + num2(static_cast<std::size_t>(i)), "c", leaf});
  }
  return MultiGraph::make(std::move(verts), std::move(edges));
}

MultiGraph build_path(long n) {
  if (n < 1) throw Error(ErrorKind::Domain, "path(n) needs n >= 1");
  std::vector<VertexId> verts;
  std::vector<MultiGraph::Edge> edges;
  for (long i = 1; i <= n; ++i) verts.push_back("v" + num2(static_cast<std::size_t>(i)));
  for (long i = 1; i < n; ++i) {
    edges.push_back({"e" + num2(static_cast<std::size_t>(i)), verts[i - 1], verts[i]});
  }
  return MultiGraph::make(std::move(verts), std::move(edges));
}

MultiGraph build_cycle(long n) {
  if (n < 3) throw Error(ErrorKind::Domain, "cycle(n) needs n >= 3");
  std::vector<VertexId> verts;
  std::vector<MultiGraph::Edge> edges;
  for (long i = 1; i <= n; ++i) verts.push_back("v" + num2(static_cast<std::size_t>(i)));
  for (long i = 0; i < n; ++i) {
    edges.push_back({"e" + num2(static_cast<std::size_t>(i + 1)), verts[i],
                     verts[(i + 1) % n]});
  }
  return MultiGraph::make(std::move(verts), std::move(edges));
}

MultiGraph build_parallel(long m) {
  if (m < 1) throw Error(ErrorKind::Domain, "parallel(m) needs m >= 1");
  std::vector<MultiGraph::Edge> edges;
  for (long i = 1; i <= m; ++i) {
    edges.push_back({"e" + num2(static_cast<std::size_t>(i)), "u", "v"});
  }
  return MultiGraph::make({"u", "v"}, std::move(edges));
}

PeriodicDesc desc_ray() {
  PeriodicDesc d;
  d.cell.vertices = {"v"};
  d.glue = {{"r", "v", "v"}};
  d.root = "v@0";
  d.ends = {{"omega", {"v", 0, 1}}};
  d.families.push_back({"all", {"v"}, {}, {{"v", 0, 1}}});
  d.conclusive_radius = 2;
  return d;
}

PeriodicDesc desc_ladder(bool duplicate_rungs) {
  PeriodicDesc d;
  d.int_cells = true;
  d.cell.vertices = {"u", "w"};
  d.cell.edges = {{"ga", "u", "w"}};
  if (duplicate_rungs) d.cell.edges.push_back({"gb", "u", "w"});
  d.glue = {{"p", "u", "u"}, {"q", "w", "w"}};
  d.root = "u@0";
  d.ends = {{"east", {"u", 1, 1}}, {"west", {"u", -1, -1}}};
  d.families.push_back({"top", {"u"}, {}, {{"u", 1, 1}, {"u", -1, -1}}});
  d.families.push_back({"bottom", {"w"}, {}, {{"w", 1, 1}, {"w", -1, -1}}});
  d.conclusive_radius = 2;
  return d;
}

PeriodicDesc desc_fig3() {
  PeriodicDesc d;
  d.prefix.vertices = {"c", "la", "lb", "lc"};
  d.prefix.edges = {{"ea", "c", "la"}, {"eb", "c", "lb"}, {"ec", "c", "lc"}};
  d.cell.vertices = {"r"};
  d.glue = {{"t", "r", "r"}};
  d.prefix_glue = {{"s", "c", "r"}};
  d.root = "c";
  d.ends = {{"omega", {"r", 0, 1}}};
  d.conclusive_radius = 4;
  return d;
}

void audit(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::Internal, "zoo self-test failed: " + what);
}

}  // namespace

const std::vector<ZooEntry>& zoo_entries() {
  static const std::vector<ZooEntry> entries{
      {"star", "k (leaves)", "K_{1,k}: a center joined to k leaves", "leaves", true},
      {"path", "n (vertices)", "path on n vertices", "", true},
      {"cycle", "n (vertices)", "cycle on n vertices", "", true},
      {"parallel", "m (edges)", "two vertices joined by m parallel edges", "", true},
      {"ray", "", "one-way infinite path; one end of degree one", "", false},
      {"double_ladder", "",
       "two-way infinite ladder with single rungs; every vertex has degree 3", "ends",
       false},
      {"dup_rung_ladder", "",
       "double ladder with each rung duplicated; every vertex has degree 4, two ends",
       "ends", false},
      {"fig3_tree", "",
       "K_{1,3} with a ray attached at the center: even non-leaves, three leaves, "
       "a unique end of degree one",
       "leaves", false},
      {"even_ladder", "",
       "dup_rung_ladder packaged with T = both ends; the canonical positive pipeline "
       "instance",
       "ends", false},
  };
  return entries;
}

bool zoo_has(const std::string& name) {
  for (const auto& e : zoo_entries()) {
    if (e.name == name) return true;
  }
  return false;
}

const ZooEntry& zoo_entry(const std::string& name) {
  for (const auto& e : zoo_entries()) {
    if (e.name == name) return e;
  }
  throw Error(ErrorKind::Domain, "unknown zoo entry: " + name);
}

MultiGraph zoo_graph(const std::string& name, const std::vector<long>& params) {
  if (name == "star") {
    MultiGraph g = build_star(param_or(params, 0, 3));
    audit(g.degree("c") == g.edge_count(), "star center degree");
    return g;
  }
  if (name == "path") return build_path(param_or(params, 0, 3));
  if (name == "cycle") return build_cycle(param_or(params, 0, 4));
  if (name == "parallel") return build_parallel(param_or(params, 0, 2));
  if (zoo_has(name)) {
    throw Error(ErrorKind::Domain, "zoo entry " + name + " is infinite; use its presentation");
  }
  throw Error(ErrorKind::Domain, "unknown zoo entry: " + name);
}

PeriodicDesc zoo_periodic(const std::string& name, const std::vector<long>& params) {
  (void)params;
  if (name == "ray") return desc_ray();
  if (name == "double_ladder") return desc_ladder(false);
  if (name == "dup_rung_ladder" || name == "even_ladder") return desc_ladder(true);
  if (name == "fig3_tree") return desc_fig3();
  if (zoo_has(name)) {
    throw Error(ErrorKind::Domain, "zoo entry " + name + " is finite; use zoo_graph");
  }
  throw Error(ErrorKind::Domain, "unknown zoo entry: " + name);
}

LFGraphPresentation zoo_presentation(const std::string& name,
                                     const std::vector<long>& params) {
  if (zoo_entry(name).finite) {
    return presentation_from_graph(zoo_graph(name, params));
  }
  LFGraphPresentation p = presentation_from_periodic(zoo_periodic(name, params));
  // each family's documented properties, audited on construction
  if (name == "dup_rung_ladder" || name == "even_ladder") {
    audit(p.adjacency("u@0").size() == 4 && p.adjacency("w@5").size() == 4 &&
              p.adjacency("u@-3").size() == 4,
          name + " vertices have degree 4");
    audit(p.ends().size() == 2, name + " has two declared ends");
  }
  if (name == "double_ladder") {
    audit(p.adjacency("u@0").size() == 3 && p.adjacency("w@-2").size() == 3,
          "double_ladder vertices have degree 3");
  }
  if (name == "ray") {
    audit(p.adjacency("v@0").size() == 1 && p.adjacency("v@7").size() == 2,
          "ray degrees");
  }
  if (name == "fig3_tree") {
    audit(p.adjacency("c").size() == 4, "fig3 center degree 4");
    audit(p.adjacency("la").size() == 1, "fig3 leaves degree 1");
    audit(p.adjacency("r@3").size() == 2, "fig3 ray degrees");
  }
  return p;
}

nlohmann::json zoo_describe(const std::string& name, const std::vector<long>& params) {
  const ZooEntry& entry = zoo_entry(name);
  nlohmann::json doc;
  doc["name"] = entry.name;
  doc["description"] = entry.description;
  doc["finite"] = entry.finite;
  if (!entry.params.empty()) doc["params"] = entry.params;
  if (!entry.default_terminals.empty()) doc["default_terminals"] = entry.default_terminals;
  if (entry.finite) {
    MultiGraph g = zoo_graph(name, params);
    doc["vertices"] = g.vertex_count();
    doc["edges"] = g.edge_count();
    nlohmann::json degs = nlohmann::json::object();
    for (const auto& v : g.vertices()) degs[v] = g.degree(v);
    doc["degrees"] = degs;
  } else {
    LFGraphPresentation p = zoo_presentation(name, params);
    doc["ends"] = nlohmann::json::array();
    for (const auto& e : p.ends()) doc["ends"].push_back(e.id);
    doc["families"] = nlohmann::json::array();
    for (const auto& f : p.families()) doc["families"].push_back(f.name);
    doc["conclusive_radius"] = *p.conclusive_radius();
    doc["root"] = p.root();
  }
  return doc;
}

}  // namespace tpack
