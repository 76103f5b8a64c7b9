#include "tpack/periodic.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "tpack/errors.hpp"

namespace tpack {

namespace {

bool plain_name(const std::string& s) {
  return !s.empty() && s.find('@') == std::string::npos && s[0] != '$';
}

struct CellRef {
  bool in_cell = false;
  std::string name;
  long k = 0;
};

CellRef parse_vertex(const VertexId& v) {
  auto at = v.rfind('@');
  if (at == std::string::npos) return {false, v, 0};
  CellRef r;
  r.in_cell = true;
  r.name = v.substr(0, at);
  try {
    r.k = std::stol(v.substr(at + 1));
  } catch (...) {
    return {false, v, 0};
  }
  return r;
}

std::string cell_vertex(const std::string& name, long k) {
  return name + "@" + std::to_string(k);
}

void validate_spec(const PeriodicDesc& d) {
  auto check_graph = [](const PeriodicDesc::GraphSpec& gs, const char* what) {
    std::set<VertexId> vs;
    for (const auto& v : gs.vertices) {
      if (!plain_name(v)) {
        throw Error(ErrorKind::Domain, std::string(what) + " vertex name invalid: " + v);
      }
      if (!vs.insert(v).second) {
        throw Error(ErrorKind::Domain, std::string(what) + " vertex repeated: " + v);
      }
    }
    std::set<EdgeId> es;
    for (const auto& e : gs.edges) {
      if (!plain_name(e.id)) {
        throw Error(ErrorKind::Domain, std::string(what) + " edge id invalid: " + e.id);
      }
      if (!es.insert(e.id).second) {
        throw Error(ErrorKind::Domain, std::string(what) + " edge id repeated: " + e.id);
      }
      if (e.u == e.v) {
        throw Error(ErrorKind::Domain, std::string(what) + " has loop edge: " + e.id);
      }
      if (!vs.count(e.u) || !vs.count(e.v)) {
        throw Error(ErrorKind::Domain,
                    std::string(what) + " edge " + e.id + " references unknown vertex");
      }
    }
  };
  check_graph(d.cell, "cell");
  check_graph(d.prefix, "prefix");
  if (d.int_cells && (!d.prefix.vertices.empty() || !d.prefix_glue.empty())) {
    throw Error(ErrorKind::Domain, "Z-cell descriptions cannot carry a prefix");
  }

  std::set<EdgeId> cell_ids;
  for (const auto& e : d.cell.edges) cell_ids.insert(e.id);
  std::set<EdgeId> glue_ids;
  for (const auto& ge : d.glue) {
    if (!plain_name(ge.id) || cell_ids.count(ge.id) || !glue_ids.insert(ge.id).second) {
      throw Error(ErrorKind::Domain, "glue edge id invalid or clashes: " + ge.id);
    }
    auto in_cell = [&](const VertexId& v) {
      return std::find(d.cell.vertices.begin(), d.cell.vertices.end(), v) !=
             d.cell.vertices.end();
    };
    if (!in_cell(ge.from) || !in_cell(ge.to)) {
      throw Error(ErrorKind::Domain, "glue edge " + ge.id + " references unknown cell vertex");
    }
  }
  std::set<EdgeId> prefix_ids;
  for (const auto& e : d.prefix.edges) prefix_ids.insert(e.id);
  for (const auto& ge : d.prefix_glue) {
    if (!plain_name(ge.id) || prefix_ids.count(ge.id) || !prefix_ids.insert(ge.id).second) {
      throw Error(ErrorKind::Domain, "prefix glue id invalid or clashes: " + ge.id);
    }
    bool from_ok = std::find(d.prefix.vertices.begin(), d.prefix.vertices.end(), ge.from) !=
                   d.prefix.vertices.end();
    bool to_ok = std::find(d.cell.vertices.begin(), d.cell.vertices.end(), ge.to) !=
                 d.cell.vertices.end();
    if (!from_ok || !to_ok) {
      throw Error(ErrorKind::Domain, "prefix glue edge " + ge.id + " is asymmetric");
    }
  }
  for (const auto& es : d.ends) {
    bool ok = std::find(d.cell.vertices.begin(), d.cell.vertices.end(), es.ray.vertex) !=
              d.cell.vertices.end();
    if (!ok) throw Error(ErrorKind::Domain, "end " + es.id + " ray vertex unknown");
    if (es.ray.direction != 1 && es.ray.direction != -1) {
      throw Error(ErrorKind::Domain, "end " + es.id + " ray direction must be +-1");
    }
    if (!d.int_cells && es.ray.direction < 0) {
      throw Error(ErrorKind::Domain, "end " + es.id + " ray runs out of N-cells");
    }
  }
}

}  // namespace

LFGraphPresentation presentation_from_periodic(const PeriodicDesc& d) {
  validate_spec(d);
  PeriodicDesc desc = d;  // captured by value; presentations are self-contained

  auto adjacency = [desc](const VertexId& v) {
    std::vector<LFGraphPresentation::AdjEntry> out;
    CellRef ref = parse_vertex(v);
    if (ref.in_cell) {
      if (!desc.int_cells && ref.k < 0) return out;
      bool known = std::find(desc.cell.vertices.begin(), desc.cell.vertices.end(),
                             ref.name) != desc.cell.vertices.end();
      if (!known) return out;
      for (const auto& e : desc.cell.edges) {
        if (e.u == ref.name) out.push_back({e.id + "@" + std::to_string(ref.k),
                                            cell_vertex(e.v, ref.k)});
        if (e.v == ref.name) out.push_back({e.id + "@" + std::to_string(ref.k),
                                            cell_vertex(e.u, ref.k)});
      }
      for (const auto& ge : desc.glue) {
        if (ge.from == ref.name) {
          out.push_back({ge.id + "@" + std::to_string(ref.k), cell_vertex(ge.to, ref.k + 1)});
        }
        if (ge.to == ref.name && (desc.int_cells || ref.k > 0)) {
          out.push_back({ge.id + "@" + std::to_string(ref.k - 1),
                         cell_vertex(ge.from, ref.k - 1)});
        }
      }
      if (!desc.int_cells && ref.k == 0) {
        for (const auto& ge : desc.prefix_glue) {
          if (ge.to == ref.name) out.push_back({ge.id, ge.from});
        }
      }
    } else {
      bool known = std::find(desc.prefix.vertices.begin(), desc.prefix.vertices.end(),
                             ref.name) != desc.prefix.vertices.end();
      if (!known) return out;
      for (const auto& e : desc.prefix.edges) {
        if (e.u == ref.name) out.push_back({e.id, e.v});
        if (e.v == ref.name) out.push_back({e.id, e.u});
      }
      for (const auto& ge : desc.prefix_glue) {
        if (ge.from == ref.name) out.push_back({ge.id, cell_vertex(ge.to, 0)});
      }
    }
    return out;
  };

  std::vector<EndDecl> ends;
  for (const auto& es : desc.ends) {
    PeriodicDesc::RaySpec spec = es.ray;
    ends.push_back({es.id, [spec](std::size_t i) {
                      return cell_vertex(spec.vertex,
                                         spec.start_cell + spec.direction * static_cast<long>(i));
                    }});
  }

  // root must exist
  {
    CellRef r = parse_vertex(desc.root);
    bool ok = r.in_cell
                  ? std::find(desc.cell.vertices.begin(), desc.cell.vertices.end(),
                              r.name) != desc.cell.vertices.end() &&
                        (desc.int_cells || r.k >= 0)
                  : std::find(desc.prefix.vertices.begin(), desc.prefix.vertices.end(),
                              r.name) != desc.prefix.vertices.end();
    if (!ok) throw Error(ErrorKind::Domain, "root vertex " + desc.root + " does not exist");
  }

  LFGraphPresentation p(adjacency, desc.root, std::move(ends));
  for (const auto& fs : desc.families) {
    VertexFamily fam;
    fam.name = fs.name;
    auto cell_members = fs.cell_vertices;
    auto prefix_members = fs.prefix_vertices;
    fam.contains = [cell_members, prefix_members](const VertexId& v) {
      CellRef r = parse_vertex(v);
      const auto& pool = r.in_cell ? cell_members : prefix_members;
      return std::find(pool.begin(), pool.end(), r.name) != pool.end();
    };
    for (const auto& tail : fs.tails) {
      PeriodicDesc::RaySpec spec = tail;
      fam.tails.push_back([spec](std::size_t i) {
        return cell_vertex(spec.vertex, spec.start_cell + spec.direction * static_cast<long>(i));
      });
    }
    p.add_family(std::move(fam));
  }
  p.set_conclusive_radius(desc.conclusive_radius);
  p.set_ends_complete(desc.ends_complete);
  return p;
}

namespace {

PeriodicDesc::GraphSpec graph_spec_from_json(const nlohmann::json& doc) {
  PeriodicDesc::GraphSpec gs;
  if (doc.is_null()) return gs;
  for (const auto& v : doc.value("vertices", nlohmann::json::array())) {
    gs.vertices.push_back(v.get<VertexId>());
  }
  for (const auto& e : doc.value("edges", nlohmann::json::array())) {
    if (!e.is_array() || e.size() != 3) {
      throw Error(ErrorKind::Domain, "edges must be [id, u, v] triples");
    }
    gs.edges.push_back({e[0].get<EdgeId>(), e[1].get<VertexId>(), e[2].get<VertexId>()});
  }
  return gs;
}

nlohmann::json graph_spec_to_json(const PeriodicDesc::GraphSpec& gs) {
  nlohmann::json doc;
  doc["vertices"] = gs.vertices;
  auto& es = doc["edges"] = nlohmann::json::array();
  for (const auto& e : gs.edges) es.push_back({e.id, e.u, e.v});
  return doc;
}

PeriodicDesc::RaySpec ray_from_json(const nlohmann::json& doc) {
  PeriodicDesc::RaySpec r;
  r.vertex = doc.at("vertex").get<VertexId>();
  r.start_cell = doc.value("start_cell", 0L);
  r.direction = doc.value("direction", 1);
  return r;
}

nlohmann::json ray_to_json(const PeriodicDesc::RaySpec& r) {
  return {{"vertex", r.vertex}, {"start_cell", r.start_cell}, {"direction", r.direction}};
}

std::vector<PeriodicDesc::GlueEdge> glue_from_json(const nlohmann::json& doc) {
  std::vector<PeriodicDesc::GlueEdge> out;
  for (const auto& e : doc) {
    if (!e.is_array() || e.size() != 3) {
      throw Error(ErrorKind::Domain, "glue entries must be [id, from, to] triples");
    }
    out.push_back({e[0].get<EdgeId>(), e[1].get<VertexId>(), e[2].get<VertexId>()});
  }
  return out;
}

nlohmann::json glue_to_json(const std::vector<PeriodicDesc::GlueEdge>& glue) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& g : glue) arr.push_back({g.id, g.from, g.to});
  return arr;
}

}  // namespace

PeriodicDesc periodic_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.value("kind", "") != "periodic") {
    throw Error(ErrorKind::Domain, "presentation document needs \"kind\": \"periodic\"");
  }
  PeriodicDesc d;
  std::string cells = doc.value("cells", "nat");
  if (cells == "int") {
    d.int_cells = true;
  } else if (cells != "nat") {
    throw Error(ErrorKind::Domain, "cells must be \"nat\" or \"int\"");
  }
  d.cell = graph_spec_from_json(doc.at("period_cell"));
  if (doc.contains("prefix")) d.prefix = graph_spec_from_json(doc.at("prefix"));
  d.glue = glue_from_json(doc.value("glue", nlohmann::json::array()));
  d.prefix_glue = glue_from_json(doc.value("prefix_glue", nlohmann::json::array()));
  d.root = doc.at("root").get<VertexId>();
  for (const auto& e : doc.value("ends", nlohmann::json::array())) {
    d.ends.push_back({e.at("id").get<EndId>(), ray_from_json(e.at("ray"))});
  }
  for (const auto& f : doc.value("families", nlohmann::json::array())) {
    PeriodicDesc::FamilySpec fs;
    fs.name = f.at("name").get<std::string>();
    for (const auto& v : f.value("cell_vertices", nlohmann::json::array())) {
      fs.cell_vertices.push_back(v.get<VertexId>());
    }
    for (const auto& v : f.value("prefix_vertices", nlohmann::json::array())) {
      fs.prefix_vertices.push_back(v.get<VertexId>());
    }
    for (const auto& t : f.value("tails", nlohmann::json::array())) {
      fs.tails.push_back(ray_from_json(t));
    }
    d.families.push_back(std::move(fs));
  }
  d.conclusive_radius = doc.value("conclusive_radius", 0u);
  d.ends_complete = doc.value("ends_complete", true);
  return d;
}

nlohmann::json periodic_to_json(const PeriodicDesc& d) {
  nlohmann::json doc;
  doc["kind"] = "periodic";
  doc["cells"] = d.int_cells ? "int" : "nat";
  doc["period_cell"] = graph_spec_to_json(d.cell);
  if (!d.prefix.vertices.empty()) doc["prefix"] = graph_spec_to_json(d.prefix);
  doc["glue"] = glue_to_json(d.glue);
  if (!d.prefix_glue.empty()) doc["prefix_glue"] = glue_to_json(d.prefix_glue);
  doc["root"] = d.root;
  auto& ends = doc["ends"] = nlohmann::json::array();
  for (const auto& e : d.ends) {
    ends.push_back({{"id", e.id}, {"ray", ray_to_json(e.ray)}});
  }
  if (!d.families.empty()) {
    auto& fams = doc["families"] = nlohmann::json::array();
    for (const auto& f : d.families) {
      nlohmann::json fj;
      fj["name"] = f.name;
      fj["cell_vertices"] = f.cell_vertices;
      if (!f.prefix_vertices.empty()) fj["prefix_vertices"] = f.prefix_vertices;
      auto& tails = fj["tails"] = nlohmann::json::array();
      for (const auto& t : f.tails) tails.push_back(ray_to_json(t));
      fams.push_back(std::move(fj));
    }
  }
  doc["conclusive_radius"] = d.conclusive_radius;
  doc["ends_complete"] = d.ends_complete;
  return doc;
}

PeriodicDesc periodic_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Domain, "cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Domain, std::string("invalid JSON in ") + path + ": " + ex.what());
  }
  return periodic_from_json(doc);
}

}  // namespace tpack
