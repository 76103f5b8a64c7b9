#include "tpack/json_io.hpp"

#include <fstream>

#include "tpack/errors.hpp"

namespace tpack {

MultiGraph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges")) {
    throw Error(ErrorKind::Domain, "graph document needs 'vertices' and 'edges'");
  }
  std::vector<VertexId> verts;
  for (const auto& v : doc.at("vertices")) {
    if (!v.is_string()) throw Error(ErrorKind::Domain, "vertex ids must be strings");
    VertexId id = v.get<VertexId>();
    if (!id.empty() && id[0] == '$') {
      throw Error(ErrorKind::Domain, "vertex id '" + id + "' uses reserved prefix '$'");
    }
    verts.push_back(std::move(id));
  }
  std::vector<MultiGraph::Edge> edges;
  for (const auto& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 3) {
      throw Error(ErrorKind::Domain, "edges must be [edge_id, u, v] triples");
    }
    MultiGraph::Edge edge{e[0].get<EdgeId>(), e[1].get<VertexId>(), e[2].get<VertexId>()};
    if (edge.u == edge.v) {
      throw Error(ErrorKind::Domain, "loop edge not allowed: " + edge.id);
    }
    edges.push_back(std::move(edge));
  }
  return MultiGraph::make(std::move(verts), std::move(edges));
}

nlohmann::json graph_to_json(const MultiGraph& g) {
  nlohmann::json doc;
  doc["vertices"] = g.vertices();
  auto& es = doc["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    es.push_back({e.id, e.u, e.v});
  }
  return doc;
}

MultiGraph graph_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Domain, "cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Domain, std::string("invalid JSON in ") + path + ": " + ex.what());
  }
  return graph_from_json(doc);
}

}  // namespace tpack
