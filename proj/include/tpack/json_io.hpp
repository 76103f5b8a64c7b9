#ifndef TPACK_JSON_IO_HPP
#define TPACK_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "tpack/multigraph.hpp"

namespace tpack {

/// Graph interchange format: {"vertices": ["a", ...], "edges": [["e1","a","b"], ...]}.
/// Vertex ids starting with '$' are reserved for window super-vertices and
/// rejected on input.
MultiGraph graph_from_json(const nlohmann::json& doc);
nlohmann::json graph_to_json(const MultiGraph& g);

MultiGraph graph_from_file(const std::string& path);

}  // namespace tpack

#endif
