#ifndef TPACK_PERIODIC_HPP
#define TPACK_PERIODIC_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "tpack/lfgraph.hpp"
#include "tpack/multigraph.hpp"

namespace tpack {

/// Finitely described locally finite graph: copies of a finite cell indexed
/// by N or Z, glued between consecutive cells, with an optional finite prefix
/// attached to cell 0 (N-cells only). Cell vertices materialize as "name@k".
/// This is the interchange format for infinite inputs and the engine behind
/// the infinite zoo entries.
struct PeriodicDesc {
  struct GraphSpec {
    std::vector<VertexId> vertices;
    std::vector<MultiGraph::Edge> edges;
  };
  struct GlueEdge {
    EdgeId id;
    VertexId from;  // vertex in cell k (or the prefix, for prefix_glue)
    VertexId to;    // vertex in cell k+1 (or cell 0, for prefix_glue)
  };
  struct RaySpec {
    VertexId vertex;
    long start_cell = 0;
    int direction = 1;  // ray(i) = vertex@(start_cell + direction*i)
  };
  struct EndSpec {
    EndId id;
    RaySpec ray;
  };
  struct FamilySpec {
    std::string name;
    std::vector<VertexId> cell_vertices;    // members in every cell
    std::vector<VertexId> prefix_vertices;  // members in the prefix
    std::vector<RaySpec> tails;
  };

  bool int_cells = false;  // cells over Z; otherwise over N with optional prefix
  GraphSpec prefix;
  GraphSpec cell;
  std::vector<GlueEdge> glue;
  std::vector<GlueEdge> prefix_glue;
  VertexId root;
  std::vector<EndSpec> ends;
  std::vector<FamilySpec> families;
  unsigned conclusive_radius = 0;
  bool ends_complete = true;
};

/// Validates the description and builds a presentation over it.
LFGraphPresentation presentation_from_periodic(const PeriodicDesc& d);

PeriodicDesc periodic_from_json(const nlohmann::json& doc);
nlohmann::json periodic_to_json(const PeriodicDesc& d);
PeriodicDesc periodic_from_file(const std::string& path);

}  // namespace tpack

#endif
