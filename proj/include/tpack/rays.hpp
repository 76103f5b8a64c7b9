#ifndef TPACK_RAYS_HPP
#define TPACK_RAYS_HPP

#include <map>
#include <set>

#include "tpack/lfgraph.hpp"
#include "tpack/multigraph.hpp"

namespace tpack {

/// Maximum system of pairwise edge-disjoint S-ω rays, materialized as finite
/// prefixes. Consumers must treat rays as extensible, never as finite paths.
struct RaySystem {
  std::set<VertexId> source_set;
  EndId end;
  std::vector<Path> rays;
  std::size_t claimed_size = 0;
  unsigned materialized_depth = 0;   // every ray has at least this many vertices
  unsigned stabilization_radius = 0;
  unsigned built_radius = 0;
  Cut against;                       // the stabilized S-ω cut
};

struct RayBuildOptions {
  unsigned r_max = 64;
};

/// Max-flow/min-cut duality for rays: |rays| equals the stabilized minimum
/// S-ω cut; each
/// ray has precisely its first vertex in s.
RaySystem max_ray_system(const LFGraphPresentation& g, const std::set<VertexId>& s,
                         const EndId& omega, unsigned depth,
                         const RayBuildOptions& opts = {});

/// Pipeline variant: the system is built against a given ω-separating cut so
/// that every ray starts with a distinct cut edge and stays on ω's side.
RaySystem ray_system_against_cut(const LFGraphPresentation& g,
                                 const std::set<EdgeId>& cut_edges, const EndId& omega,
                                 unsigned depth, const RayBuildOptions& opts = {});

/// Deepens every ray, never touching existing prefixes or the claimed size.
RaySystem extend_rays(const LFGraphPresentation& g, const RaySystem& rs,
                      unsigned new_depth, const RayBuildOptions& opts = {});

/// Bijection cut edge -> index of the ray starting with it.
std::map<EdgeId, std::size_t> start_edge_index(const RaySystem& rs, const Cut& f);

nlohmann::json ray_system_to_json(const RaySystem& rs);

}  // namespace tpack

#endif
