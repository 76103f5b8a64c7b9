#ifndef TPACK_MULTIGRAPH_HPP
#define TPACK_MULTIGRAPH_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tpack {

using VertexId = std::string;
using EdgeId = std::string;

/// Finite loopless multigraph with stable edge identities. Parallel edges are
/// allowed and kept apart by their EdgeIds. Immutable after construction.
class MultiGraph {
 public:
  struct Edge {
    EdgeId id;
    VertexId u;
    VertexId v;
  };

  MultiGraph() = default;

  /// Validates: no loops, unique edge ids, endpoints present. Vertices are
  /// kept in sorted order and edges in ascending EdgeId order; this is the
  /// canonical iteration order used everywhere determinism matters.
  static MultiGraph make(std::vector<VertexId> vertices, std::vector<Edge> edges);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_vertex(const VertexId& v) const;
  bool has_edge(const EdgeId& e) const;
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Dense index of a vertex (throws Domain on unknown vertex).
  std::size_t vertex_index(const VertexId& v) const;
  const Edge& edge(const EdgeId& e) const;

  /// Incident edge positions (into edges()), ascending by EdgeId.
  const std::vector<std::size_t>& incident(const VertexId& v) const;

  std::size_t degree(const VertexId& v) const;

  /// Number of edges between x and its complement; boundary_size({v}) == degree(v).
  std::size_t boundary_size(const std::set<VertexId>& x) const;

  /// Connected component labels, 0-based, in order of smallest contained vertex.
  std::vector<int> component_labels() const;
  bool connected() const;

 private:
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  std::map<VertexId, std::size_t> vindex_;
  std::map<EdgeId, std::size_t> eindex_;
  std::vector<std::vector<std::size_t>> adj_;  // vertex -> incident edge positions
};

/// A finite edge cut together with the bipartition that induces it.
struct Cut {
  std::set<EdgeId> edge_set;
  std::set<VertexId> side_a;
  std::set<VertexId> side_b;

  std::size_t size() const { return edge_set.size(); }
  bool operator==(const Cut& o) const = default;
};

struct MinCutResult {
  Cut cut;
  std::size_t value = 0;
};

/// Smallest cut separating x from y (multi-source/multi-sink). side_a is the
/// set of vertices residual-reachable from x under the canonical BFS
/// augmenting order, so repeated calls return identical cuts.
MinCutResult min_cut(const MultiGraph& g, const std::set<VertexId>& x,
                     const std::set<VertexId>& y);

/// Like min_cut, but the `uncuttable` edges get effectively infinite capacity,
/// steering the certificate away from them. The returned value can exceed the
/// true min cut when every minimum cut needs an uncuttable edge; callers
/// compare against min_cut to decide whether the certificate is usable.
MinCutResult min_cut_avoiding(const MultiGraph& g, const std::set<VertexId>& x,
                              const std::set<VertexId>& y,
                              const std::set<EdgeId>& uncuttable);

struct Path {
  std::vector<VertexId> verts;
  std::vector<EdgeId> edges;  // verts.size() == edges.size() + 1
};

/// k pairwise edge-disjoint paths from s to y. Throws Domain with the min cut
/// as witness when k exceeds the max-flow value.
std::vector<Path> edge_disjoint_paths(const MultiGraph& g,
                                      const std::set<VertexId>& s,
                                      const std::set<VertexId>& y,
                                      std::size_t k);

struct ContractionMinor {
  MultiGraph minor;
  std::map<VertexId, VertexId> class_map;      // original -> minor vertex
  std::set<VertexId> super_vertices;           // images of the contracted classes
  std::map<EdgeId, EdgeId> edge_correspondence;  // minor edge -> original edge
};

/// Contract each class (disjoint, connected) to a single vertex, keeping all
/// parallel edges that arise and dropping internal ones. Minor edges keep
/// their original EdgeIds. `names`, when given, supplies the image vertex per
/// class; otherwise the smallest class member is used.
ContractionMinor contract(const MultiGraph& g,
                          const std::vector<std::set<VertexId>>& classes,
                          const std::vector<VertexId>& names = {});

}  // namespace tpack

#endif
