#ifndef TPACK_FLOW_HPP
#define TPACK_FLOW_HPP

#include <cstddef>
#include <vector>

namespace tpack::flow {

// Unit-capacity-centric max-flow network with a fixed, reproducible search
// order: BFS augmenting paths that scan adjacency lists in insertion order.
// Callers insert real edges in ascending EdgeId order, then attachments, and
// the whole pipeline inherits determinism from that.
class Network {
 public:
  static constexpr int kInf = 1 << 28;

  explicit Network(int vertex_count) : adj_(vertex_count) {}

  int add_vertex();
  int vertex_count() const { return static_cast<int>(adj_.size()); }

  // Undirected edge of capacity cap; label identifies it in decompositions
  // (callers use the position of the real edge, or -1 for attachments).
  void add_undirected(int u, int v, int cap, int label);
  // Directed edge (reverse residual capacity 0).
  void add_directed(int u, int v, int cap, int label);

  // Runs max-flow from s to t; returns the value. May be called once.
  int max_flow(int s, int t);

  // After max_flow: vertices residual-reachable from s.
  std::vector<char> source_side(int s) const;

  // After max_flow: net flow pushed along arc pair p (by insertion order).
  int pair_flow(int pair) const;
  int pair_count() const { return static_cast<int>(arcs_.size() / 2); }
  int pair_label(int pair) const { return arcs_[2 * pair].label; }
  int pair_from(int pair) const { return arcs_[2 * pair + 1].to; }
  int pair_to(int pair) const { return arcs_[2 * pair].to; }

  struct TracedPath {
    std::vector<int> vertices;  // s ... t
    std::vector<int> pairs;     // arc pairs walked, len = vertices-1
  };

  // Decomposes the computed flow into paths from s to t, consuming flow as it
  // goes. Each trace follows the lowest-index flow-carrying arc and erases
  // loops, so every returned path is simple. Returns exactly `value` paths.
  std::vector<TracedPath> decompose(int s, int t);

 private:
  struct Arc {
    int to;
    int cap;  // residual
    int label;
  };

  std::vector<Arc> arcs_;                // paired: 2k forward, 2k+1 backward
  std::vector<std::vector<int>> adj_;    // arc indices per vertex
  std::vector<int> base_cap_;            // per pair: original forward cap
  bool solved_ = false;

  bool bfs_augment(int s, int t);
};

}  // namespace tpack::flow

#endif
