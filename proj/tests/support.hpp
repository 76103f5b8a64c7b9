#ifndef TPACK_TESTS_SUPPORT_HPP
#define TPACK_TESTS_SUPPORT_HPP

// Shared test scaffolding: tiny graph builders, brute-force oracles that stay
// independent of the library's solver paths, and the exhaustive small-instance
// corpus enumerator.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tpack/multigraph.hpp"

namespace tsup {

using tpack::EdgeId;
using tpack::MultiGraph;
using tpack::VertexId;

inline MultiGraph graph(std::vector<VertexId> verts,
                        std::vector<std::pair<VertexId, VertexId>> edges) {
  std::vector<MultiGraph::Edge> es;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "e%02zu", i + 1);
    es.push_back({buf, edges[i].first, edges[i].second});
  }
  return MultiGraph::make(std::move(verts), std::move(es));
}

// Oracle: minimum boundary over all vertex sets containing x, avoiding y.
// Pure enumeration; no flow machinery involved.
inline std::size_t min_cut_by_enumeration(const MultiGraph& g,
                                          const std::set<VertexId>& x,
                                          const std::set<VertexId>& y) {
  const auto& vs = g.vertices();
  std::size_t n = vs.size();
  std::size_t best = g.edge_count() + 1;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    std::set<VertexId> side;
    for (std::size_t i = 0; i < n; ++i) {
      if (bits & (1u << i)) side.insert(vs[i]);
    }
    bool ok = true;
    for (const auto& v : x) {
      if (!side.count(v)) ok = false;
    }
    for (const auto& v : y) {
      if (side.count(v)) ok = false;
    }
    if (!ok) continue;
    std::size_t b = 0;
    for (const auto& e : g.edges()) {
      if (side.count(e.u) != side.count(e.v)) ++b;
    }
    best = std::min(best, b);
  }
  return best;
}

// Labeled connected multigraphs with <= max_vertices vertices and
// <= max_edges edges (vertices "a", "b", ...). Calls fn on each.
inline void for_each_connected_multigraph(
    std::size_t max_vertices, std::size_t max_edges,
    const std::function<void(const MultiGraph&)>& fn) {
  for (std::size_t n = 1; n <= max_vertices; ++n) {
    std::vector<VertexId> verts;
    for (std::size_t i = 0; i < n; ++i) verts.push_back(std::string(1, char('a' + i)));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
    }
    // multisets of pair indices, nondecreasing
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      // connectivity check via union-find over chosen pairs
      {
        std::vector<std::size_t> parent(n);
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
          while (parent[x] != x) x = parent[x] = parent[parent[x]];
          return x;
        };
        for (std::size_t pi : chosen) {
          parent[find(pairs[pi].first)] = find(pairs[pi].second);
        }
        std::size_t roots = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (find(i) == i) ++roots;
        }
        if (roots == 1) {
          std::vector<MultiGraph::Edge> es;
          for (std::size_t k = 0; k < chosen.size(); ++k) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "e%02zu", k + 1);
            es.push_back({buf, verts[pairs[chosen[k]].first], verts[pairs[chosen[k]].second]});
          }
          fn(MultiGraph::make(verts, std::move(es)));
        }
      }
      if (chosen.size() == max_edges) return;
      for (std::size_t pi = from; pi < pairs.size(); ++pi) {
        chosen.push_back(pi);
        rec(pi);
        chosen.pop_back();
      }
    };
    rec(0);
  }
}

// All terminal subsets of size >= 2, as sorted vertex sets.
inline std::vector<std::set<VertexId>> terminal_subsets(const MultiGraph& g) {
  const auto& vs = g.vertices();
  std::vector<std::set<VertexId>> out;
  std::size_t n = vs.size();
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    if (__builtin_popcount(bits) < 2) continue;
    std::set<VertexId> t;
    for (std::size_t i = 0; i < n; ++i) {
      if (bits & (1u << i)) t.insert(vs[i]);
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace tsup

#endif
