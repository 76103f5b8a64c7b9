#include "tpack/tpath.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>

#include "tpack/errors.hpp"
#include "tpack/flow.hpp"

namespace tpack {

InnerEulerianVerdict is_inner_eulerian(const MultiGraph& g, const TerminalSet& t) {
  for (const VertexId& v : t.terminals) g.vertex_index(v);
  for (const VertexId& v : g.vertices()) {
    if (t.terminals.count(v)) continue;
    if (g.degree(v) % 2 != 0) return {false, v};
  }
  return {true, std::nullopt};
}

std::map<VertexId, std::size_t> lambda_profile(const MultiGraph& g, const TerminalSet& t) {
  if (t.terminals.size() < 2) {
    throw Error(ErrorKind::Domain, "lambda_profile needs at least two terminals");
  }
  std::map<VertexId, std::size_t> out;
  for (const VertexId& term : t.terminals) {
    std::set<VertexId> rest = t.terminals;
    rest.erase(term);
    out[term] = min_cut(g, {term}, rest).value;
  }
  return out;
}

namespace {

// Working state for the splitting-off search. Vertices are dense component
// indices; edges carry the walk of original edges they stand for.
struct SplitState {
  struct WEdge {
    int u = 0;
    int v = 0;
    bool alive = false;
    std::vector<std::size_t> walk;      // original edge positions, oriented u -> v
    std::vector<int> junctions;         // inner vertices of the walk, len = walk-1
  };

  std::vector<WEdge> wedges;            // index = working edge id (ascending order)
  std::vector<char> is_terminal;
  int n = 0;

  std::vector<int> alive_at(int v) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(wedges.size()); ++i) {
      if (wedges[i].alive && (wedges[i].u == v || wedges[i].v == v)) out.push_back(i);
    }
    return out;
  }

  // Unit max-flow value between a terminal and the rest, over alive edges.
  std::size_t lambda(int term, const std::vector<int>& rest) const {
    flow::Network net(n + 2);
    int s = n, t = n + 1;
    int m = 0;
    for (const auto& we : wedges) {
      if (we.alive) {
        net.add_undirected(we.u, we.v, 1, -1);
        ++m;
      }
    }
    net.add_directed(s, term, m + 1, -1);
    for (int r : rest) net.add_directed(r, t, m + 1, -1);
    return static_cast<std::size_t>(net.max_flow(s, t));
  }
};

struct ComponentProblem {
  std::vector<VertexId> verts;          // dense index -> vertex id
  std::vector<int> terminals;           // dense indices, ascending
  std::map<VertexId, std::size_t> targets;
};

// Depth-first complete splitting with backtracking over pair choices. Budget
// counts committed split attempts across the whole search.
struct Splitter {
  const ComponentProblem& prob;
  const MultiGraph& g;
  long budget;

  bool lambda_preserved(const SplitState& st) const {
    for (std::size_t i = 0; i < prob.terminals.size(); ++i) {
      int term = prob.terminals[i];
      std::vector<int> rest;
      for (int r : prob.terminals) {
        if (r != term) rest.push_back(r);
      }
      if (st.lambda(term, rest) != prob.targets.at(prob.verts[term])) return false;
    }
    return true;
  }

  bool run(SplitState& st) {
    // next vertex to clear: smallest non-terminal with alive degree > 0
    int v = -1;
    for (int i = 0; i < st.n; ++i) {
      if (st.is_terminal[i]) continue;
      if (!st.alive_at(i).empty()) {
        v = i;
        break;
      }
    }
    if (v < 0) return true;  // all non-terminals isolated

    auto incident = st.alive_at(v);
    for (std::size_t a = 0; a < incident.size(); ++a) {
      for (std::size_t b = a + 1; b < incident.size(); ++b) {
        if (budget-- <= 0) {
          throw Error(ErrorKind::Internal, "splitting-off backtracking budget exhausted");
        }
        int ei = incident[a], ej = incident[b];
        SplitState next = st;
        auto& we_i = next.wedges[ei];
        auto& we_j = next.wedges[ej];
        we_i.alive = false;
        we_j.alive = false;
        int u = we_i.u == v ? we_i.v : we_i.u;
        int w = we_j.u == v ? we_j.v : we_j.u;
        if (u != w) {
          SplitState::WEdge merged;
          merged.u = u;
          merged.v = w;
          merged.alive = true;
          // orient walk(i) u -> v, walk(j) v -> w
          auto walk_i = we_i.walk;
          auto junc_i = we_i.junctions;
          if (we_i.u == v) {
            std::reverse(walk_i.begin(), walk_i.end());
            std::reverse(junc_i.begin(), junc_i.end());
          }
          auto walk_j = we_j.walk;
          auto junc_j = we_j.junctions;
          if (we_j.v == v) {
            std::reverse(walk_j.begin(), walk_j.end());
            std::reverse(junc_j.begin(), junc_j.end());
          }
          merged.walk = walk_i;
          merged.walk.insert(merged.walk.end(), walk_j.begin(), walk_j.end());
          merged.junctions = junc_i;
          merged.junctions.push_back(v);
          merged.junctions.insert(merged.junctions.end(), junc_j.begin(), junc_j.end());
          next.wedges.push_back(std::move(merged));
        }
        // u == w would create a loop; loops cross no cut, so we drop the pair
        // (and its walk) entirely, at either terminals or non-terminals.
        if (!lambda_preserved(next)) continue;
        if (run(next)) {
          st = std::move(next);
          return true;
        }
      }
    }
    return false;
  }
};

Path expand_walk(const MultiGraph& g, const ComponentProblem& prob,
                 const SplitState::WEdge& we) {
  Path p;
  p.verts.push_back(prob.verts[we.u]);
  for (std::size_t i = 0; i < we.walk.size(); ++i) {
    p.edges.push_back(g.edges()[we.walk[i]].id);
    if (i + 1 < we.walk.size()) {
      p.verts.push_back(prob.verts[we.junctions[i]]);
    }
  }
  p.verts.push_back(prob.verts[we.v]);
  // trim simple cycles: drop the segment between the first repeated vertex pair
  for (;;) {
    std::map<VertexId, std::size_t> seen;
    std::size_t i = 0, j = 0;
    bool found = false;
    for (std::size_t k = 0; k < p.verts.size(); ++k) {
      auto it = seen.find(p.verts[k]);
      if (it != seen.end()) {
        i = it->second;
        j = k;
        found = true;
        break;
      }
      seen[p.verts[k]] = k;
    }
    if (!found) break;
    p.verts.erase(p.verts.begin() + i, p.verts.begin() + j);
    p.edges.erase(p.edges.begin() + i, p.edges.begin() + j);
  }
  return p;
}

}  // namespace

std::pair<PathSystem, PackingCertificate> pack_tpaths(const MultiGraph& g,
                                                      const TerminalSet& t,
                                                      long split_budget) {
  auto verdict = is_inner_eulerian(g, t);
  if (!verdict.holds) {
    nlohmann::json w;
    w["odd_vertex"] = *verdict.odd_witness;
    w["degree"] = g.degree(*verdict.odd_witness);
    throw Error(ErrorKind::Precondition,
                "graph is not inner-Eulerian for T: vertex " + *verdict.odd_witness +
                    " has odd degree",
                w);
  }

  PathSystem system;
  PackingCertificate cert;
  if (t.terminals.size() < 2) return {system, cert};  // singleton: empty packing

  for (const auto& [term, lam] : lambda_profile(g, t)) {
    cert.lambda_profile[term] = lam;
    std::set<VertexId> rest = t.terminals;
    rest.erase(term);
    // Any minimum t-(T\t) cut automatically lies on the t-paths of a maximum
    // packing (one edge per path, no edge on any other path), so the
    // canonical min cut serves as the certificate.
    cert.per_terminal_cuts[term] = min_cut(g, {term}, rest).cut;
  }

  // Solve per connected component with its induced terminal subset.
  auto labels = g.component_labels();
  int ncomp = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  for (int c = 0; c < ncomp; ++c) {
    ComponentProblem prob;
    std::map<VertexId, int> dense;
    for (std::size_t i = 0; i < g.vertices().size(); ++i) {
      if (labels[i] == c) {
        dense[g.vertices()[i]] = static_cast<int>(prob.verts.size());
        prob.verts.push_back(g.vertices()[i]);
      }
    }
    for (const VertexId& term : t.terminals) {
      auto it = dense.find(term);
      if (it != dense.end()) prob.terminals.push_back(it->second);
    }
    if (prob.terminals.size() < 2) continue;

    SplitState st;
    st.n = static_cast<int>(prob.verts.size());
    st.is_terminal.assign(st.n, 0);
    for (int term : prob.terminals) st.is_terminal[term] = 1;
    for (std::size_t ei = 0; ei < g.edges().size(); ++ei) {
      const auto& e = g.edges()[ei];
      auto iu = dense.find(e.u);
      if (iu == dense.end()) continue;
      SplitState::WEdge we;
      we.u = iu->second;
      we.v = dense.at(e.v);
      we.alive = true;
      we.walk = {ei};
      st.wedges.push_back(std::move(we));
    }
    for (int term : prob.terminals) {
      prob.targets[prob.verts[term]] = cert.lambda_profile.at(prob.verts[term]);
    }

    Splitter splitter{prob, g, split_budget};
    if (!splitter.run(st)) {
      throw Error(ErrorKind::Internal,
                  "complete admissible splitting not found (should exist for "
                  "inner-Eulerian instances)");
    }

    for (const auto& we : st.wedges) {
      if (!we.alive) continue;
      system.paths.push_back(expand_walk(g, prob, we));
    }
  }

  // The structural count property is tested, not assumed.
  std::map<VertexId, std::size_t> counts;
  for (const auto& p : system.paths) {
    counts[p.verts.front()]++;
    counts[p.verts.back()]++;
  }
  for (const auto& [term, lam] : cert.lambda_profile) {
    std::size_t got = counts.count(term) ? counts.at(term) : 0;
    if (got != lam) {
      throw Error(ErrorKind::Internal, "per-terminal path count does not match lambda at " + term);
    }
  }
  return {system, cert};
}

namespace {

struct EnumeratedPaths {
  std::vector<Path> paths;
  std::vector<std::uint32_t> masks;
  std::vector<std::pair<VertexId, VertexId>> ends;
};

void enumerate_from(const MultiGraph& g, const TerminalSet& t, const VertexId& start,
                    std::vector<std::size_t>& edge_stack, std::vector<VertexId>& vert_stack,
                    std::uint32_t mask, EnumeratedPaths& out) {
  const VertexId cur = vert_stack.back();  // by value: the stack reallocates
  for (std::size_t ei : g.incident(cur)) {
    if (mask & (1u << ei)) continue;
    const auto& e = g.edges()[ei];
    const VertexId& next = e.u == cur ? e.v : e.u;
    if (std::find(vert_stack.begin(), vert_stack.end(), next) != vert_stack.end()) continue;
    if (t.terminals.count(next)) {
      if (start < next) {  // record each path once, from its smaller endpoint
        Path p;
        p.verts = vert_stack;
        p.verts.push_back(next);
        for (std::size_t k : edge_stack) p.edges.push_back(g.edges()[k].id);
        p.edges.push_back(e.id);
        out.paths.push_back(std::move(p));
        out.masks.push_back(mask | (1u << ei));
        out.ends.push_back({start, next});
      }
      continue;  // a T-path may not continue past a terminal
    }
    edge_stack.push_back(ei);
    vert_stack.push_back(next);
    enumerate_from(g, t, start, edge_stack, vert_stack, mask | (1u << ei), out);
    edge_stack.pop_back();
    vert_stack.pop_back();
  }
}

EnumeratedPaths enumerate_tpaths(const MultiGraph& g, const TerminalSet& t) {
  EnumeratedPaths out;
  for (const VertexId& start : t.terminals) {
    std::vector<std::size_t> es;
    std::vector<VertexId> vs{start};
    enumerate_from(g, t, start, es, vs, 0, out);
  }
  return out;
}

std::size_t max_disjoint(const std::vector<std::uint32_t>& masks, std::size_t nedges,
                         std::vector<int>* memo_out = nullptr) {
  std::vector<int> memo(1u << nedges, -1);
  // g(mask) = max number of pairwise disjoint paths avoiding `mask`
  auto rec = [&](auto&& self, std::uint32_t mask) -> int {
    int& slot = memo[mask];
    if (slot >= 0) return slot;
    int best = 0;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      if ((masks[i] & mask) == 0) {
        best = std::max(best, 1 + self(self, mask | masks[i]));
      }
    }
    return slot = best;
  };
  std::size_t res = static_cast<std::size_t>(rec(rec, 0));
  if (memo_out) *memo_out = std::move(memo);
  return res;
}

}  // namespace

BruteForceResult brute_force_pack(const MultiGraph& g, const TerminalSet& t,
                                  std::size_t edge_guard) {
  if (g.edge_count() > edge_guard) {
    throw Error(ErrorKind::Domain,
                "brute_force_pack refuses " + std::to_string(g.edge_count()) +
                    " edges (guard " + std::to_string(edge_guard) + ")");
  }
  for (const VertexId& v : t.terminals) g.vertex_index(v);

  BruteForceResult res;
  auto enumerated = enumerate_tpaths(g, t);
  std::vector<int> memo;
  res.max_paths = max_disjoint(enumerated.masks, g.edge_count(), &memo);

  // reconstruct one optimal system greedily against the memo table
  PathSystem ps;
  std::uint32_t mask = 0;
  std::size_t need = res.max_paths;
  while (need > 0) {
    for (std::size_t i = 0; i < enumerated.masks.size(); ++i) {
      if ((enumerated.masks[i] & mask) == 0 &&
          static_cast<std::size_t>(memo[mask | enumerated.masks[i]]) == need - 1) {
        ps.paths.push_back(enumerated.paths[i]);
        mask |= enumerated.masks[i];
        --need;
        break;
      }
    }
  }
  res.witness = std::move(ps);

  for (const VertexId& term : t.terminals) {
    std::vector<std::uint32_t> filtered;
    for (std::size_t i = 0; i < enumerated.masks.size(); ++i) {
      if (enumerated.ends[i].first == term || enumerated.ends[i].second == term) {
        filtered.push_back(enumerated.masks[i]);
      }
    }
    res.per_terminal_max[term] = max_disjoint(filtered, g.edge_count());
  }
  return res;
}

ValidityReport verify_packing(const MultiGraph& g, const TerminalSet& t,
                              const PathSystem& p, const PackingCertificate& c) {
  ValidityReport rep;
  auto complain = [&rep](std::string msg) { rep.violations.push_back(std::move(msg)); };

  std::map<EdgeId, int> edge_use;
  std::map<VertexId, std::size_t> counts;
  for (std::size_t pi = 0; pi < p.paths.size(); ++pi) {
    const Path& path = p.paths[pi];
    std::string tag = "path " + std::to_string(pi);
    if (path.edges.empty() || path.verts.size() != path.edges.size() + 1) {
      complain(tag + ": malformed or trivial");
      continue;
    }
    for (std::size_t i = 0; i < path.edges.size(); ++i) {
      if (!g.has_edge(path.edges[i])) {
        complain(tag + ": unknown edge " + path.edges[i]);
        continue;
      }
      const auto& e = g.edge(path.edges[i]);
      bool fits = (e.u == path.verts[i] && e.v == path.verts[i + 1]) ||
                  (e.v == path.verts[i] && e.u == path.verts[i + 1]);
      if (!fits) complain(tag + ": edge " + path.edges[i] + " does not join its vertices");
      if (++edge_use[path.edges[i]] == 2) {
        complain("edge " + path.edges[i] + " used by two paths");
      }
    }
    std::set<VertexId> distinct(path.verts.begin(), path.verts.end());
    if (distinct.size() != path.verts.size()) complain(tag + ": repeats a vertex");
    if (!t.terminals.count(path.verts.front()) || !t.terminals.count(path.verts.back())) {
      complain(tag + ": endpoint not a terminal");
    }
    for (std::size_t i = 1; i + 1 < path.verts.size(); ++i) {
      if (t.terminals.count(path.verts[i])) {
        complain(tag + ": inner vertex " + path.verts[i] + " is a terminal");
      }
    }
    counts[path.verts.front()]++;
    counts[path.verts.back()]++;
  }

  std::map<VertexId, std::size_t> lambda;
  if (t.terminals.size() >= 2) lambda = lambda_profile(g, t);
  for (const auto& [term, lam] : lambda) {
    std::size_t got = counts.count(term) ? counts.at(term) : 0;
    if (got != lam) {
      complain("terminal " + term + ": " + std::to_string(got) + " paths, lambda is " +
               std::to_string(lam));
    }
    auto itc = c.per_terminal_cuts.find(term);
    auto itl = c.lambda_profile.find(term);
    if (itl == c.lambda_profile.end() || itl->second != lam) {
      complain("certificate lambda for " + term + " missing or wrong");
    }
    if (itc == c.per_terminal_cuts.end()) {
      complain("certificate cut for " + term + " missing");
      continue;
    }
    const Cut& cut = itc->second;
    if (cut.edge_set.size() != lam) {
      complain("certificate cut for " + term + " has size " +
               std::to_string(cut.edge_set.size()) + ", lambda is " + std::to_string(lam));
    }
    // sides must partition V with t on side_a, T\{t} on side_b, edges = crossing set
    bool sides_ok = cut.side_a.count(term) > 0;
    for (const VertexId& other : t.terminals) {
      if (other != term && !cut.side_b.count(other)) sides_ok = false;
    }
    std::size_t total = cut.side_a.size() + cut.side_b.size();
    if (total != g.vertex_count()) sides_ok = false;
    for (const auto& e : g.edges()) {
      bool crossing = cut.side_a.count(e.u) != cut.side_a.count(e.v);
      if (crossing != (cut.edge_set.count(e.id) > 0)) sides_ok = false;
    }
    if (!sides_ok) complain("certificate cut for " + term + " is not a t-(T\\{t}) cut");
    // the cut must lie on the t-paths: exactly one edge of each, none of any other
    for (std::size_t pi = 0; pi < p.paths.size(); ++pi) {
      const Path& path = p.paths[pi];
      if (path.verts.empty()) continue;
      bool is_tpath = path.verts.front() == term || path.verts.back() == term;
      std::size_t hits = 0;
      for (const EdgeId& e : path.edges) hits += cut.edge_set.count(e);
      if (is_tpath && hits != 1) {
        complain("cut for " + term + " not on path " + std::to_string(pi) +
                 " (hits " + std::to_string(hits) + ")");
      }
      if (!is_tpath && hits != 0) {
        complain("cut for " + term + " touches foreign path " + std::to_string(pi));
      }
    }
  }
  return rep;
}

nlohmann::json packing_to_json(const PathSystem& p, const PackingCertificate& c) {
  nlohmann::json doc;
  auto& paths = doc["paths"] = nlohmann::json::array();
  for (const auto& path : p.paths) paths.push_back(path.edges);
  doc["lambda"] = c.lambda_profile;
  auto& cuts = doc["cuts"] = nlohmann::json::object();
  for (const auto& [term, cut] : c.per_terminal_cuts) {
    cuts[term] = std::vector<EdgeId>(cut.edge_set.begin(), cut.edge_set.end());
  }
  doc["total"] = p.paths.size();
  double bound = 0;
  for (const auto& [term, lam] : c.lambda_profile) {
    (void)term;
    bound += static_cast<double>(lam);
  }
  doc["bound"] = bound / 2.0;
  return doc;
}

}  // namespace tpack
