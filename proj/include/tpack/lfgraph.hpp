#ifndef TPACK_LFGRAPH_HPP
#define TPACK_LFGRAPH_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tpack/multigraph.hpp"

namespace tpack {

using EndId = std::string;

/// Ray representative: i -> the i-th vertex of some ray in the end.
using RayFn = std::function<VertexId(std::size_t)>;

struct EndDecl {
  EndId id;
  RayFn ray;
};

/// Named infinite vertex set, so terminal specs can say things like "the
/// vertices of one main double ray" without enumerating them. `tails`
/// witness where the family accumulates.
struct VertexFamily {
  std::string name;
  std::function<bool(const VertexId&)> contains;
  std::vector<RayFn> tails;
};

/// Lazily generated locally finite graph with a root and finitely many
/// declared ends. Adjacency must be a pure function; symmetry and ray
/// validity are checked at window scale, not trusted.
class LFGraphPresentation {
 public:
  using AdjEntry = std::pair<EdgeId, VertexId>;
  using AdjFn = std::function<std::vector<AdjEntry>(const VertexId&)>;

  LFGraphPresentation() = default;
  LFGraphPresentation(AdjFn adj, VertexId root, std::vector<EndDecl> ends);

  /// Incident (edge, neighbor) pairs, ascending by EdgeId.
  std::vector<AdjEntry> adjacency(const VertexId& v) const;
  const VertexId& root() const { return root_; }
  const std::vector<EndDecl>& ends() const { return ends_; }
  const EndDecl& end(const EndId& id) const;
  bool has_end(const EndId& id) const;

  const std::vector<VertexFamily>& families() const { return families_; }
  const VertexFamily& family(const std::string& name) const;
  void add_family(VertexFamily f) { families_.push_back(std::move(f)); }

  /// Radius beyond which degree and parity facts repeat (declared per family,
  /// not inferred). Absent means such facts can only be reported "unknown".
  std::optional<unsigned> conclusive_radius() const { return conclusive_radius_; }
  void set_conclusive_radius(unsigned r) { conclusive_radius_ = r; }

  /// Whether the declaration lists every end of the graph.
  bool ends_complete() const { return ends_complete_; }
  void set_ends_complete(bool b) { ends_complete_ = b; }

  /// True when the presentation wraps a finite MultiGraph.
  bool finite() const { return finite_; }
  void set_finite(bool b) { finite_ = b; }

  /// Internal window memoization handle; copies share it.
  const std::shared_ptr<void>& window_cache() const { return window_cache_; }

 private:
  AdjFn adj_;
  VertexId root_;
  std::vector<EndDecl> ends_;
  std::vector<VertexFamily> families_;
  std::optional<unsigned> conclusive_radius_;
  bool ends_complete_ = false;
  bool finite_ = false;
  std::shared_ptr<void> window_cache_;
};

/// View a finite MultiGraph as a presentation with no ends.
LFGraphPresentation presentation_from_graph(const MultiGraph& g);

struct TerminalSpec {
  std::set<VertexId> vertex_terminals;
  std::vector<EndId> end_terminals;       // declared order drives the pipeline
  std::vector<std::string> families;      // named infinite vertex-terminal sets

  bool has_end(const EndId& e) const;
};

/// Finite window: the ball B_r around the root, with every residual component
/// that could not be fully explored (infinite, or past the exploration
/// budget) contracted to a '$'-prefixed super-vertex, parallel edges kept.
/// Fully explored finite components stay explicit, so a finite presentation
/// windows to the graph itself at every radius. Edge ids are original ids;
/// lifting a window cut to the infinite graph is the identity on edges.
struct TruncatedGraph {
  unsigned radius = 0;
  MultiGraph graph;
  std::set<VertexId> ball;
  std::map<VertexId, unsigned> distance;           // within the ball
  std::map<EndId, VertexId> end_region;            // declared end -> super-vertex
  std::vector<VertexId> nonend_regions;            // supers without a declared end
  std::map<VertexId, std::vector<VertexId>> region_members;  // explored sample
  std::map<VertexId, std::vector<EdgeId>> excluded_stubs;    // see WindowOptions

  bool is_super(const VertexId& v) const { return !v.empty() && v[0] == '$'; }
  std::vector<VertexId> supers() const;
};

struct WindowOptions {
  std::size_t component_budget = 4096;
  /// Vertices satisfying this predicate are removed from the window; the
  /// edges from kept vertices to removed ones are reported in excluded_stubs.
  std::function<bool(const VertexId&)> exclude;
};

TruncatedGraph window(const LFGraphPresentation& g, unsigned r,
                      const WindowOptions& opts = {});

/// Edges of the window that do not lie strictly inside B_radius: an endpoint
/// is a super-vertex, outside the ball, or deeper than `radius`. Certificates
/// avoiding these survive every larger window unchanged.
std::set<EdgeId> window_boundary_edges(const TruncatedGraph& w, unsigned radius);

/// Certificate search shared by the stabilization loops: a cut between x and
/// y of exactly `target` edges, all strictly inside B_radius. Returns nothing
/// when every minimum cut needs a boundary edge at this radius.
std::optional<Cut> interior_certificate(const TruncatedGraph& w, const MultiGraph& view,
                                        const std::set<VertexId>& x,
                                        const std::set<VertexId>& y, unsigned radius,
                                        std::size_t target);

/// Discreteness verdict for one terminal.
struct DiscreteVerdict {
  enum class Status { Discrete, NotDiscrete, Unknown };
  Status status = Status::Unknown;
  unsigned radius = 0;                    // radius of separation / last probed
  std::vector<std::string> evidence;
};

std::map<std::string, DiscreteVerdict> check_discrete(const LFGraphPresentation& g,
                                                      const TerminalSpec& t,
                                                      unsigned r_max);

/// One element of V-hat: a vertex or a declared end.
struct TerminalRef {
  bool is_end = false;
  VertexId vertex;
  EndId end;

  static TerminalRef of_vertex(VertexId v) { return {false, std::move(v), {}}; }
  static TerminalRef of_end(EndId e) { return {true, {}, std::move(e)}; }
  std::string token() const { return is_end ? end : vertex; }
};

struct LambdaEndResult {
  std::size_t value = 0;
  Cut cut;                 // window cut; edge ids are original ids of g
  unsigned radius = 0;     // stabilization radius
};

/// λ_G(t, rest) via stabilized window min cuts: accepted when two consecutive
/// radii agree and the certificate cut lies strictly inside the smaller ball.
LambdaEndResult lambda_end(const LFGraphPresentation& g, const TerminalRef& t,
                           const std::vector<TerminalRef>& rest, unsigned r_max,
                           const std::vector<std::string>& rest_families = {});

enum class Parity { Even, Odd, Unknown };
std::string parity_name(Parity p);

struct EndParityResult {
  Parity parity = Parity::Unknown;
  std::vector<std::size_t> degrees;  // max edge-disjoint B_r–ω rays per radius
};

EndParityResult end_degree_parity(const LFGraphPresentation& g, const EndId& omega,
                                  unsigned r_max);

struct EndsVerdict {
  enum class Status { True, False, Unknown };
  Status status = Status::Unknown;
  std::optional<TerminalRef> witness;  // odd non-terminal vertex or end
  std::string note;
};

/// Inner-Eulerian with ends: every vertex and every declared end outside T is
/// even. True only when the presentation can certify beyond r_max (finite, or
/// conclusive radius covered and ends complete).
EndsVerdict is_inner_eulerian_with_ends(const LFGraphPresentation& g,
                                        const TerminalSpec& t, unsigned r_max);

struct CutParityVerdict {
  enum class Status { True, False };
  Status status = Status::True;
  std::optional<Cut> odd_witness;
  unsigned radius = 0;
};

/// Exhaustive radius-r verification of the premise "every finite cut with T
/// on one side is even". Refuses windows above the vertex guard.
CutParityVerdict check_cut_parity_premise(const LFGraphPresentation& g,
                                          const TerminalSpec& t, unsigned r,
                                          std::size_t vertex_guard = 18);
CutParityVerdict check_cut_parity_premise(const MultiGraph& g, const TerminalSpec& t,
                                          std::size_t vertex_guard = 18);

struct HandshakeResult {
  enum class Status { Even, PotentiallyInfinite, Unknown };
  Status status = Status::Unknown;
  std::vector<VertexId> odd_vertices;
  std::vector<EndId> odd_ends;
  std::string note;
};

/// Infinite handshaking audit: counts odd vertices and odd declared ends and
/// asserts the total is even whenever the count is certifiably complete.
HandshakeResult handshake_check(const LFGraphPresentation& g, unsigned r_max);

}  // namespace tpack

#endif
