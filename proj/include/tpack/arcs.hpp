#ifndef TPACK_ARCS_HPP
#define TPACK_ARCS_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tpack/lfgraph.hpp"
#include "tpack/multigraph.hpp"
#include "tpack/rays.hpp"
#include "tpack/tpath.hpp"

namespace tpack {

/// Graphic T-arc: a finite path, a ray, or a double ray with tails in
/// distinct ends. Infinite kinds are materialized as finite prefixes.
struct Arc {
  enum class Kind { FinitePath, Ray, DoubleRay };
  Kind kind = Kind::FinitePath;
  std::vector<VertexId> verts;
  std::vector<EdgeId> edges;
  TerminalRef from;
  TerminalRef to;
  unsigned materialized_depth = 0;
};

std::string arc_kind_name(Arc::Kind k);

struct ArcSystem {
  std::vector<Arc> arcs;
  std::map<std::string, std::size_t> counts;  // terminal token -> arc count
};

/// One stage of the recursive cut construction: the cut F_n for the end ω_n,
/// the component C_n of its ω-side, and the contracted stage graph the cut
/// was found in (previous components already collapsed).
struct StageCut {
  EndId end;
  Cut cut;                      // minor-level sides; edge ids are original ids
  std::set<VertexId> component;
  ContractionMinor stage_minor;
  unsigned radius = 0;          // stabilization radius of this cut
};

struct PipelineState {
  std::vector<EndId> end_order;
  std::vector<StageCut> stages;
  unsigned final_radius = 0;
  TruncatedGraph final_window;
  ContractionMinor final_minor;
  std::map<std::string, VertexId> terminal_image;  // terminal token -> minor vertex
  std::map<EndId, RaySystem> ray_systems;
  PathSystem packing;
  PackingCertificate packing_cert;
  std::map<std::string, std::size_t> lambda;       // terminal token -> λ_G(t, T\{t})
};

struct PipelineOptions {
  unsigned r_max = 32;
  bool via_inner_eulerian = false;  // verify the premise via inner-Eulerian only
  std::size_t premise_guard = 18;
};

/// Recursive end-separating cuts F_n with pairwise disjoint components C_n,
/// in declared terminal order. Needs discreteness for all end terminals.
std::vector<StageCut> compute_separating_cuts(const LFGraphPresentation& g,
                                              const TerminalSpec& t, unsigned r,
                                              const PipelineOptions& opts = {});

struct FinalMinor {
  TruncatedGraph window;
  ContractionMinor minor;
  std::map<std::string, VertexId> terminal_image;
  std::set<VertexId> terminal_vertices;  // T_κ in the minor
};

/// G_κ at window scale: every C_n contracted to a terminal super-vertex,
/// non-terminal regions left as the window's non-terminal super-vertices.
FinalMinor build_final_minor(const LFGraphPresentation& g, const TerminalSpec& t,
                             const std::vector<StageCut>& stages, unsigned radius);

/// The full arc-assembly pipeline. Requires the cut-parity premise (checked
/// exhaustively at window scale, or via inner-Eulerian-with-ends) and
/// discreteness; returns the arc system with per-terminal counts equal to the
/// lambda profile, plus the proof-mirroring state as certificate.
std::pair<ArcSystem, PipelineState> assemble_arcs(const LFGraphPresentation& g,
                                                  const TerminalSpec& t, unsigned r,
                                                  unsigned depth,
                                                  const PipelineOptions& opts = {});

struct MuResult {
  std::size_t value = 0;
  unsigned radius = 0;
  bool stabilized = false;
};

/// Window estimate of μ_G(t, rest): maximum edge-disjoint t-(rest) arcs with
/// rest vertex terminals usable only as arc endpoints. A radius-r value with
/// a stabilization flag, not a claim about the true μ.
MuResult mu_estimate(const LFGraphPresentation& g, const TerminalRef& t,
                     const TerminalSpec& rest, unsigned r,
                     const PipelineOptions& opts = {});

ValidityReport verify_arc_system(const LFGraphPresentation& g, const TerminalSpec& t,
                                 const ArcSystem& a, const PipelineState& state,
                                 unsigned r);

nlohmann::json arc_system_to_json(const ArcSystem& a, const PipelineState& state);

}  // namespace tpack

#endif
