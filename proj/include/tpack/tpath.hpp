#ifndef TPACK_TPATH_HPP
#define TPACK_TPATH_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tpack/multigraph.hpp"

namespace tpack {

struct TerminalSet {
  std::set<VertexId> terminals;
};

/// Edge-disjoint system of T-paths: every path has both endpoints in T, no
/// inner vertex in T, and repeats no vertex.
struct PathSystem {
  std::vector<Path> paths;
};

struct PackingCertificate {
  std::map<VertexId, std::size_t> lambda_profile;
  std::map<VertexId, Cut> per_terminal_cuts;
};

struct InnerEulerianVerdict {
  bool holds = false;
  std::optional<VertexId> odd_witness;  // an odd-degree non-terminal, when !holds
};

/// True iff every vertex outside t has even degree.
InnerEulerianVerdict is_inner_eulerian(const MultiGraph& g, const TerminalSet& t);

/// λ_G(t, T \ {t}) for each terminal. Requires |T| >= 2.
std::map<VertexId, std::size_t> lambda_profile(const MultiGraph& g, const TerminalSet& t);

/// Maximum edge-disjoint T-path packing of an inner-Eulerian instance, with
/// per-terminal counts equal to the lambda profile and one certifying cut per
/// terminal. Throws Precondition (with the odd vertex as witness) otherwise.
/// `split_budget` caps the backtracking search over admissible splitting
/// pairs; exhaustion fails loudly rather than returning a weaker packing.
std::pair<PathSystem, PackingCertificate> pack_tpaths(const MultiGraph& g,
                                                      const TerminalSet& t,
                                                      long split_budget = 200000);

struct BruteForceResult {
  std::size_t max_paths = 0;
  std::optional<PathSystem> witness;
  std::map<VertexId, std::size_t> per_terminal_max;
};

/// Exhaustive maximum T-path packing; no inner-Eulerian assumption. Refuses
/// graphs above the edge guard rather than approximating.
BruteForceResult brute_force_pack(const MultiGraph& g, const TerminalSet& t,
                                  std::size_t edge_guard = 12);

struct ValidityReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every PathSystem/PackingCertificate invariant plus the per-terminal
/// count = lambda condition; violations are reported, never thrown.
ValidityReport verify_packing(const MultiGraph& g, const TerminalSet& t,
                              const PathSystem& p, const PackingCertificate& c);

nlohmann::json packing_to_json(const PathSystem& p, const PackingCertificate& c);

}  // namespace tpack

#endif
