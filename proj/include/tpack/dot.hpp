#ifndef TPACK_DOT_HPP
#define TPACK_DOT_HPP

#include <string>
#include <vector>

#include "tpack/arcs.hpp"
#include "tpack/lfgraph.hpp"
#include "tpack/multigraph.hpp"

namespace tpack {

std::string dot_render(const MultiGraph& g);

/// Window rendering: super-vertices boxed, the cuts F_n highlighted in one
/// color per stage, arcs colored by index.
std::string dot_render_window(const TruncatedGraph& w,
                              const std::vector<StageCut>& cuts = {},
                              const ArcSystem* arcs = nullptr);

}  // namespace tpack

#endif
