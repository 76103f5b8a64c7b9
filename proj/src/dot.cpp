#include "tpack/dot.hpp"

#include <map>
#include <sstream>

namespace tpack {

namespace {

const char* kCutColors[] = {"red", "blue", "darkgreen", "orange", "purple", "brown"};
const char* kArcColors[] = {"crimson",  "dodgerblue", "forestgreen",
                            "darkorange", "mediumorchid", "goldenrod"};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string dot_render(const MultiGraph& g) {
  std::ostringstream out;
  out << "graph {\n  node [shape=circle fontsize=10];\n";
  for (const auto& v : g.vertices()) {
    out << "  " << quote(v) << ";\n";
  }
  for (const auto& e : g.edges()) {
    out << "  " << quote(e.u) << " -- " << quote(e.v) << " [label=" << quote(e.id)
        << " fontsize=8];\n";
  }
  out << "}\n";
  return out.str();
}

std::string dot_render_window(const TruncatedGraph& w, const std::vector<StageCut>& cuts,
                              const ArcSystem* arcs) {
  std::map<EdgeId, std::string> edge_color;
  std::map<EdgeId, std::string> edge_note;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    for (const EdgeId& e : cuts[i].cut.edge_set) {
      edge_color[e] = kCutColors[i % (sizeof(kCutColors) / sizeof(*kCutColors))];
      edge_note[e] = "F_" + std::to_string(i);
    }
  }
  if (arcs) {
    for (std::size_t i = 0; i < arcs->arcs.size(); ++i) {
      for (const EdgeId& e : arcs->arcs[i].edges) {
        if (!edge_color.count(e)) {
          edge_color[e] = kArcColors[i % (sizeof(kArcColors) / sizeof(*kArcColors))];
          edge_note[e] = "A" + std::to_string(i);
        }
      }
    }
  }

  std::ostringstream out;
  out << "graph {\n  node [shape=circle fontsize=10];\n";
  for (const auto& v : w.graph.vertices()) {
    out << "  " << quote(v);
    if (w.is_super(v)) {
      out << " [shape=box style=filled fillcolor=lightgray]";
    }
    out << ";\n";
  }
  for (const auto& e : w.graph.edges()) {
    out << "  " << quote(e.u) << " -- " << quote(e.v);
    out << " [label=" << quote(e.id + (edge_note.count(e.id) ? " " + edge_note[e.id] : ""))
        << " fontsize=8";
    if (edge_color.count(e.id)) {
      out << " color=" << edge_color[e.id] << " penwidth=2";
    }
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tpack
