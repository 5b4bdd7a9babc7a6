#pragma once

#include <optional>
#include <string>

#include "leafgrow/tree.hpp"

namespace leafgrow::io {

// Graphviz digraph of the tree. Edges run child -> parent, vertices carry
// their creation interval, leaves are filled gray. Output depends only on the
// tree (and weights), so it is byte-stable.
inline std::string export_dot(const Tree& tree, const std::optional<EdgeWeightMap>& weights = std::nullopt) {
  std::string out = "digraph tree {\n  rankdir=RL;\n  node [shape=circle];\n";
  for (const auto& v : tree.vertices()) {
    const auto id = std::to_string(v.id);
    out += "  v" + id + " [label=\"" + id + "\", created_at=" + std::to_string(v.created_at);
    if (tree.is_leaf(v.id)) out += ", style=filled, fillcolor=gray";
    out += "];\n";
  }
  for (const auto& v : tree.vertices()) {
    if (!v.parent) continue;
    out += "  v" + std::to_string(v.id) + " -> v" + std::to_string(*v.parent);
    if (weights) out += " [label=\"" + std::to_string(weights->at(v.id)) + "\"]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace leafgrow::io
