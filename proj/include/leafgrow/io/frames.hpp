#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "leafgrow/analysis.hpp"
#include "leafgrow/growth.hpp"
#include "leafgrow/io/manifest.hpp"

namespace leafgrow::io {

// Frame files are whitespace-delimited tables, one row per vertex sorted by
// id:
//
//   id created_at parent is_leaf probability on_path
//
// parent is -1 for the root, probability is -1 for deep vertices, on_path is 1
// only in the highlighted-path frame. Lines starting with '#' are comments.
//
// A run with N intervals produces N growth frames (frame k shows the snapshot
// at the end of interval t = k - 1 with the distribution the next interval
// samples from), one complete-tree frame and one highlighted-path frame.

enum class FrameKind { growth, complete, highlight };

inline const char* to_string(FrameKind k) {
  switch (k) {
    case FrameKind::growth: return "growth";
    case FrameKind::complete: return "complete";
    case FrameKind::highlight: return "highlight";
  }
  return "unknown";
}

inline std::string frame_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%03zu.txt", index);
  return buf;
}

// Renders the snapshot of `tree` restricted to vertices created at or before
// t. `dist` must cover that snapshot's leaves.
inline std::string render_frame(const Tree& tree, TimeIndex t, const LeafDistribution& dist,
                                const std::vector<VertexId>& on_path, std::size_t index,
                                std::size_t total, FrameKind kind) {
  std::vector<bool> present(tree.size(), false), has_child(tree.size(), false), marked(tree.size(), false);
  for (const auto& v : tree.vertices()) {
    if (v.created_at > t) continue;
    present[v.id] = true;
    if (v.parent) has_child[*v.parent] = true;
  }
  for (VertexId v : on_path) marked[v] = true;

  std::string out = "# leafgrow frame " + std::to_string(index) + " of " + std::to_string(total) +
                    "\n# kind " + to_string(kind) + " t " + std::to_string(t) +
                    "\n# id created_at parent is_leaf probability on_path\n";
  for (const auto& v : tree.vertices()) {
    if (!present[v.id]) continue;
    const bool leaf = !has_child[v.id];
    const std::string parent = v.parent ? std::to_string(*v.parent) : "-1";
    const std::string prob = leaf ? format_double(dist.probability_of(v.id)) : "-1";
    out += std::to_string(v.id) + ' ' + std::to_string(v.created_at) + ' ' + parent + ' ' +
           (leaf ? '1' : '0') + ' ' + prob + ' ' + (marked[v.id] ? '1' : '0') + '\n';
  }
  return out;
}

// Writes every frame of a trajectory into dir plus a manifest.json with their
// digests. Throws io_error naming the offending path on failure.
inline RunManifest export_frames(const Trajectory& traj, const std::filesystem::path& dir) {
  ensure_directory(dir);
  RunManifest manifest;
  manifest.config = config_to_json(traj.config);

  const std::size_t intervals = traj.config.intervals;
  const std::size_t total = intervals + 2;
  const TimeIndex last = static_cast<TimeIndex>(intervals - 1);

  for (std::size_t k = 0; k < intervals; ++k) {
    // frames[k] sampled on the snapshot that closes interval k.
    const auto& dist = k + 1 < intervals ? traj.frames[k].distribution : traj.final_distribution;
    manifest.emit(dir, frame_file_name(k + 1),
                  render_frame(traj.tree, static_cast<TimeIndex>(k), dist, {}, k + 1, total, FrameKind::growth));
  }
  manifest.emit(dir, frame_file_name(intervals + 1),
                render_frame(traj.tree, last, traj.final_distribution, {}, intervals + 1, total,
                             FrameKind::complete));
  const auto highlight = highlighted_path(traj);
  manifest.emit(dir, frame_file_name(intervals + 2),
                render_frame(traj.tree, last, traj.final_distribution, highlight.path.vertices, total, total,
                             FrameKind::highlight));
  manifest.write(dir);
  return manifest;
}

}  // namespace leafgrow::io
