#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leafgrow/error.hpp"

namespace leafgrow {

// Dense vertex identifier. Ids follow creation order, the root is 0.
using VertexId = std::uint32_t;

// Creation interval. The root lives at t = 0, everything else at t >= 1.
using TimeIndex = std::uint32_t;

inline constexpr VertexId root_id = 0;

struct Vertex {
  VertexId id = root_id;
  TimeIndex created_at = 0;
  std::optional<VertexId> parent;
};

struct Attachment {
  VertexId child = root_id;
  VertexId parent = root_id;

  friend bool operator==(const Attachment&, const Attachment&) = default;
};

// Directed ordered path from a starting vertex down to the root.
// vertices.front() is the start, vertices.back() is always the root.
struct Path {
  std::vector<VertexId> vertices;

  std::size_t attachment_count() const {
    return vertices.empty() ? 0 : vertices.size() - 1;
  }
  VertexId start() const { return vertices.front(); }

  std::vector<Attachment> attachments() const {
    std::vector<Attachment> out;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
      out.push_back({vertices[i], vertices[i + 1]});
    }
    return out;
  }

  friend bool operator==(const Path&, const Path&) = default;
};

// Append-only, time-ordered rooted tree grown by leaf attachment.
//
// A new vertex attaches to exactly one leaf of the snapshot taken before its
// batch, so every parent is older than its child and ids increasing with time
// give a topological order for free.
class Tree {
 public:
  Tree() : vertices_{Vertex{root_id, 0, std::nullopt}}, children_(1), is_leaf_{true}, leaves_{root_id} {}

  std::size_t size() const { return vertices_.size(); }

  bool contains(VertexId v) const { return v < vertices_.size(); }

  const Vertex& vertex(VertexId v) const {
    check(v);
    return vertices_[v];
  }
  std::span<const Vertex> vertices() const { return vertices_; }

  std::span<const VertexId> children(VertexId v) const {
    check(v);
    return children_[v];
  }

  bool is_leaf(VertexId v) const {
    check(v);
    return is_leaf_[v];
  }

  // Current leaf set, sorted by id.
  const std::vector<VertexId>& leaves() const { return leaves_; }

  TimeIndex latest_time() const { return vertices_.back().created_at; }

  // Appends one new vertex per target, all created at interval t.
  //
  // Targets are validated against the leaf set as it stood before the batch,
  // so the new vertices can never be targets themselves. A leaf may be
  // targeted several times. Returns the new ids in target order.
  std::vector<VertexId> append_batch(TimeIndex t, std::span<const VertexId> targets) {
    if (t <= latest_time()) {
      throw invalid_attachment("batch time " + std::to_string(t) +
                               " does not exceed latest creation time " +
                               std::to_string(latest_time()));
    }
    for (VertexId target : targets) {
      if (!contains(target)) {
        throw unknown_vertex("attachment target " + std::to_string(target) + " does not exist");
      }
      if (!is_leaf_[target]) {
        throw invalid_attachment("attachment target " + std::to_string(target) +
                                 " is not a leaf of the pre-batch snapshot");
      }
    }

    std::vector<VertexId> created;
    created.reserve(targets.size());
    for (VertexId target : targets) {
      const auto id = static_cast<VertexId>(vertices_.size());
      vertices_.push_back(Vertex{id, t, target});
      children_.emplace_back();
      children_[target].push_back(id);
      is_leaf_.push_back(true);
      created.push_back(id);
    }
    for (VertexId target : targets) is_leaf_[target] = false;

    std::erase_if(leaves_, [this](VertexId v) { return !is_leaf_[v]; });
    // New ids exceed every existing id, so appending keeps the set sorted.
    leaves_.insert(leaves_.end(), created.begin(), created.end());
    return created;
  }

  std::vector<VertexId> append_batch(TimeIndex t, std::initializer_list<VertexId> targets) {
    return append_batch(t, std::span<const VertexId>(targets.begin(), targets.size()));
  }

  Path path_to_root(VertexId v) const {
    check(v);
    Path path;
    path.vertices.push_back(v);
    while (const auto& parent = vertices_[v].parent) {
      v = *parent;
      path.vertices.push_back(v);
    }
    return path;
  }

  std::vector<Attachment> attachments() const {
    std::vector<Attachment> out;
    out.reserve(vertices_.empty() ? 0 : vertices_.size() - 1);
    for (const auto& v : vertices_) {
      if (v.parent) out.push_back({v.id, *v.parent});
    }
    return out;
  }

  friend bool operator==(const Tree& a, const Tree& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto& x = a.vertices_[i];
      const auto& y = b.vertices_[i];
      if (x.created_at != y.created_at || x.parent != y.parent) return false;
    }
    return true;
  }

 private:
  void check(VertexId v) const {
    if (!contains(v)) throw unknown_vertex("unknown vertex id " + std::to_string(v));
  }

  std::vector<Vertex> vertices_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<bool> is_leaf_;
  std::vector<VertexId> leaves_;
};

inline Tree new_tree() { return Tree{}; }

// Attachment multiplicities: for every attachment y -> x, the number of
// leaf-to-root paths passing through it, which is the leaf count of the
// subtree rooted at y. Indexed by the child end since each vertex has at most
// one outgoing attachment.
class EdgeWeightMap {
 public:
  EdgeWeightMap() = default;
  explicit EdgeWeightMap(std::vector<std::uint64_t> by_child) : by_child_(std::move(by_child)) {}

  bool contains(VertexId child) const { return child != root_id && child < by_child_.size(); }

  std::uint64_t at(VertexId child) const {
    if (!contains(child)) {
      throw unknown_vertex("no attachment leaves vertex " + std::to_string(child));
    }
    return by_child_[child];
  }

  // Number of attachments, i.e. vertices minus the root.
  std::size_t size() const { return by_child_.empty() ? 0 : by_child_.size() - 1; }
  bool empty() const { return size() == 0; }

  // Raw per-vertex view; the root slot holds 0.
  std::span<const std::uint64_t> by_child() const { return by_child_; }

  friend bool operator==(const EdgeWeightMap&, const EdgeWeightMap&) = default;

 private:
  std::vector<std::uint64_t> by_child_;
};

// One backward pass in reverse id order, which is a valid reverse topological
// order because parents are always older than their children.
inline EdgeWeightMap attachment_weights(const Tree& tree) {
  if (tree.size() == 1) return EdgeWeightMap{};
  std::vector<std::uint64_t> w(tree.size(), 0);
  for (std::size_t i = tree.size(); i-- > 1;) {
    const auto v = static_cast<VertexId>(i);
    if (tree.is_leaf(v)) w[v] += 1;
    w[*tree.vertex(v).parent] += w[v];
  }
  w[root_id] = 0;
  return EdgeWeightMap{std::move(w)};
}

// Number of attachments between each vertex and the root.
inline std::vector<std::size_t> depths(const Tree& tree) {
  std::vector<std::size_t> depth(tree.size(), 0);
  for (const auto& v : tree.vertices()) {
    if (v.parent) depth[v.id] = depth[*v.parent] + 1;
  }
  return depth;
}

// Rebuilds a tree from a recorded attachment sequence, validating every
// batch against the growth rules on the way.
struct Batch {
  TimeIndex t = 0;
  std::vector<VertexId> targets;
};

inline Tree replay(std::span<const Batch> batches) {
  Tree tree;
  for (const auto& b : batches) tree.append_batch(b.t, b.targets);
  return tree;
}

}  // namespace leafgrow
