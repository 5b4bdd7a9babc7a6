#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "leafgrow/error.hpp"
#include "leafgrow/inference.hpp"
#include "leafgrow/tree.hpp"

namespace leafgrow {

// Degree-based branching: vertex weights turned into a leaf distribution by
// walking from the root and splitting probability among children in
// proportion to their weights.
//
// Weight maps are dense vectors indexed by VertexId. The constructors are
// templated on the scalar so the same code runs in double for growth and in
// exact rationals for checking small worked trees.

template <class Scalar>
using VertexWeightMap = std::vector<Scalar>;

template <class Scalar = double>
VertexWeightMap<Scalar> unit_weights(const Tree& tree) {
  return VertexWeightMap<Scalar>(tree.size(), Scalar(1));
}

// Leaves start at 1 and every deep vertex sums its direct children, which
// makes it the leaf count of its subtree.
template <class Scalar = double>
VertexWeightMap<Scalar> weighted_in_degree(const Tree& tree) {
  VertexWeightMap<Scalar> w(tree.size(), Scalar(0));
  for (std::size_t i = tree.size(); i-- > 0;) {
    const auto v = static_cast<VertexId>(i);
    if (tree.is_leaf(v)) w[v] = Scalar(1);
    if (const auto& parent = tree.vertex(v).parent) w[*parent] = w[*parent] + w[v];
  }
  return w;
}

// Number of descendants (subtree size without the vertex itself). Leaves get 0.
template <class Scalar = double>
VertexWeightMap<Scalar> cumulative_in_degree(const Tree& tree) {
  VertexWeightMap<Scalar> w(tree.size(), Scalar(0));
  for (std::size_t i = tree.size(); i-- > 1;) {
    const auto v = static_cast<VertexId>(i);
    const VertexId parent = *tree.vertex(v).parent;
    w[parent] = w[parent] + w[v] + Scalar(1);
  }
  return w;
}

// Raises every leaf weight to at least 1. Cumulative in-degree leaves are 0 as
// a statistic but compete as siblings with weight 1 when branching.
template <class Scalar>
VertexWeightMap<Scalar> floor_leaves(const Tree& tree, VertexWeightMap<Scalar> w) {
  for (VertexId leaf : tree.leaves()) {
    if (w[leaf] < Scalar(1)) w[leaf] = Scalar(1);
  }
  return w;
}

struct SharpenSpec {
  enum class Kind { power, exponential };
  Kind kind = Kind::power;
  double alpha = 1.0;

  friend bool operator==(const SharpenSpec&, const SharpenSpec&) = default;
};

inline VertexWeightMap<double> sharpen(VertexWeightMap<double> w, const SharpenSpec& spec) {
  if (!std::isfinite(spec.alpha)) throw invalid_parameter("sharpening exponent must be finite");
  for (auto& x : w) {
    if (spec.kind == SharpenSpec::Kind::power) {
      // pow(0, 0) is 1, matching alpha = 0 forcing every weight to unity.
      x = std::pow(x, spec.alpha);
    } else {
      x = std::exp(spec.alpha * x);
    }
  }
  return w;
}

// Integer power for exact scalars.
template <class Scalar>
VertexWeightMap<Scalar> sharpen_power(VertexWeightMap<Scalar> w, unsigned alpha) {
  for (auto& x : w) {
    Scalar r(1);
    for (unsigned k = 0; k < alpha; ++k) r = r * x;
    x = r;
  }
  return w;
}

// Probability of reaching each leaf (in tree.leaves() order): the product of
// child weight / sibling weight total along the root-to-leaf path.
template <class Scalar>
std::vector<Scalar> branch_leaf_probabilities(const Tree& tree, const VertexWeightMap<Scalar>& w) {
  if (w.size() != tree.size()) {
    throw invalid_parameter("vertex weight map does not cover the tree");
  }
  std::vector<Scalar> reach(tree.size(), Scalar(0));
  reach[root_id] = Scalar(1);
  // Children always have larger ids, so increasing id order visits every
  // parent before its children.
  for (const auto& v : tree.vertices()) {
    const auto kids = tree.children(v.id);
    if (kids.empty()) continue;
    Scalar total(0);
    for (VertexId c : kids) {
      if (w[c] < Scalar(0)) throw invalid_parameter("negative vertex weight at " + std::to_string(c));
      total = total + w[c];
    }
    if (!(total > Scalar(0))) {
      throw degenerate_branch("all children of vertex " + std::to_string(v.id) + " have zero weight");
    }
    for (VertexId c : kids) reach[c] = reach[v.id] * w[c] / total;
  }
  std::vector<Scalar> out;
  out.reserve(tree.leaves().size());
  for (VertexId leaf : tree.leaves()) out.push_back(reach[leaf]);
  return out;
}

inline LeafDistribution branch_leaf_distribution(const Tree& tree, const VertexWeightMap<double>& w) {
  return LeafDistribution{tree.leaves(), branch_leaf_probabilities<double>(tree, w)};
}

enum class BranchWeighting { unit, in_degree, cumulative_in_degree };

// Weighting plus sharpening as the growth engine applies it. Cumulative
// in-degree leaves are floored to 1 before sharpening.
inline VertexWeightMap<double> branching_weights(const Tree& tree, BranchWeighting weighting,
                                                 const SharpenSpec& spec) {
  VertexWeightMap<double> w;
  switch (weighting) {
    case BranchWeighting::unit:
      w = unit_weights<double>(tree);
      break;
    case BranchWeighting::in_degree:
      w = weighted_in_degree<double>(tree);
      break;
    case BranchWeighting::cumulative_in_degree:
      w = floor_leaves(tree, cumulative_in_degree<double>(tree));
      break;
  }
  return sharpen(std::move(w), spec);
}

}  // namespace leafgrow
