#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing in
// here calls the library routines it is used to check: the oracles enumerate
// explicit leaf-to-root paths and walk children lists directly.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <vector>

#include "leafgrow/growth.hpp"
#include "leafgrow/tree.hpp"

namespace leafgrow::oracle {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Worked-example tree: root r; d1, d2, d3 attach to r at t = 1; l1 -> d1,
// d4 -> d2, d5 -> d2, d6 -> d3 at t = 2; l2, l3 -> d4, l4 -> d5, l5 -> d6 at
// t = 3. Ids follow that creation order.
struct Fixture {
  static constexpr VertexId r = 0, d1 = 1, d2 = 2, d3 = 3, l1 = 4, d4 = 5, d5 = 6, d6 = 7, l2 = 8, l3 = 9,
                            l4 = 10, l5 = 11;
  Tree tree;

  Fixture() {
    tree.append_batch(1, {r, r, r});
    tree.append_batch(2, {d1, d2, d2, d3});
    tree.append_batch(3, {d4, d4, d5, d6});
  }

  static std::vector<VertexId> leaves() { return {l1, l2, l3, l4, l5}; }
};

// Trees for the corpus-wide checks: uniform-attachment growth with a Poisson
// mean of 2 and between 4 and 12 intervals depending on the seed.
inline Tree random_tree(std::uint64_t seed) {
  GrowthConfig c;
  c.intervals = static_cast<std::uint32_t>(4 + seed % 9);
  c.poisson_mean = 2.0;
  c.seed = seed;
  return run(c).tree;
}

// Every leaf's path as an explicit vertex list, found by chasing parents.
inline std::map<VertexId, std::vector<VertexId>> enumerate_leaf_paths(const Tree& tree) {
  std::map<VertexId, std::vector<VertexId>> paths;
  for (const auto& v : tree.vertices()) {
    bool has_child = false;
    for (const auto& w : tree.vertices()) has_child = has_child || (w.parent && *w.parent == v.id);
    if (has_child) continue;
    std::vector<VertexId> path{v.id};
    for (VertexId x = v.id; tree.vertex(x).parent;) {
      x = *tree.vertex(x).parent;
      path.push_back(x);
    }
    paths[v.id] = path;
  }
  return paths;
}

// Traversal count of every attachment (keyed by child) over all leaf paths.
inline std::map<VertexId, std::uint64_t> oracle_edge_counts(const Tree& tree) {
  std::map<VertexId, std::uint64_t> counts;
  for (const auto& [leaf, path] : enumerate_leaf_paths(tree)) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) ++counts[path[i]];
  }
  return counts;
}

inline std::map<VertexId, std::uint64_t> oracle_path_sums(const Tree& tree) {
  const auto counts = oracle_edge_counts(tree);
  std::map<VertexId, std::uint64_t> out;
  for (const auto& [leaf, path] : enumerate_leaf_paths(tree)) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) s += counts.at(path[i]);
    out[leaf] = s;
  }
  return out;
}

inline std::map<VertexId, BigInt> oracle_path_products(const Tree& tree) {
  const auto counts = oracle_edge_counts(tree);
  std::map<VertexId, BigInt> out;
  for (const auto& [leaf, path] : enumerate_leaf_paths(tree)) {
    BigInt p = 1;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) p *= counts.at(path[i]);
    out[leaf] = p;
  }
  return out;
}

inline std::vector<std::vector<VertexId>> children_lists(const Tree& tree) {
  std::vector<std::vector<VertexId>> kids(tree.size());
  for (const auto& v : tree.vertices()) {
    if (v.parent) kids[*v.parent].push_back(v.id);
  }
  return kids;
}

// Descendants and subtree leaf counts by recursive DFS.
inline std::uint64_t dfs_descendants(const std::vector<std::vector<VertexId>>& kids, VertexId v) {
  std::uint64_t n = 0;
  for (VertexId c : kids[v]) n += 1 + dfs_descendants(kids, c);
  return n;
}

inline std::uint64_t dfs_leaf_count(const std::vector<std::vector<VertexId>>& kids, VertexId v) {
  if (kids[v].empty()) return 1;
  std::uint64_t n = 0;
  for (VertexId c : kids[v]) n += dfs_leaf_count(kids, c);
  return n;
}

// Branching probabilities by recursive descent from the root in exact
// rationals, for any per-vertex weight function.
template <class WeightFn>
void oracle_branch(const std::vector<std::vector<VertexId>>& kids, VertexId v, const Rational& reach,
                   WeightFn weight, std::map<VertexId, Rational>& out) {
  if (kids[v].empty()) {
    out[v] = reach;
    return;
  }
  Rational total = 0;
  for (VertexId c : kids[v]) total += weight(c);
  for (VertexId c : kids[v]) oracle_branch(kids, c, reach * weight(c) / total, weight, out);
}

// Scales a rational vector to the smallest integer vector with the same ratios.
inline std::vector<BigInt> integer_ratio(const std::vector<Rational>& xs) {
  BigInt lcm_den = 1;
  for (const auto& x : xs) lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(x));
  std::vector<BigInt> ints;
  BigInt g = 0;
  for (const auto& x : xs) {
    const Rational scaled = x * lcm_den;
    ints.push_back(boost::multiprecision::numerator(scaled));
    g = boost::multiprecision::gcd(g, ints.back());
  }
  for (auto& v : ints) v /= g;
  return ints;
}

inline std::vector<BigInt> ints(std::initializer_list<int> xs) {
  std::vector<BigInt> out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

}  // namespace leafgrow::oracle
