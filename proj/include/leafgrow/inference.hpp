#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "leafgrow/error.hpp"
#include "leafgrow/tree.hpp"

namespace leafgrow {

// Normalized probability vector over a leaf set. leaves is sorted by id and
// p[i] is the probability of leaves[i].
struct LeafDistribution {
  std::vector<VertexId> leaves;
  std::vector<double> p;

  std::size_t size() const { return leaves.size(); }

  double probability_of(VertexId leaf) const {
    const auto it = std::lower_bound(leaves.begin(), leaves.end(), leaf);
    if (it == leaves.end() || *it != leaf) return 0.0;
    return p[static_cast<std::size_t>(it - leaves.begin())];
  }

  double total() const { return std::accumulate(p.begin(), p.end(), 0.0); }

  static LeafDistribution uniform(std::vector<VertexId> leaves) {
    LeafDistribution d;
    d.p.assign(leaves.size(), 1.0 / static_cast<double>(leaves.size()));
    d.leaves = std::move(leaves);
    return d;
  }

  static LeafDistribution point_mass(std::vector<VertexId> leaves, VertexId leaf) {
    LeafDistribution d;
    d.p.assign(leaves.size(), 0.0);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (leaves[i] == leaf) d.p[i] = 1.0;
    }
    d.leaves = std::move(leaves);
    return d;
  }

  friend bool operator==(const LeafDistribution&, const LeafDistribution&) = default;
};

enum class Representation { linear, log };

// Unnormalized likelihood Pr(H | leaf) per leaf. In log representation the
// linear values are exp(values) up to a common scale.
struct LikelihoodVector {
  std::vector<VertexId> leaves;
  std::vector<double> values;
  Representation representation = Representation::linear;

  double linear(std::size_t i) const {
    return representation == Representation::log ? std::exp(values[i]) : values[i];
  }
};

// Pr(H) = sum over leaves of Pr(H|l) Pr(l), kept as a log so that deep-tree
// products do not overflow.
struct Evidence {
  double log_value = 0.0;
  double value() const { return std::exp(log_value); }
};

// Per-leaf sum of attachment weights along each leaf's path to the root,
// evaluated in any arithmetic type that can hold the weights.
template <class T>
std::vector<T> path_weight_sums(const Tree& tree, const EdgeWeightMap& weights) {
  std::vector<T> acc(tree.size(), T(0));
  for (const auto& v : tree.vertices()) {
    if (v.parent) acc[v.id] = acc[*v.parent] + T(weights.at(v.id));
  }
  std::vector<T> out;
  out.reserve(tree.leaves().size());
  for (VertexId leaf : tree.leaves()) out.push_back(acc[leaf]);
  return out;
}

// Per-leaf product of attachment weights along each leaf's path. Only safe
// for wide or arbitrary-precision T; the log-space route below is what the
// growth engine uses.
template <class T>
std::vector<T> path_weight_products(const Tree& tree, const EdgeWeightMap& weights) {
  std::vector<T> acc(tree.size(), T(1));
  for (const auto& v : tree.vertices()) {
    if (v.parent) acc[v.id] = acc[*v.parent] * T(weights.at(v.id));
  }
  std::vector<T> out;
  out.reserve(tree.leaves().size());
  for (VertexId leaf : tree.leaves()) out.push_back(acc[leaf]);
  return out;
}

// Global likelihood: the weighted path length of each leaf's path. The
// root-only tree yields (root, 0), and callers fall back to the prior.
inline LikelihoodVector global_likelihood(const Tree& tree, const EdgeWeightMap& weights) {
  return {tree.leaves(), path_weight_sums<double>(tree, weights), Representation::linear};
}

// Local likelihood: the product of attachment weights along each path, kept
// as a sum of logs. The empty product on a root-only tree is 1 (log 0).
inline LikelihoodVector local_likelihood(const Tree& tree, const EdgeWeightMap& weights) {
  std::vector<double> log_acc(tree.size(), 0.0);
  for (const auto& v : tree.vertices()) {
    if (v.parent) {
      log_acc[v.id] = log_acc[*v.parent] + std::log(static_cast<double>(weights.at(v.id)));
    }
  }
  LikelihoodVector out{tree.leaves(), {}, Representation::log};
  out.values.reserve(out.leaves.size());
  for (VertexId leaf : out.leaves) out.values.push_back(log_acc[leaf]);
  return out;
}

namespace detail {

inline void require_same_support(const std::vector<VertexId>& a, const std::vector<VertexId>& b,
                                 const char* what) {
  if (a != b) throw invalid_parameter(std::string(what) + ": leaf sets differ");
}

// Unnormalized posterior terms scaled by exp(-shift), with shift chosen so the
// largest log term is 0.
inline std::vector<double> scaled_terms(const LeafDistribution& prior, const LikelihoodVector& lhood,
                                        double& shift) {
  const std::size_t n = prior.size();
  std::vector<double> terms(n, 0.0);
  if (lhood.representation == Representation::linear) {
    shift = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(lhood.values[i] >= 0.0) || !std::isfinite(lhood.values[i])) {
        throw invalid_parameter("likelihood values must be finite and non-negative");
      }
      terms[i] = lhood.values[i] * prior.p[i];
    }
    return terms;
  }

  // Center the likelihoods before adding log priors; at magnitudes near
  // 700 the sum would otherwise lose about 1e-13 of relative precision.
  double center = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (prior.p[i] > 0.0) center = std::max(center, lhood.values[i]);
  }
  shift = 0.0;
  if (!std::isfinite(center)) return terms;
  std::vector<double> logs(n, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    if (prior.p[i] > 0.0) logs[i] = (lhood.values[i] - center) + std::log(prior.p[i]);
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  shift = center + top;
  for (std::size_t i = 0; i < n; ++i) terms[i] = std::exp(logs[i] - top);
  return terms;
}

}  // namespace detail

inline Evidence evidence(const LeafDistribution& prior, const LikelihoodVector& lhood) {
  detail::require_same_support(prior.leaves, lhood.leaves, "evidence");
  double shift = 0.0;
  const auto terms = detail::scaled_terms(prior, lhood, shift);
  const double mass = std::accumulate(terms.begin(), terms.end(), 0.0);
  return Evidence{std::log(mass) + shift};
}

// Bayes' rule: Pr(l|H) = Pr(H|l) Pr(l) / Pr(H). Log-represented likelihoods
// are normalized after subtracting the largest log term.
inline LeafDistribution posterior(const LeafDistribution& prior, const LikelihoodVector& lhood) {
  detail::require_same_support(prior.leaves, lhood.leaves, "posterior");
  double shift = 0.0;
  auto terms = detail::scaled_terms(prior, lhood, shift);
  const double mass = std::accumulate(terms.begin(), terms.end(), 0.0);
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw degenerate_evidence("likelihood mass is zero over every leaf");
  }
  for (auto& x : terms) x /= mass;
  return LeafDistribution{prior.leaves, std::move(terms)};
}

// q * prior + (1 - q) * posterior.
inline LeafDistribution mixture(const LeafDistribution& prior, const LeafDistribution& post, double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw invalid_parameter("mixture weight q must lie in [0, 1], got " + std::to_string(q));
  }
  detail::require_same_support(prior.leaves, post.leaves, "mixture");
  if (q == 0.0) return post;
  if (q == 1.0) return prior;
  LeafDistribution out{prior.leaves, std::vector<double>(prior.size())};
  for (std::size_t i = 0; i < prior.size(); ++i) {
    out.p[i] = q * prior.p[i] + (1.0 - q) * post.p[i];
  }
  return out;
}

struct OscillatingQ {
  double q_min = 0.0;
  double q_max = 0.0;
  double period = 1.0;

  void validate() const {
    if (!(q_min >= 0.0 && q_min <= q_max && q_max <= 1.0)) {
      throw invalid_parameter("oscillating q requires 0 <= q_min <= q_max <= 1");
    }
    if (!(period >= 1.0) || !std::isfinite(period)) {
      throw invalid_parameter("oscillating q requires period >= 1");
    }
  }

  friend bool operator==(const OscillatingQ&, const OscillatingQ&) = default;
};

// Smoothly oscillating mixture weight, starting at q_max for t = 0.
inline double oscillating_q(TimeIndex t, const OscillatingQ& params) {
  params.validate();
  if (params.q_min == params.q_max) return params.q_min;
  const double phase = 2.0 * std::numbers::pi * static_cast<double>(t) / params.period;
  const double q = params.q_min + (params.q_max - params.q_min) * (1.0 + std::cos(phase)) / 2.0;
  return std::clamp(q, params.q_min, params.q_max);
}

}  // namespace leafgrow
