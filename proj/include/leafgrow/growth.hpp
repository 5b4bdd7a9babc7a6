#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "leafgrow/branching.hpp"
#include "leafgrow/error.hpp"
#include "leafgrow/inference.hpp"
#include "leafgrow/rng.hpp"
#include "leafgrow/tree.hpp"

namespace leafgrow {

// Leaf distributions built from the path history. The numeric values match
// the command-line --bayes flag.
enum class BayesCase : int {
  prior = 0,   // uniform prior only
  global = 1,  // posterior with the weighted-path-length likelihood
  local = 2,   // posterior with the product-of-attachment-weights likelihood
};

struct BranchPolicy {
  BranchWeighting weighting = BranchWeighting::unit;
  SharpenSpec sharpen{};

  friend bool operator==(const BranchPolicy&, const BranchPolicy&) = default;
};

using Policy = std::variant<BayesCase, BranchPolicy>;

// Either a constant q or a q(t) schedule for the prior/posterior mixture.
using MixtureWeight = std::variant<double, OscillatingQ>;

enum class PriorKind { uniform };

struct GrowthConfig {
  std::uint32_t intervals = 1;  // N: intervals t = 0 .. N-1
  double poisson_mean = 0.0;    // mu for every t > 0 unless rate is set
  std::function<double(TimeIndex)> rate;  // optional time-dependent mu(t)
  Policy policy = BayesCase::prior;
  MixtureWeight q = 0.0;
  std::uint64_t seed = 0;
  PriorKind prior = PriorKind::uniform;

  void validate() const {
    if (intervals < 1) throw invalid_parameter("intervals must be >= 1");
    if (!(poisson_mean >= 0.0) || !std::isfinite(poisson_mean)) {
      throw invalid_parameter("Poisson mean must be finite and >= 0");
    }
    if (const auto* c = std::get_if<double>(&q)) {
      if (!(*c >= 0.0 && *c <= 1.0)) throw invalid_parameter("q must lie in [0, 1]");
    } else {
      std::get<OscillatingQ>(q).validate();
    }
    if (const auto* b = std::get_if<BranchPolicy>(&policy)) {
      if (!std::isfinite(b->sharpen.alpha) || b->sharpen.alpha < 0.0) {
        throw invalid_parameter("alpha must be finite and >= 0");
      }
    } else {
      const int c = static_cast<int>(std::get<BayesCase>(policy));
      if (c < 0 || c > 2) throw invalid_parameter("Bayes case must be 0, 1 or 2");
    }
  }

  double mu_at(TimeIndex t) const { return rate ? rate(t) : poisson_mean; }

  double q_at(TimeIndex t) const {
    if (const auto* c = std::get_if<double>(&q)) return *c;
    return oscillating_q(t, std::get<OscillatingQ>(q));
  }
};

inline std::string to_string(BranchWeighting w) {
  switch (w) {
    case BranchWeighting::unit: return "unit";
    case BranchWeighting::in_degree: return "indeg";
    case BranchWeighting::cumulative_in_degree: return "cumindeg";
  }
  return "unknown";
}

inline std::string to_string(SharpenSpec::Kind k) {
  return k == SharpenSpec::Kind::power ? "power" : "exp";
}

// Short stable label, e.g. "bayes2" or "branch-indeg-power-2".
inline std::string policy_label(const Policy& policy) {
  if (const auto* b = std::get_if<BayesCase>(&policy)) {
    return "bayes" + std::to_string(static_cast<int>(*b));
  }
  const auto& br = std::get<BranchPolicy>(policy);
  char alpha[32];
  std::snprintf(alpha, sizeof alpha, "%g", br.sharpen.alpha);
  return "branch-" + to_string(br.weighting) + "-" + to_string(br.sharpen.kind) + "-" + alpha;
}

inline bool is_prior_only(const Policy& policy) {
  const auto* b = std::get_if<BayesCase>(&policy);
  return b && *b == BayesCase::prior;
}

// Leaf distribution the configured policy samples from on this snapshot at
// interval t.
inline LeafDistribution policy_distribution(const Tree& tree, const GrowthConfig& config, TimeIndex t) {
  auto prior = LeafDistribution::uniform(tree.leaves());

  if (const auto* branch = std::get_if<BranchPolicy>(&config.policy)) {
    return branch_leaf_distribution(tree, branching_weights(tree, branch->weighting, branch->sharpen));
  }

  const auto bayes = std::get<BayesCase>(config.policy);
  // A root-only snapshot carries no history; the first batch samples the prior.
  if (bayes == BayesCase::prior || tree.size() == 1) return prior;

  const auto weights = attachment_weights(tree);
  const auto lhood = bayes == BayesCase::global ? global_likelihood(tree, weights)
                                                : local_likelihood(tree, weights);
  return mixture(prior, posterior(prior, lhood), config.q_at(t));
}

struct FrameMetrics {
  std::size_t leaves_before = 0;
  std::size_t leaves_after = 0;
  std::size_t vertices_after = 0;
  double max_probability = 0.0;
};

// One growth interval: the distribution sampled on the pre-batch snapshot and
// the attachments it produced.
struct FrameRecord {
  TimeIndex t = 0;
  double q = 0.0;
  std::vector<VertexId> new_vertices;
  std::vector<Attachment> attachments;
  LeafDistribution distribution;
  FrameMetrics metrics;
};

struct Trajectory {
  GrowthConfig config;
  std::uint64_t run_index = 0;
  std::vector<FrameRecord> frames;
  Tree tree;
  // Distribution on the final snapshot, evaluated at t = N without growing.
  LeafDistribution final_distribution;

  std::vector<std::uint64_t> batch_sizes() const {
    std::vector<std::uint64_t> out;
    out.reserve(frames.size());
    for (const auto& f : frames) out.push_back(f.new_vertices.size());
    return out;
  }

  std::vector<Batch> batches() const {
    std::vector<Batch> out;
    out.reserve(frames.size());
    for (const auto& f : frames) {
      Batch b{f.t, {}};
      for (const auto& a : f.attachments) b.targets.push_back(a.parent);
      out.push_back(std::move(b));
    }
    return out;
  }
};

// Grows a tree for t = 1 .. N-1. Batch sizes and target draws come from
// separate sub-streams keyed by (seed, purpose, run_index), so the batch-size
// sequence does not depend on the policy.
inline Trajectory run(const GrowthConfig& config, std::uint64_t run_index = 0) {
  config.validate();
  Trajectory traj;
  traj.config = config;
  traj.run_index = run_index;

  auto batch_rng = make_stream(config.seed, "batch", run_index);
  auto target_rng = make_stream(config.seed, "targets", run_index);

  Tree& tree = traj.tree;
  for (TimeIndex t = 1; t < config.intervals; ++t) {
    const auto n = draw_batch_size(batch_rng, config.mu_at(t));

    FrameRecord frame;
    frame.t = t;
    frame.q = config.q_at(t);
    frame.distribution = policy_distribution(tree, config, t);
    frame.metrics.leaves_before = tree.leaves().size();
    if (!frame.distribution.p.empty()) {
      frame.metrics.max_probability =
          *std::max_element(frame.distribution.p.begin(), frame.distribution.p.end());
    }

    const auto targets = sample_targets(target_rng, frame.distribution, n);
    frame.new_vertices = tree.append_batch(t, targets);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      frame.attachments.push_back({frame.new_vertices[i], targets[i]});
    }
    frame.metrics.leaves_after = tree.leaves().size();
    frame.metrics.vertices_after = tree.size();
    traj.frames.push_back(std::move(frame));
  }
  traj.final_distribution = policy_distribution(tree, config, config.intervals);
  return traj;
}

}  // namespace leafgrow
