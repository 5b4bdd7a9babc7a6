#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "leafgrow/growth.hpp"
#include "leafgrow/inference.hpp"
#include "leafgrow/tree.hpp"

namespace leafgrow {

struct PathReport {
  Path path;
  std::size_t attachment_count = 0;
  // created_at(child) - created_at(parent) for each attachment, leaf first.
  std::vector<TimeIndex> attachment_lengths;
  VertexId terminal_leaf = root_id;

  double mean_attachment_length() const {
    if (attachment_lengths.empty()) return 0.0;
    const double sum = std::accumulate(attachment_lengths.begin(), attachment_lengths.end(), 0.0);
    return sum / static_cast<double>(attachment_lengths.size());
  }
};

inline PathReport path_report(const Tree& tree, VertexId leaf) {
  PathReport r;
  r.path = tree.path_to_root(leaf);
  r.attachment_count = r.path.attachment_count();
  r.terminal_leaf = leaf;
  for (const auto& a : r.path.attachments()) {
    r.attachment_lengths.push_back(tree.vertex(a.child).created_at - tree.vertex(a.parent).created_at);
  }
  return r;
}

// Leaf path with the most attachments; the smallest leaf id wins ties.
inline PathReport longest_path(const Tree& tree) {
  const auto depth = depths(tree);
  VertexId best = tree.leaves().front();
  for (VertexId leaf : tree.leaves()) {
    if (depth[leaf] > depth[best]) best = leaf;
  }
  return path_report(tree, best);
}

// Path from the most probable leaf; the smallest leaf id wins ties.
inline PathReport max_posterior_path(const Tree& tree, const LeafDistribution& dist) {
  if (dist.leaves != tree.leaves()) throw invalid_parameter("distribution does not cover the leaf set");
  std::size_t best = 0;
  for (std::size_t i = 1; i < dist.size(); ++i) {
    if (dist.p[i] > dist.p[best]) best = i;
  }
  return path_report(tree, dist.leaves[best]);
}

// Longest path for the prior-only policy, the maximum-probability path for
// every other policy.
inline PathReport highlighted_path(const Trajectory& traj) {
  if (is_prior_only(traj.config.policy)) return longest_path(traj.tree);
  return max_posterior_path(traj.tree, traj.final_distribution);
}

// Linear interpolation between order statistics (the common "type 7" rule).
inline double quantile(std::vector<double> xs, double prob) {
  if (xs.empty()) throw invalid_parameter("quantile of an empty sample");
  std::sort(xs.begin(), xs.end());
  const double pos = prob * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

inline double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

inline double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw invalid_parameter("mean of an empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Per-run numbers fed into the ensemble aggregates.
struct RunStats {
  std::size_t highlighted_attachment_count = 0;
  double highlighted_mean_attachment_length = 0.0;
  std::size_t final_leaf_count = 0;
  std::size_t final_vertex_count = 0;
  std::vector<std::size_t> leaf_count_by_interval;  // index t = 0 .. N-1
};

inline RunStats run_stats(const Trajectory& traj) {
  const auto report = highlighted_path(traj);
  RunStats s;
  s.highlighted_attachment_count = report.attachment_count;
  s.highlighted_mean_attachment_length = report.mean_attachment_length();
  s.final_leaf_count = traj.tree.leaves().size();
  s.final_vertex_count = traj.tree.size();
  s.leaf_count_by_interval.push_back(1);
  for (const auto& f : traj.frames) s.leaf_count_by_interval.push_back(f.metrics.leaves_after);
  return s;
}

struct Statistic {
  std::string name;
  double value = 0.0;
};

struct PolicySummary {
  std::string policy;
  std::size_t runs = 0;
  double mean_attachment_count = 0.0;
  double median_attachment_count = 0.0;
  double mean_attachment_length = 0.0;
  double median_attachment_length = 0.0;
  double mean_final_vertices = 0.0;
  // Leaf count at each interval across runs: 10%, 50% and 90% quantiles.
  std::vector<double> leaf_count_q10, leaf_count_q50, leaf_count_q90;

  // Rows in the fixed order used by the CSV export.
  std::vector<Statistic> statistics() const {
    std::vector<Statistic> rows{
        {"runs", static_cast<double>(runs)},
        {"highlighted_attachment_count_mean", mean_attachment_count},
        {"highlighted_attachment_count_median", median_attachment_count},
        {"highlighted_attachment_length_mean", mean_attachment_length},
        {"highlighted_attachment_length_median", median_attachment_length},
        {"final_vertex_count_mean", mean_final_vertices},
    };
    for (std::size_t t = 0; t < leaf_count_q50.size(); ++t) {
      const auto suffix = "_t" + std::to_string(t);
      rows.push_back({"leaf_count_q10" + suffix, leaf_count_q10[t]});
      rows.push_back({"leaf_count_q50" + suffix, leaf_count_q50[t]});
      rows.push_back({"leaf_count_q90" + suffix, leaf_count_q90[t]});
    }
    return rows;
  }
};

struct EnsembleSummary {
  std::uint32_t intervals = 0;
  double poisson_mean = 0.0;
  std::uint64_t seed = 0;
  std::size_t runs = 0;
  std::vector<PolicySummary> policies;
};

inline PolicySummary summarize(const std::string& label, const std::vector<RunStats>& stats) {
  PolicySummary s;
  s.policy = label;
  s.runs = stats.size();
  std::vector<double> counts, lengths, vertices;
  for (const auto& r : stats) {
    counts.push_back(static_cast<double>(r.highlighted_attachment_count));
    lengths.push_back(r.highlighted_mean_attachment_length);
    vertices.push_back(static_cast<double>(r.final_vertex_count));
  }
  s.mean_attachment_count = mean(counts);
  s.median_attachment_count = median(counts);
  s.mean_attachment_length = mean(lengths);
  s.median_attachment_length = median(lengths);
  s.mean_final_vertices = mean(vertices);

  const std::size_t intervals = stats.front().leaf_count_by_interval.size();
  for (std::size_t t = 0; t < intervals; ++t) {
    std::vector<double> at_t;
    for (const auto& r : stats) at_t.push_back(static_cast<double>(r.leaf_count_by_interval[t]));
    s.leaf_count_q10.push_back(quantile(at_t, 0.1));
    s.leaf_count_q50.push_back(quantile(at_t, 0.5));
    s.leaf_count_q90.push_back(quantile(at_t, 0.9));
  }
  return s;
}

// Runs `runs` independent trajectories (run indices 0 .. runs-1) on a worker
// pool. Each result lands in its own slot, so the output does not depend on
// scheduling.
inline std::vector<RunStats> run_ensemble(const GrowthConfig& config, std::size_t runs,
                                          unsigned threads = 0) {
  if (runs < 1) throw invalid_parameter("ensemble needs at least one run");
  config.validate();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, runs));

  std::vector<RunStats> results(runs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < runs;) {
      try {
        results[i] = run_stats(run(config, i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

inline EnsembleSummary ensemble(const GrowthConfig& config, std::span<const Policy> policies,
                                std::size_t runs, unsigned threads = 0) {
  EnsembleSummary out;
  out.intervals = config.intervals;
  out.poisson_mean = config.poisson_mean;
  out.seed = config.seed;
  out.runs = runs;
  for (const auto& policy : policies) {
    auto c = config;
    c.policy = policy;
    out.policies.push_back(summarize(policy_label(policy), run_ensemble(c, runs, threads)));
  }
  return out;
}

inline EnsembleSummary ensemble(const GrowthConfig& config, std::size_t runs, unsigned threads = 0) {
  const Policy single[] = {config.policy};
  return ensemble(config, single, runs, threads);
}

}  // namespace leafgrow
