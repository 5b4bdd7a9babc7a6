#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "leafgrow/error.hpp"
#include "leafgrow/inference.hpp"

namespace leafgrow {

using Engine = std::mt19937_64;

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Seed for the sub-stream named by (seed, purpose, run index). Streams with
// different labels or run indices are statistically independent, which keeps
// batch-size draws identical no matter which policy consumes the targets
// stream.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose, std::uint64_t run_index) {
  std::uint64_t h = detail::splitmix64(seed);
  h = detail::splitmix64(h ^ detail::fnv1a(purpose));
  return detail::splitmix64(h ^ run_index);
}

inline Engine make_stream(std::uint64_t seed, std::string_view purpose, std::uint64_t run_index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(derive_seed(seed, purpose, run_index)),
                    static_cast<std::uint32_t>(derive_seed(seed, purpose, run_index) >> 32)};
  return Engine(seq);
}

// Uniform double in [0, 1) from the top 53 bits of one engine output.
inline double canonical(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t draw_batch_size(Engine& rng, double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw invalid_parameter("Poisson mean must be finite and >= 0");
  if (mu == 0.0) return 0;
  std::poisson_distribution<std::uint64_t> poisson(mu);
  return poisson(rng);
}

// n independent draws with replacement by inverse CDF. The distribution is not
// updated between draws.
inline std::vector<VertexId> sample_targets(Engine& rng, const LeafDistribution& dist, std::size_t n) {
  std::vector<VertexId> out;
  if (n == 0) return out;
  if (dist.size() == 0) throw invalid_parameter("cannot sample from an empty leaf distribution");

  std::vector<double> cdf(dist.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (!(dist.p[i] >= 0.0)) throw invalid_parameter("negative leaf probability");
    acc += dist.p[i];
    cdf[i] = acc;
  }
  if (!(acc > 0.0)) throw invalid_parameter("leaf distribution has no mass");

  // Last index with positive mass; rounding can leave u * acc above cdf.back().
  std::size_t last = dist.size() - 1;
  while (last > 0 && dist.p[last] == 0.0) --last;

  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = canonical(rng) * acc;
    auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    out.push_back(dist.leaves[std::min(idx, last)]);
  }
  return out;
}

}  // namespace leafgrow
