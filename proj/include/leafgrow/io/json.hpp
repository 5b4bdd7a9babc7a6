#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>
#include "leafgrow/growth.hpp"

namespace leafgrow::io {

using nlohmann::json;

inline constexpr int trajectory_format_version = 1;

// Prints a double with 17 significant digits, the fixed precision every
// export uses so byte comparisons are meaningful.
inline std::string format_double(double x) {
  if (!std::isfinite(x)) throw invalid_parameter("cannot serialize a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline void write_canonical(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      // nlohmann's default object type is a std::map, so keys come out sorted.
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += json(key).dump();
        out += ':';
        write_canonical(value, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write_canonical(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

}  // namespace detail

// Compact JSON with sorted keys and %.17g floats.
inline std::string canonical_dump(const json& j) {
  std::string out;
  detail::write_canonical(j, out);
  return out;
}

inline json policy_to_json(const Policy& policy) {
  if (const auto* b = std::get_if<BayesCase>(&policy)) {
    return {{"kind", "bayes"}, {"case", static_cast<int>(*b)}};
  }
  const auto& br = std::get<BranchPolicy>(policy);
  return {{"kind", "branch"},
          {"weighting", to_string(br.weighting)},
          {"sharpen", to_string(br.sharpen.kind)},
          {"alpha", br.sharpen.alpha}};
}

inline BranchWeighting parse_weighting(const std::string& s) {
  if (s == "unit") return BranchWeighting::unit;
  if (s == "indeg") return BranchWeighting::in_degree;
  if (s == "cumindeg") return BranchWeighting::cumulative_in_degree;
  throw invalid_parameter("unknown branch weighting '" + s + "' (valid: unit, indeg, cumindeg)");
}

inline SharpenSpec::Kind parse_sharpen(const std::string& s) {
  if (s == "power") return SharpenSpec::Kind::power;
  if (s == "exp") return SharpenSpec::Kind::exponential;
  throw invalid_parameter("unknown sharpening '" + s + "' (valid: power, exp)");
}

inline Policy policy_from_json(const json& j) {
  if (j.at("kind") == "bayes") {
    const int c = j.at("case").get<int>();
    if (c < 0 || c > 2) throw invalid_parameter("Bayes case must be 0, 1 or 2");
    return static_cast<BayesCase>(c);
  }
  return BranchPolicy{parse_weighting(j.at("weighting").get<std::string>()),
                      SharpenSpec{parse_sharpen(j.at("sharpen").get<std::string>()),
                                  j.at("alpha").get<double>()}};
}

inline json config_to_json(const GrowthConfig& c) {
  json q;
  if (const auto* constant = std::get_if<double>(&c.q)) {
    q = *constant;
  } else {
    const auto& osc = std::get<OscillatingQ>(c.q);
    q = {{"q_min", osc.q_min}, {"q_max", osc.q_max}, {"period", osc.period}};
  }
  return {{"intervals", c.intervals},
          {"poisson_mean", c.poisson_mean},
          {"time_dependent_rate", static_cast<bool>(c.rate)},
          {"policy", policy_to_json(c.policy)},
          {"q", q},
          {"seed", c.seed},
          {"prior", "uniform"}};
}

inline GrowthConfig config_from_json(const json& j) {
  GrowthConfig c;
  c.intervals = j.at("intervals").get<std::uint32_t>();
  c.poisson_mean = j.at("poisson_mean").get<double>();
  c.policy = policy_from_json(j.at("policy"));
  const auto& q = j.at("q");
  if (q.is_object()) {
    c.q = OscillatingQ{q.at("q_min").get<double>(), q.at("q_max").get<double>(), q.at("period").get<double>()};
  } else {
    c.q = q.get<double>();
  }
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

inline json distribution_to_json(const LeafDistribution& d) {
  return {{"leaves", d.leaves}, {"p", d.p}};
}

inline LeafDistribution distribution_from_json(const json& j) {
  return {j.at("leaves").get<std::vector<VertexId>>(), j.at("p").get<std::vector<double>>()};
}

// Vertices as [id, created_at, parent] triples, parent -1 for the root.
inline json tree_to_json(const Tree& tree) {
  json vertices = json::array();
  for (const auto& v : tree.vertices()) {
    vertices.push_back({v.id, v.created_at, v.parent ? static_cast<std::int64_t>(*v.parent) : -1});
  }
  return {{"vertices", vertices}, {"leaves", tree.leaves()}};
}

inline json trajectory_to_json(const Trajectory& traj) {
  json frames = json::array();
  for (const auto& f : traj.frames) {
    json attachments = json::array();
    for (const auto& a : f.attachments) attachments.push_back({a.child, a.parent});
    frames.push_back({{"t", f.t},
                      {"q", f.q},
                      {"new_vertices", f.new_vertices},
                      {"attachments", attachments},
                      {"distribution", distribution_to_json(f.distribution)},
                      {"metrics",
                       {{"leaves_before", f.metrics.leaves_before},
                        {"leaves_after", f.metrics.leaves_after},
                        {"vertices_after", f.metrics.vertices_after},
                        {"max_probability", f.metrics.max_probability}}}});
  }
  return {{"format", "leafgrow-trajectory"},
          {"version", trajectory_format_version},
          {"config", config_to_json(traj.config)},
          {"run_index", traj.run_index},
          {"frames", frames},
          {"final_distribution", distribution_to_json(traj.final_distribution)},
          {"tree", tree_to_json(traj.tree)}};
}

inline std::string export_trajectory_json(const Trajectory& traj) {
  return canonical_dump(trajectory_to_json(traj)) + "\n";
}

// Rebuilds a Trajectory by replaying the recorded attachments, then checks the
// replayed tree against the stored vertex table.
inline Trajectory trajectory_from_json(const json& j) {
  if (j.at("format") != "leafgrow-trajectory") throw invalid_parameter("not a leafgrow trajectory");
  if (j.at("version").get<int>() != trajectory_format_version) {
    throw invalid_parameter("unsupported trajectory version");
  }
  Trajectory traj;
  traj.config = config_from_json(j.at("config"));
  traj.run_index = j.at("run_index").get<std::uint64_t>();
  for (const auto& jf : j.at("frames")) {
    FrameRecord f;
    f.t = jf.at("t").get<TimeIndex>();
    f.q = jf.at("q").get<double>();
    f.new_vertices = jf.at("new_vertices").get<std::vector<VertexId>>();
    for (const auto& a : jf.at("attachments")) {
      f.attachments.push_back({a.at(0).get<VertexId>(), a.at(1).get<VertexId>()});
    }
    f.distribution = distribution_from_json(jf.at("distribution"));
    const auto& m = jf.at("metrics");
    f.metrics = {m.at("leaves_before").get<std::size_t>(), m.at("leaves_after").get<std::size_t>(),
                 m.at("vertices_after").get<std::size_t>(), m.at("max_probability").get<double>()};
    traj.frames.push_back(std::move(f));
  }
  traj.final_distribution = distribution_from_json(j.at("final_distribution"));

  const auto batches = traj.batches();
  traj.tree = replay(batches);

  const auto& stored = j.at("tree").at("vertices");
  if (stored.size() != traj.tree.size()) {
    throw invalid_parameter("replayed tree size does not match the stored vertex table");
  }
  for (const auto& row : stored) {
    const auto id = row.at(0).get<VertexId>();
    const auto& v = traj.tree.vertex(id);
    const auto parent = row.at(2).get<std::int64_t>();
    const std::int64_t replayed = v.parent ? static_cast<std::int64_t>(*v.parent) : -1;
    if (row.at(1).get<TimeIndex>() != v.created_at || parent != replayed) {
      throw invalid_parameter("replayed vertex " + std::to_string(id) + " differs from the stored table");
    }
  }
  return traj;
}

inline Trajectory import_trajectory_json(const std::string& text) {
  return trajectory_from_json(json::parse(text));
}

}  // namespace leafgrow::io
