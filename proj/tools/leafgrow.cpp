#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "leafgrow/io/cli.hpp"
#include "leafgrow/io/csv.hpp"
#include "leafgrow/io/dot.hpp"
#include "leafgrow/io/frames.hpp"
#include "leafgrow/io/json.hpp"
#include "leafgrow/io/manifest.hpp"
#include "leafgrow/leafgrow.hpp"

namespace fs = std::filesystem;
using namespace leafgrow;

namespace {

int execute(const io::CliOptions& opts) {
  const fs::path out_dir = opts.out_dir;
  io::ensure_directory(out_dir);

  io::RunManifest manifest;
  manifest.config = io::config_to_json(opts.config);
  const bool several = opts.policies.size() > 1;

  for (const auto& policy : opts.policies) {
    auto config = opts.config;
    config.policy = policy;
    const std::string suffix = several ? "_" + policy_label(policy) : "";
    const auto traj = run(config);

    if (opts.formats.contains(io::OutputFormat::json)) {
      manifest.emit(out_dir, "trajectory" + suffix + ".json", io::export_trajectory_json(traj));
    }
    if (opts.formats.contains(io::OutputFormat::dot)) {
      manifest.emit(out_dir, "tree" + suffix + ".dot", io::export_dot(traj.tree, attachment_weights(traj.tree)));
    }
    if (opts.formats.contains(io::OutputFormat::frames)) {
      const std::string sub = "frames" + suffix;
      const auto frames = io::export_frames(traj, out_dir / sub);
      for (const auto& f : frames.files) manifest.files.push_back({sub + "/" + f.path, f.sha256, f.bytes});
    }
    const auto report = highlighted_path(traj);
    std::printf("%s: %zu vertices, %zu leaves, highlighted path of %zu attachment(s) ending at leaf %u\n",
                policy_label(policy).c_str(), traj.tree.size(), traj.tree.leaves().size(),
                report.attachment_count, static_cast<unsigned>(report.terminal_leaf));
  }

  if (opts.formats.contains(io::OutputFormat::csv)) {
    const auto summary = ensemble(opts.config, opts.policies, opts.runs, opts.threads);
    manifest.emit(out_dir, "metrics.csv", io::export_metrics_csv(summary));
    for (const auto& p : summary.policies) {
      std::printf("%s over %zu runs: median highlighted attachments %g, median attachment length %g\n",
                  p.policy.c_str(), p.runs, p.median_attachment_count, p.median_attachment_length);
    }
  }

  manifest.write(out_dir);
  std::printf("wrote %zu files and manifest.json to %s\n", manifest.files.size(), out_dir.string().c_str());
  return io::exit_code::ok;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    const auto parsed = io::parse_cli(std::vector<std::string>(argv + 1, argv + argc));
    if (parsed.help) {
      std::fputs(parsed.help->c_str(), stdout);
      return io::exit_code::ok;
    }
    return execute(parsed.options);
  } catch (const io::usage_error& e) {
    std::fprintf(stderr, "leafgrow: %s\n", e.what());
    return e.code();
  } catch (const io::io_error& e) {
    std::fprintf(stderr, "leafgrow: I/O error: %s\n", e.what());
    return io::exit_code::io_failure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "leafgrow: %s\n", e.what());
    return io::exit_code::runtime_failure;
  }
}
