#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leafgrow/growth.hpp"
#include "leafgrow/io/json.hpp"

namespace leafgrow::io {

// Process exit codes. Usage problems are split by cause so scripts can tell
// a typo from a bad value from a forgotten flag.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int unknown_flag = 64;
inline constexpr int invalid_value = 65;
inline constexpr int missing_required = 66;
inline constexpr int runtime_failure = 70;
inline constexpr int io_failure = 74;
}  // namespace exit_code

class usage_error : public error {
 public:
  usage_error(int code, const std::string& what) : error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

enum class OutputFormat { json, dot, csv, frames };

struct CliOptions {
  GrowthConfig config;
  // One entry per --bayes value in bayes mode, a single branch policy in
  // branch mode. config.policy is the first of these.
  std::vector<Policy> policies;
  std::size_t runs = 1;
  unsigned threads = 0;
  std::string out_dir = ".";
  std::set<OutputFormat> formats{OutputFormat::json};
};

struct CliParse {
  CliOptions options;
  std::optional<std::string> help;  // set when --help was requested
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

inline double parse_number(const std::string& flag, const std::string& text) {
  try {
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(x)) throw std::invalid_argument(text);
    return x;
  } catch (const std::exception&) {
    throw usage_error(exit_code::invalid_value, flag + ": '" + text + "' is not a number");
  }
}

inline OscillatingQ parse_oscillation(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) {
    throw usage_error(exit_code::invalid_value, "--q-oscillate: expected min,max,period, got '" + text + "'");
  }
  OscillatingQ q{parse_number("--q-oscillate", parts[0]), parse_number("--q-oscillate", parts[1]),
                 parse_number("--q-oscillate", parts[2])};
  try {
    q.validate();
  } catch (const invalid_parameter& e) {
    throw usage_error(exit_code::invalid_value, std::string("--q-oscillate: ") + e.what());
  }
  return q;
}

}  // namespace detail

// Parses command-line arguments (without the program name). Throws
// usage_error carrying the exit code and a one-line diagnostic.
inline CliParse parse_cli(std::vector<std::string> args) {
  CliParse result;
  auto& opts = result.options;
  opts.config.poisson_mean = 2.0;

  std::string bayes = "0", mode = "bayes", weights = "unit", sharpen = "power", q_oscillate, formats = "json", out;
  double alpha = 1.0, q = 0.0;
  CLI::App app{"Grow time-ordered random trees by probabilistic leaf attachment", "leafgrow"};
  app.option_defaults()->always_capture_default();
  app.add_option("--intervals", opts.config.intervals, "Number of time intervals N (t = 0 .. N-1)")
      ->required()
      ->check(CLI::Range(1u, 100000000u));
  app.add_option("--poisson-mean", opts.config.poisson_mean, "Mean new vertices per interval t > 0")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--bayes", bayes, "Bayes case 0 (prior), 1 (global), 2 (local); comma list for comparisons");
  app.add_option("--mode", mode, "Leaf distribution family")->check(CLI::IsMember({"bayes", "branch"}));
  app.add_option("--branch-weights", weights, "Vertex weighting for branch mode")
      ->check(CLI::IsMember({"unit", "indeg", "cumindeg"}));
  app.add_option("--sharpen", sharpen, "Sharpening for branch mode")->check(CLI::IsMember({"power", "exp"}));
  app.add_option("--alpha", alpha, "Sharpening exponent")->check(CLI::NonNegativeNumber);
  auto* q_opt = app.add_option("--q", q, "Prior weight in the prior/posterior mixture")->check(CLI::Range(0.0, 1.0));
  auto* osc_opt = app.add_option("--q-oscillate", q_oscillate, "Oscillating mixture weight: min,max,period");
  q_opt->excludes(osc_opt);
  app.add_option("--seed", opts.config.seed, "Base RNG seed");
  app.add_option("--runs", opts.runs, "Independent runs for ensemble statistics")->check(CLI::Range(1ul, 100000000ul));
  app.add_option("--threads", opts.threads, "Worker threads for ensembles (0 = hardware)");
  app.add_option("--out", out, "Output directory (falls back to $LEAFGROW_OUT, then .)");
  app.add_option("--format", formats, "Comma list of outputs: json, dot, csv, frames");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    result.help = app.help();
    return result;
  } catch (const CLI::ExtrasError& e) {
    throw usage_error(exit_code::unknown_flag, e.what());
  } catch (const CLI::RequiredError& e) {
    throw usage_error(exit_code::missing_required, e.what());
  } catch (const CLI::ParseError& e) {
    throw usage_error(exit_code::invalid_value, e.what());
  }

  if (mode == "bayes") {
    for (const auto& item : detail::split(bayes, ',')) {
      if (item != "0" && item != "1" && item != "2") {
        throw usage_error(exit_code::invalid_value, "--bayes: invalid value '" + item + "' (valid: 0, 1, 2)");
      }
      opts.policies.emplace_back(static_cast<BayesCase>(item[0] - '0'));
    }
    if (opts.policies.empty()) {
      throw usage_error(exit_code::invalid_value, "--bayes: no value given (valid: 0, 1, 2)");
    }
  } else {
    opts.policies.emplace_back(BranchPolicy{parse_weighting(weights), SharpenSpec{parse_sharpen(sharpen), alpha}});
  }
  opts.config.policy = opts.policies.front();

  if (!q_oscillate.empty()) {
    opts.config.q = detail::parse_oscillation(q_oscillate);
  } else {
    opts.config.q = q;
  }

  opts.formats.clear();
  for (const auto& f : detail::split(formats, ',')) {
    if (f == "json") opts.formats.insert(OutputFormat::json);
    else if (f == "dot") opts.formats.insert(OutputFormat::dot);
    else if (f == "csv") opts.formats.insert(OutputFormat::csv);
    else if (f == "frames") opts.formats.insert(OutputFormat::frames);
    else throw usage_error(exit_code::invalid_value, "--format: invalid value '" + f + "' (valid: json, dot, csv, frames)");
  }

  if (!out.empty()) {
    opts.out_dir = out;
  } else if (const char* env = std::getenv("LEAFGROW_OUT"); env && *env) {
    opts.out_dir = env;
  }

  try {
    opts.config.validate();
  } catch (const invalid_parameter& e) {
    throw usage_error(exit_code::invalid_value, e.what());
  }
  return result;
}

}  // namespace leafgrow::io
