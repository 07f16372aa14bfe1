#pragma once

// Command surface behind the `fracio` executable: model files, reports,
// CSV/SVG export, verification and sweeps. Kept in the library so tests and
// the Python module drive exactly what the binary does.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracio/iomodel.hpp"
#include "fracio/memsolver.hpp"

namespace fracio::cli {

using json = nlohmann::json;

enum ExitCode : int { kOk = 0, kUsage = 1, kInvalid = 2, kSolver = 3, kVerifyFailed = 4 };

struct RunConfig {
  std::string command;
  std::string model_path;
  double t_max = 2.0;
  /// Number of time intervals; the grid has steps + 1 points.
  int steps = 200;
  std::optional<RealVector> alpha_override;
  /// sweep only
  std::vector<RealVector> alpha_list;
  std::string output_dir = ".";
  std::vector<std::string> formats{"csv", "json", "svg"};
  bool closed = false;
  /// verify: residuals are reported for t >= t_min
  double t_min = 0.1;
  /// verify: perturb one modal amplitude by +10% (negative control)
  bool corrupt = false;
};

struct LoadedModel {
  IOModel model;
  std::vector<Finding> findings;
};

/// Parses the model schema: JSON with whole-line // comments. Throws
/// ParseError naming the field (and line when known).
[[nodiscard]] IOModel parse_model(const std::string& text);

/// Reads, parses and validates. Fatal findings raise ValidationError.
[[nodiscard]] LoadedModel load_model(const std::string& path);

/// "0.5" -> {0.5}; "0.1,0.9" -> {0.1, 0.9}. Throws ParseError.
[[nodiscard]] RealVector parse_alpha(const std::string& text);

/// Rounds to 10 significant digits (the report precision).
[[nodiscard]] double round_sig10(double v);

/// Canonical report text: sorted keys, 10 significant digits, 2-space
/// indent, trailing newline. Non-finite numbers become null.
[[nodiscard]] std::string dump_report(const json& report);

[[nodiscard]] std::string trajectory_csv(const Trajectory& tr);

/// 800x500 line chart, one polyline per sector.
[[nodiscard]] std::string trajectory_svg(const Trajectory& tr, const std::string& title);

/// Analysis report for a model (already validated).
[[nodiscard]] json analysis_report(const IOModel& model, const std::vector<Finding>& findings);

/// Runs one command. Human-readable output goes to `out`, diagnostics to
/// `err`. Returns an ExitCode value.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with the documented flags and calls run().
int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracio::cli
