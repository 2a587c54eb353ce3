#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include <Eigen/Core>

namespace osp {

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitUsage = 2, kExitInfeasible = 3 };

struct CommandOptions {
  std::filesystem::path config;
  /// Deployed sensors (augment) or sensors to score (evaluate).
  std::optional<std::filesystem::path> sensors;
  /// Output directory; overrides the config. For `report`, the directory holding the front.
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  /// Emit one JSON progress line per generation on the error stream.
  bool progress = true;
  std::optional<std::size_t> budget;
  std::optional<Eigen::Vector3d> weights;
};

/// Each command returns an ExitCode; results go to files, summaries to `out`,
/// progress and diagnostics to `err`.
int cmd_optimize(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_augment(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_evaluate(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_report(const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace osp
