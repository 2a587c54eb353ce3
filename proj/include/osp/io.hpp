#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osp/analysis.hpp"
#include "osp/nsga2.hpp"
#include "osp/scenario.hpp"

namespace osp {

enum class ScenarioKind { kScratch, kAugment };

/// Everything a run needs, as read from the JSON config.
struct RunConfig {
  ScenarioConfig scenario;
  GaConfig ga;
  std::string output_dir = "out";
  ScenarioKind kind = ScenarioKind::kScratch;
  /// Deployed-sensor CSV for augmentation runs; relative paths resolve against the config file.
  std::string deployed_csv;
};

/// Parses and validates a run config. Errors name the offending field (InvalidConfig).
RunConfig parse_run_config(std::string_view json_text, const std::string& source = "config");
RunConfig load_run_config(const std::filesystem::path& path);

/// Canonical JSON of every setting that influences results (seed, threads and
/// output location excluded).
std::string canonical_config(const RunConfig& config);
/// 16 hex digits; deployed sites are folded in when present.
std::string config_hash(const RunConfig& config, std::span<const SensorRecord> deployed = {});

/// Shortest text that parses back to the same double ("inf", "-inf", "nan" for non-finite).
std::string format_double(double value);
/// 9 significant digits.
std::string format_double9(double value);
/// Throws InvalidInput when `text` is not entirely a number.
double parse_double(std::string_view text);

/// CSV with header `id,lat_deg,lon_deg,alt_m` and an optional `forced` column.
/// Lines starting with '#' are skipped. Throws InputError with the line number.
std::vector<SensorRecord> parse_sensors(std::istream& in, const std::string& source);
std::vector<SensorRecord> read_sensors(const std::filesystem::path& path);

/// `# key=value` lines found before the header.
std::map<std::string, std::string> read_metadata(std::istream& in);
std::map<std::string, std::string> read_metadata(const std::filesystem::path& path);

struct RunMetadata {
  std::string config_hash;
  std::uint64_t seed = 0;
};

void write_pareto_csv(std::ostream& out, std::span<const ParetoRow> rows, const RunMetadata& meta);
std::vector<ParetoRow> parse_pareto_csv(std::istream& in, const std::string& source);
std::vector<ParetoRow> read_pareto_csv(const std::filesystem::path& path);

void write_solution_csv(std::ostream& out, const ParetoRow& row, std::span<const SensorRecord> sensors,
                        const RunMetadata& meta);

void write_scores_json(std::ostream& out, const PlacementEvaluation& evaluation,
                       const GdopDistribution& distribution, const RunMetadata& meta);
void write_coverage_csv(std::ostream& out, const CoverageGrid& grid, const RunMetadata& meta);
void write_jam_report_csv(std::ostream& out, const JamReport& report, const RunMetadata& meta);

/// Column order of pareto.csv.
inline constexpr std::string_view kParetoHeader =
    "id,n_sensors,n_forced,of1,of2,of3,of1_norm,of2_norm,of3_norm,d1,d2,d3,d1_norm,d2_norm,d3_norm,penalty,"
    "fitness1,fitness2,fitness3";

}  // namespace osp
