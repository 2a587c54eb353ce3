#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "osp/geo.hpp"
#include "osp/nsga2.hpp"
#include "osp/objectives.hpp"

namespace osp {

struct AreaBounds {
  double lat_low = 47.4;
  double lat_up = 51.4;
  double lon_low = 5.71;
  double lon_up = 9.71;
  std::vector<double> altitude_levels_m{3000.0, 6000.0, 10000.0};

  bool contains(const GeodeticPosition& p) const {
    return p.latitude_deg >= lat_low && p.latitude_deg <= lat_up && p.longitude_deg >= lon_low &&
           p.longitude_deg <= lon_up;
  }
  /// Great-circle length of the SW-NE diagonal, km.
  double diagonal_km() const;
};

/// Throws InvalidConfig.
void validate(const AreaBounds& bounds);

enum class SitePattern { kLattice, kSeededUniform };

struct CandidateSpec {
  std::size_t count = 400;
  SitePattern pattern = SitePattern::kLattice;
  std::uint64_t seed = 7;
  double antenna_height_m = 0.0;
};

struct JammerSpec {
  std::size_t count = 75;
  std::vector<double> heights_m{3000.0, 6000.0, 10000.0};
  SitePattern pattern = SitePattern::kLattice;
  std::uint64_t seed = 11;
  /// Power, gain and affect-rule settings shared by every generated jammer.
  JammerModel prototype;
};

struct ScenarioConfig {
  AreaBounds area;
  std::size_t grid_lat_count = 20;
  std::size_t grid_lon_count = 20;
  CandidateSpec candidates;
  JammerSpec jammers;
  PropagationParams propagation;
  ObjectiveRequirements requirements;
  Eigen::Vector3d of3_weights = Eigen::Vector3d::Constant(1.0 / 3.0);
};

void validate(const ScenarioConfig& config);

/// A sensor site read from a file.
struct SensorRecord {
  std::string id;
  GeodeticPosition position;
  bool forced = false;
};

struct PlacementProblem {
  AirspaceGrid grid;
  /// Candidate sites first, then deployed (forced) sites.
  std::vector<GeodeticPosition> sites;
  std::vector<std::string> site_ids;
  std::vector<bool> forced_mask;
  std::vector<JammerModel> jammers;
  ObjectiveRequirements requirements;
  PropagationParams propagation;
  Eigen::Vector3d of3_weights = Eigen::Vector3d::Constant(1.0 / 3.0);
  double pareto_weight_a = 0.1;
  double range_cap_km = 0.0;
  /// R of the knapsack penalty.
  std::size_t penalty_cells = 0;
  /// Upper bound on selected sites, used for normalization and the GA cap.
  std::size_t max_selectable = 0;
  /// Hard cap handed to the GA (deployed + budget); unset means penalty-only.
  std::optional<std::size_t> selection_cap;
  NormalizationBounds bounds;
  SiteGeometry geometry;
  std::vector<std::string> warnings;

  std::size_t site_count() const { return sites.size(); }
  std::size_t forced_count() const;
};

/// Regular lattice (lat_count x lon_count per altitude level), sorted by
/// (longitude, latitude, altitude).
AirspaceGrid sample_grid(const AreaBounds& bounds, std::size_t lat_count, std::size_t lon_count,
                         const ObjectiveRequirements& req = {});

/// Candidate ground sites, sorted by (longitude, latitude). The lattice pattern
/// places one site at the center of each of `count` equal rectangles.
std::vector<GeodeticPosition> generate_candidates(const AreaBounds& bounds, const CandidateSpec& spec);

/// Jammers spread over the area at the given heights, equally many per height.
std::vector<JammerModel> generate_jammers(const AreaBounds& bounds, const JammerSpec& spec);

/// Rows x cols split of `count` cells with rows <= cols and rows maximal.
std::pair<std::size_t, std::size_t> lattice_shape(std::size_t count);

/// Fills geometry and normalization bounds from the lists already in `problem`.
void precompute(PlacementProblem& problem);

/// Fixed normalization ranges: every score is 0 when requirements are met and
/// at most its saturated value.
NormalizationBounds normalization_bounds(const AirspaceGrid& grid, const ObjectiveRequirements& req,
                                         double range_cap_km, std::size_t max_selectable);

PlacementProblem build_scenario1(const ScenarioConfig& config, const GaConfig& ga);

/// Deployed sites are appended after the candidates and forced. Duplicates are
/// dropped and out-of-area sites kept, both with a warning.
PlacementProblem build_scenario2(const ScenarioConfig& config, const GaConfig& ga,
                                 std::span<const SensorRecord> deployed);

/// Problem whose sites are exactly `sensors` (all selected). Normalization and
/// penalty constants match the optimization run the same config describes,
/// with records flagged `forced` counted as deployed.
PlacementProblem build_evaluation_problem(const ScenarioConfig& config, const GaConfig& ga,
                                          std::span<const SensorRecord> sensors);

/// Selection mask for build_evaluation_problem.
inline SiteMask select_all(const PlacementProblem& problem) { return SiteMask(problem.site_count(), true); }

/// Scores the selected sites. This is the single evaluation path shared by the
/// optimizer and every report.
ObjectiveScores evaluate_scores(const PlacementProblem& problem, const SiteMask& selection);

}  // namespace osp
