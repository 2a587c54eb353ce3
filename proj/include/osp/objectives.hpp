#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "osp/gdop.hpp"
#include "osp/geo.hpp"

namespace osp {

/// Which sensors a jammer is considered to disrupt.
enum class AffectRule {
  kLineOfSight,        ///< every sensor within the jammer's radio line of sight
  kLineOfSightAndJsr,  ///< ... and whose jamming-to-signal ratio reaches a threshold
};

struct JammerModel {
  GeodeticPosition position;
  double power_w = 100.0;
  double antenna_gain = 1.0;
  /// Legitimate transmitter (aircraft transponder) characteristics.
  double transmitter_power_w = 250.0;
  double transmitter_antenna_gain = 1.0;
  AffectRule affect_rule = AffectRule::kLineOfSight;
  double jsr_threshold = 1.0;
  /// Transmitter-to-sensor distance assumed when applying the JSR rule.
  double reference_signal_range_km = 150.0;
};

void validate(const JammerModel& jammer);

struct ObjectiveRequirements {
  double required_gdop = 10.0;
  double required_range_km = 150.0;
  double required_min_sensor_spacing_km = 80.0;
  double required_min_jammer_distance_km = 80.0;
  int required_max_sensors_in_jammer_los = 0;

  // Acceptance tolerances (sup-norm). They do not enter the MSD scores.
  double gdop_tolerance = 5.0;
  double range_tolerance_km = 50.0;
  double spacing_tolerance_km = 0.0;
  double jammer_distance_tolerance_km = 0.0;
  int jammer_los_tolerance = 1;

  /// Achieved GDOP is clamped to this value (infinite included) before scoring.
  double gdop_cap = 100.0;
  /// Achieved 2nd-nearest range is clamped to this value; <= 0 selects the area diagonal.
  double range_cap_km = 0.0;
  /// Nearest-visible-sensor cap for the GDOP subset enumeration (0 = exhaustive).
  std::size_t gdop_subset_cap = 12;
};

void validate(const ObjectiveRequirements& req);

/// Sampled airspace with per-point requirements.
struct AirspaceGrid {
  std::vector<GeodeticPosition> points;
  Eigen::VectorXd required_gdop;
  Eigen::VectorXd required_range_km;

  std::size_t size() const { return points.size(); }
};

/// Grid with uniform requirements taken from `req`.
AirspaceGrid make_grid(std::vector<GeodeticPosition> points, const ObjectiveRequirements& req);

/// Scores of a single placement. Component order everywhere is (OF1, OF2, OF3)
/// and (direction 1, 2, 3) for the anti-jamming parts.
struct ObjectiveScores {
  double of1 = 0.0;
  double of2 = 0.0;
  /// Weighted sum of the normalized direction scores.
  double of3 = 0.0;
  Eigen::Vector3d of3_components = Eigen::Vector3d::Zero();
  Eigen::Vector3d of3_normalized_components = Eigen::Vector3d::Zero();
  double penalty = 0.0;
  Eigen::Vector3d normalized = Eigen::Vector3d::Zero();
  /// Penalty-blended normalized objectives; this is what dominance compares.
  Eigen::Vector3d fitness = Eigen::Vector3d::Zero();
  std::size_t selected = 0;
  std::size_t forced = 0;
};

/// Fixed normalization range per raw score: OF1, OF2, D1, D2, D3.
struct NormalizationBounds {
  Eigen::Matrix<double, 5, 1> min = Eigen::Matrix<double, 5, 1>::Zero();
  Eigen::Matrix<double, 5, 1> max = Eigen::Matrix<double, 5, 1>::Ones();
};

/// Selection mask over sites.
using SiteMask = std::vector<bool>;

/// Pairwise quantities between the grid, the jammers and a list of sites.
struct SiteGeometry {
  Eigen::MatrixXd point_distance_km;               ///< m x N
  std::vector<Eigen::Matrix3Xd> point_directions;  ///< m entries of 3 x N (NED unit vectors)
  Eigen::MatrixXd jammer_distance_km;              ///< k x N
  std::vector<Eigen::Matrix3Xd> jammer_directions; ///< k entries of 3 x N
  Eigen::MatrixXd site_distance_km;                ///< N x N
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> point_los;       ///< m x N
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> jammer_los;      ///< k x N
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> jammer_affects;  ///< k x N, affect rule applied
  /// Per grid point, the sites in line of sight ordered by (distance, lat, lon, alt, index).
  std::vector<std::vector<Eigen::Index>> point_visible_order;
};

SiteGeometry precompute_geometry(const AirspaceGrid& grid, std::span<const GeodeticPosition> sites,
                                 std::span<const JammerModel> jammers,
                                 const PropagationParams& params);

// --- achieved per-point values ------------------------------------------------

/// Best GDOP at every grid point from the selected sites.
Eigen::VectorXd achieved_gdop(const SiteGeometry& geometry, const SiteMask& selection,
                              std::size_t subset_cap);
/// Distance to the 2nd-nearest visible selected site; +inf with fewer than two.
Eigen::VectorXd achieved_range_km(const SiteGeometry& geometry, const SiteMask& selection);
/// k-coverage at every grid point.
Eigen::VectorXi visible_count(const SiteGeometry& geometry, const SiteMask& selection);

// --- scoring kernels ----------------------------------------------------------

/// Mean of max(0, min(achieved, cap) - required)^2. Throws InvalidInput on an empty grid.
double shortfall_msd(const Eigen::Ref<const Eigen::VectorXd>& required,
                     const Eigen::Ref<const Eigen::VectorXd>& achieved, double cap);

double of1_gdop_msd(const AirspaceGrid& grid, const Eigen::Ref<const Eigen::VectorXd>& achieved_gdop,
                    const ObjectiveRequirements& req);
double of2_range_msd(const AirspaceGrid& grid, const Eigen::Ref<const Eigen::VectorXd>& achieved_range_km,
                     double range_cap_km);

/// Nearest-neighbour shortfall for a symmetric distance matrix of the selected sensors.
double spacing_msd(const Eigen::Ref<const Eigen::MatrixXd>& pairwise_km, double target_km);
/// Per jammer (row): shortfall of the nearest sensor distance; rows without any
/// sensor in line of sight contribute 0.
double jammer_distance_msd(const Eigen::Ref<const Eigen::MatrixXd>& jammer_to_sensor_km,
                           const Eigen::Ref<const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>>& los,
                           double target_km);
/// Per jammer (row): squared excess of affected sensors over the allowance.
double jammer_exposure_msd(const Eigen::Ref<const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>>& affects,
                           int max_allowed);

// --- objective functions on explicit sensor lists -----------------------------

double of1_gdop_msd(const AirspaceGrid& grid, std::span<const GeodeticPosition> sensors,
                    const ObjectiveRequirements& req, const PropagationParams& params = {});
/// `range_cap_km` replaces req.range_cap_km; it must be positive.
double of2_range_msd(const AirspaceGrid& grid, std::span<const GeodeticPosition> sensors,
                     double range_cap_km, const PropagationParams& params = {});
/// Throws InvalidInput with fewer than two sensors.
double of3_direction1_spacing(const Eigen::Ref<const Eigen::Matrix3Xd>& sensors_ecef,
                              const ObjectiveRequirements& req);
double of3_direction2_jammer_distance(std::span<const GeodeticPosition> sensors,
                                      std::span<const JammerModel> jammers,
                                      const ObjectiveRequirements& req,
                                      const PropagationParams& params = {});
double of3_direction3_sensors_in_range(std::span<const GeodeticPosition> sensors,
                                       std::span<const JammerModel> jammers,
                                       const ObjectiveRequirements& req,
                                       const PropagationParams& params = {});

/// P_j G_j d(t,s)^2 / (P_T G_T d(jam,s)^2); +inf when the jammer sits on the sensor.
double jsr(const JammerModel& jammer, const EcefPosition& sensor, const EcefPosition& transmitter);
double jsr_ratio(double jammer_power_gain, double transmitter_power_gain, double transmitter_distance,
                 double jammer_distance);
bool jammer_affects(const JammerModel& jammer, const GeodeticPosition& sensor,
                    const PropagationParams& params = {});

/// Throws InvalidConfig unless weights are non-negative and sum to 1 (+-1e-9).
double of3_combined(const Eigen::Ref<const Eigen::Vector3d>& normalized_directions,
                    const Eigen::Ref<const Eigen::Vector3d>& weights);
void validate_of3_weights(const Eigen::Ref<const Eigen::Vector3d>& weights);

/// 0.5 * (selected / R)^2.
double knapsack_penalty(std::size_t selected_count, std::size_t total_cells);

inline double weighted_fitness(double objective_score, double penalty, double pareto_weight_a) {
  return (1.0 - pareto_weight_a) * objective_score + pareto_weight_a * penalty;
}

/// (score - min) / (max - min) clamped to [0, 1]; 0 when the range is empty.
double normalize_score(double score, double running_min, double running_max);

}  // namespace osp
