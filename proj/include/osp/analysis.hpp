#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "osp/optimize.hpp"
#include "osp/scenario.hpp"

namespace osp {

/// Per grid point coverage of a placement.
struct CoverageGrid {
  std::vector<GeodeticPosition> points;
  Eigen::VectorXi k;                           ///< sensors in line of sight
  Eigen::VectorXd best_gdop;                   ///< +inf below four visible sensors
  Eigen::VectorXd second_nearest_range_km;     ///< +inf below two visible sensors
};

/// Per jammer impact of a placement.
struct JamReport {
  std::vector<GeodeticPosition> jammers;
  Eigen::VectorXi affected;          ///< sensors affected under the jammer's affect rule
  Eigen::VectorXd min_distance_km;   ///< nearest selected sensor, +inf with none
  int max_affected = 0;
  double mean_affected = 0.0;
  /// histogram[c] = number of jammers affecting exactly c sensors.
  std::vector<std::size_t> histogram;
};

struct PlacementEvaluation {
  ObjectiveScores scores;
  CoverageGrid coverage;
  JamReport jam;
};

/// Scores plus diagnostic grids. Scores come from evaluate_scores.
PlacementEvaluation evaluate_placement(const PlacementProblem& problem, const SiteMask& selection);

struct GdopDistribution {
  std::vector<double> thresholds;
  /// Fraction of all grid points with GDOP strictly above each threshold.
  std::vector<double> fraction_above;
  /// Distinct altitudes (ascending) and the same fractions per altitude slice.
  std::vector<double> altitudes_m;
  std::vector<std::vector<double>> fraction_above_by_altitude;

  /// Pooled fraction for a threshold present in `thresholds`.
  double above(double threshold) const;
};

/// Infinite GDOP exceeds every threshold.
GdopDistribution gdop_distribution(const CoverageGrid& grid, std::span<const double> thresholds);

/// One summary line per front member.
struct ParetoRow {
  std::string id;
  std::size_t n_sensors = 0;
  std::size_t n_forced = 0;
  double of1 = 0.0;
  double of2 = 0.0;
  double of3 = 0.0;
  Eigen::Vector3d of3_components = Eigen::Vector3d::Zero();
  Eigen::Vector3d of3_normalized_components = Eigen::Vector3d::Zero();
  Eigen::Vector3d normalized = Eigen::Vector3d::Zero();
  double penalty = 0.0;
  Eigen::Vector3d fitness = Eigen::Vector3d::Zero();
};

ParetoRow make_row(const std::string& id, const ObjectiveScores& scores);
std::vector<ParetoRow> pareto_summary(const ParetoFront& front);

struct SelectionPreferences {
  /// Largest acceptable sensor count; unset means no budget limit.
  std::optional<std::size_t> budget_cap;
  /// Weights on the normalized (OF1, OF2, OF3); non-negative, summing to 1.
  Eigen::Vector3d weights = Eigen::Vector3d::Constant(1.0 / 3.0);
};

/// Member under the budget with the lowest weighted normalized sum; ties go to
/// fewer sensors, then the lower id. Throws NoFeasibleSolution.
std::string select_solution(std::span<const ParetoRow> rows, const SelectionPreferences& prefs);

}  // namespace osp
