#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "osp/nsga2.hpp"
#include "osp/scenario.hpp"

namespace osp {

struct ParetoMember {
  std::string id;
  SiteMask selection;
  ObjectiveScores scores;
};

struct ParetoFront {
  /// Ordered by (sensor count, fitness, selection); ids follow this order.
  std::vector<ParetoMember> members;
  std::uint64_t seed = 0;
  std::size_t generations_run = 0;
  std::size_t evaluations = 0;
};

/// Runs NSGA-II on the placement problem. Dominance compares ObjectiveScores::fitness.
/// `ga.n_max` is replaced by the problem's selection cap.
ParetoFront optimize(const PlacementProblem& problem, const GaConfig& ga, const ProgressCallback& progress = {});

/// Sites selected in `selection`, in index order.
std::vector<SensorRecord> selected_sensors(const PlacementProblem& problem, const SiteMask& selection);

}  // namespace osp
