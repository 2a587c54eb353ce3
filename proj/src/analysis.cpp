#include "osp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace osp {

PlacementEvaluation evaluate_placement(const PlacementProblem& problem, const SiteMask& selection) {
  PlacementEvaluation out;
  out.scores = evaluate_scores(problem, selection);

  const SiteGeometry& g = problem.geometry;
  CoverageGrid& cov = out.coverage;
  cov.points = problem.grid.points;
  cov.k = visible_count(g, selection);
  cov.best_gdop = achieved_gdop(g, selection, problem.requirements.gdop_subset_cap);
  cov.second_nearest_range_km = achieved_range_km(g, selection);

  JamReport& jam = out.jam;
  const auto k = static_cast<Eigen::Index>(problem.jammers.size());
  jam.affected = Eigen::VectorXi::Zero(k);
  jam.min_distance_km = Eigen::VectorXd::Constant(k, std::numeric_limits<double>::infinity());
  for (Eigen::Index l = 0; l < k; ++l) {
    jam.jammers.push_back(problem.jammers[l].position);
    for (std::size_t i = 0; i < selection.size(); ++i) {
      if (!selection[i]) continue;
      const auto c = static_cast<Eigen::Index>(i);
      if (g.jammer_affects(l, c)) ++jam.affected(l);
      jam.min_distance_km(l) = std::min(jam.min_distance_km(l), g.jammer_distance_km(l, c));
    }
  }
  jam.max_affected = k > 0 ? jam.affected.maxCoeff() : 0;
  jam.mean_affected = k > 0 ? jam.affected.cast<double>().mean() : 0.0;
  jam.histogram.assign(static_cast<std::size_t>(jam.max_affected) + 1, 0);
  for (Eigen::Index l = 0; l < k; ++l) ++jam.histogram[static_cast<std::size_t>(jam.affected(l))];
  return out;
}

double GdopDistribution::above(double threshold) const {
  const auto it = std::find(thresholds.begin(), thresholds.end(), threshold);
  if (it == thresholds.end()) throw InvalidInput("threshold not part of the distribution");
  return fraction_above[static_cast<std::size_t>(it - thresholds.begin())];
}

GdopDistribution gdop_distribution(const CoverageGrid& grid, std::span<const double> thresholds) {
  GdopDistribution d;
  d.thresholds.assign(thresholds.begin(), thresholds.end());
  for (const auto& p : grid.points) d.altitudes_m.push_back(p.altitude_m);
  std::sort(d.altitudes_m.begin(), d.altitudes_m.end());
  d.altitudes_m.erase(std::unique(d.altitudes_m.begin(), d.altitudes_m.end()), d.altitudes_m.end());

  const std::size_t levels = d.altitudes_m.size();
  std::vector<std::size_t> level_of(grid.points.size());
  std::vector<std::size_t> level_size(levels, 0);
  for (std::size_t j = 0; j < grid.points.size(); ++j) {
    level_of[j] = static_cast<std::size_t>(
        std::lower_bound(d.altitudes_m.begin(), d.altitudes_m.end(), grid.points[j].altitude_m) -
        d.altitudes_m.begin());
    ++level_size[level_of[j]];
  }

  const auto fraction = [](std::size_t count, std::size_t total) {
    return total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total);
  };
  d.fraction_above_by_altitude.assign(levels, {});
  for (double t : thresholds) {
    std::size_t pooled = 0;
    std::vector<std::size_t> per_level(levels, 0);
    for (std::size_t j = 0; j < grid.points.size(); ++j) {
      const double v = grid.best_gdop(static_cast<Eigen::Index>(j));
      if (std::isnan(v) || v > t) {
        ++pooled;
        ++per_level[level_of[j]];
      }
    }
    d.fraction_above.push_back(fraction(pooled, grid.points.size()));
    for (std::size_t l = 0; l < levels; ++l)
      d.fraction_above_by_altitude[l].push_back(fraction(per_level[l], level_size[l]));
  }
  return d;
}

ParetoRow make_row(const std::string& id, const ObjectiveScores& s) {
  ParetoRow r;
  r.id = id;
  r.n_sensors = s.selected;
  r.n_forced = s.forced;
  r.of1 = s.of1;
  r.of2 = s.of2;
  r.of3 = s.of3;
  r.of3_components = s.of3_components;
  r.of3_normalized_components = s.of3_normalized_components;
  r.normalized = s.normalized;
  r.penalty = s.penalty;
  r.fitness = s.fitness;
  return r;
}

std::vector<ParetoRow> pareto_summary(const ParetoFront& front) {
  std::vector<ParetoRow> rows;
  rows.reserve(front.members.size());
  for (const auto& m : front.members) rows.push_back(make_row(m.id, m.scores));
  return rows;
}

std::string select_solution(std::span<const ParetoRow> rows, const SelectionPreferences& prefs) {
  if ((prefs.weights.array() < 0.0).any() || !prefs.weights.allFinite() ||
      std::abs(prefs.weights.sum() - 1.0) > 1e-9)
    throw InvalidConfig("selection weights must be non-negative and sum to 1");
  const ParetoRow* best = nullptr;
  double best_value = 0.0;
  for (const auto& r : rows) {
    if (prefs.budget_cap && r.n_sensors > *prefs.budget_cap) continue;
    const double value = prefs.weights.dot(r.normalized);
    const bool better = best == nullptr || value < best_value ||
                        (value == best_value && (r.n_sensors < best->n_sensors ||
                                                 (r.n_sensors == best->n_sensors && r.id < best->id)));
    if (better) {
      best = &r;
      best_value = value;
    }
  }
  if (best == nullptr) throw NoFeasibleSolution("no front member fits the budget");
  return best->id;
}

}  // namespace osp
