#include "osp/optimize.hpp"

#include <algorithm>
#include <cstdio>

namespace osp {

namespace {

bool member_less(const ParetoMember& a, const ParetoMember& b) {
  if (a.scores.selected != b.scores.selected) return a.scores.selected < b.scores.selected;
  for (int i = 0; i < 3; ++i)
    if (a.scores.fitness(i) != b.scores.fitness(i)) return a.scores.fitness(i) < b.scores.fitness(i);
  return a.selection < b.selection;
}

}  // namespace

ParetoFront optimize(const PlacementProblem& problem, const GaConfig& ga, const ProgressCallback& progress) {
  GaConfig config = ga;
  config.n_max = problem.selection_cap;

  const Evaluator evaluate = [&problem](const Chromosome& c) {
    ObjectiveScores s = evaluate_scores(problem, c.genes);
    return Evaluation{ObjectiveVector(s.fitness), s};
  };
  EvolutionResult result = evolve(evaluate, problem.forced_mask, config, progress);

  ParetoFront front;
  front.seed = config.rng_seed;
  front.generations_run = result.generations_run;
  front.evaluations = result.evaluations;
  for (auto& ind : result.front) front.members.push_back({{}, std::move(ind.chromosome.genes), ind.scores});
  std::sort(front.members.begin(), front.members.end(), member_less);
  for (std::size_t i = 0; i < front.members.size(); ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "S%03zu", i + 1);
    front.members[i].id = buf;
  }
  return front;
}

std::vector<SensorRecord> selected_sensors(const PlacementProblem& problem, const SiteMask& selection) {
  if (selection.size() != problem.site_count())
    throw InvalidInput("selection length differs from the number of sites");
  std::vector<SensorRecord> out;
  for (std::size_t i = 0; i < selection.size(); ++i)
    if (selection[i]) out.push_back({problem.site_ids[i], problem.sites[i], problem.forced_mask[i]});
  return out;
}

}  // namespace osp
