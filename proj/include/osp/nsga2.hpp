#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "osp/error.hpp"
#include "osp/objectives.hpp"

namespace osp {

/// Minimized objective vector.
using ObjectiveVector = Eigen::VectorXd;

struct GaConfig {
  std::size_t population_size = 100;
  std::size_t generations = 200;
  double crossover_rate = 0.9;
  /// Per-bit flip probability; unset means 1 / chromosome length.
  std::optional<double> mutation_rate;
  std::size_t tournament_size = 2;
  std::uint64_t rng_seed = 1;
  /// Hard cap on selected sites. In augmentation runs this counts new sites only.
  std::optional<std::size_t> n_max;
  double pareto_weight_a = 0.1;
  /// Stop early when the rank-0 set has not changed for this many generations.
  std::optional<std::size_t> stagnation_window;
  /// Evaluation workers; 0 picks the hardware concurrency.
  std::size_t threads = 0;
};

/// Throws InvalidConfig.
void validate(const GaConfig& config);

struct Chromosome {
  std::vector<bool> genes;
  std::vector<bool> forced_mask;

  std::size_t size() const { return genes.size(); }
  std::size_t popcount() const;
  std::size_t forced_count() const;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

struct Individual {
  Chromosome chromosome;
  ObjectiveScores scores;
  ObjectiveVector objectives;
  std::size_t rank = 0;
  double crowding = 0.0;
};

using Population = std::vector<Individual>;

/// True iff `a` is no worse than `b` everywhere and strictly better somewhere.
/// Throws InvalidInput on a length mismatch.
template <typename DerivedA, typename DerivedB>
bool dominates(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) throw InvalidInput("dominates: objective vectors differ in length");
  bool strictly_better = false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) > b(i)) return false;
    if (a(i) < b(i)) strictly_better = true;
  }
  return strictly_better;
}

using Fronts = std::vector<std::vector<std::size_t>>;

/// Deb's fast non-dominated sort. Rows of `objectives` are individuals.
/// Indices inside each front are ascending.
Fronts non_dominated_sort(const Eigen::Ref<const Eigen::MatrixXd>& objectives);
Fronts non_dominated_sort(const Population& population);

/// Crowding distance of each member of `front` (same order as `front`).
Eigen::VectorXd crowding_distance(const Eigen::Ref<const Eigen::MatrixXd>& objectives,
                                  std::span<const std::size_t> front);

/// Sorts, then writes rank and crowding into every individual.
Fronts assign_rank_and_crowding(Population& population);

/// Crowded-comparison order: lower rank, then larger crowding, then lower index.
bool crowded_better(const Population& population, std::size_t a, std::size_t b);

/// Winner among the given competitor indices.
std::size_t tournament_winner(const Population& population, std::span<const std::size_t> competitors);

std::size_t tournament_select(const Population& population, std::mt19937_64& rng,
                              std::size_t tournament_size = 2);

/// Uniform crossover with probability `rate`; otherwise the parents are cloned.
/// Throws InvalidInput when lengths or forced masks differ.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& p1, const Chromosome& p2, double rate,
                                            std::mt19937_64& rng);

/// Independent per-bit flips on non-forced genes, then the n_max repair.
Chromosome mutate(const Chromosome& c, double per_bit_rate, std::mt19937_64& rng,
                  std::optional<std::size_t> n_max = std::nullopt);

/// Clears random non-forced genes until popcount <= n_max.
void repair(Chromosome& c, std::size_t n_max, std::mt19937_64& rng);

/// Random chromosome with popcount uniform in [forced, min(n_max, N)].
Chromosome random_chromosome(const std::vector<bool>& forced_mask, std::optional<std::size_t> n_max,
                             std::mt19937_64& rng);

struct Evaluation {
  ObjectiveVector objectives;
  ObjectiveScores scores;
};

using Evaluator = std::function<Evaluation(const Chromosome&)>;

struct ProgressRecord {
  std::size_t generation = 0;
  std::size_t front_size = 0;
  /// Per-objective minimum over the rank-0 set.
  ObjectiveVector best;
  /// Rank-0 objective vectors, one row per member.
  Eigen::MatrixXd front;
};

using ProgressCallback = std::function<void(const ProgressRecord&)>;

struct EvolutionResult {
  /// Rank-0 members of the final population, duplicates removed.
  Population front;
  Population final_population;
  Population initial_population;
  std::size_t generations_run = 0;
  std::size_t evaluations = 0;
};

/// Elitist (mu + lambda) NSGA-II over binary chromosomes. Deterministic for a
/// given seed regardless of `config.threads`.
EvolutionResult evolve(const Evaluator& evaluate, const std::vector<bool>& forced_mask,
                       const GaConfig& config, const ProgressCallback& progress = {});

}  // namespace osp
