#include "osp/nsga2.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace osp {

void validate(const GaConfig& config) {
  if (config.population_size < 4 || config.population_size % 2 != 0)
    throw InvalidConfig("population_size must be even and >= 4");
  if (!(config.crossover_rate >= 0.0 && config.crossover_rate <= 1.0))
    throw InvalidConfig("crossover_rate must lie in [0, 1]");
  if (config.mutation_rate && !(*config.mutation_rate >= 0.0 && *config.mutation_rate <= 1.0))
    throw InvalidConfig("mutation_rate must lie in [0, 1]");
  if (config.tournament_size < 1) throw InvalidConfig("tournament_size must be >= 1");
  if (!(config.pareto_weight_a >= 0.0 && config.pareto_weight_a <= 1.0))
    throw InvalidConfig("pareto_weight_a must lie in [0, 1]");
  if (config.stagnation_window && *config.stagnation_window == 0)
    throw InvalidConfig("stagnation_window must be >= 1 when set");
}

std::size_t Chromosome::popcount() const {
  return static_cast<std::size_t>(std::count(genes.begin(), genes.end(), true));
}

std::size_t Chromosome::forced_count() const {
  return static_cast<std::size_t>(std::count(forced_mask.begin(), forced_mask.end(), true));
}

Fronts non_dominated_sort(const Eigen::Ref<const Eigen::MatrixXd>& objectives) {
  const auto n = static_cast<std::size_t>(objectives.rows());
  std::vector<std::vector<std::size_t>> dominated_by_me(n);
  std::vector<std::size_t> domination_count(n, 0);
  Fronts fronts;
  if (n == 0) return fronts;

  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const auto rp = objectives.row(static_cast<Eigen::Index>(p));
      const auto rq = objectives.row(static_cast<Eigen::Index>(q));
      if (dominates(rp, rq)) {
        dominated_by_me[p].push_back(q);
        ++domination_count[q];
      } else if (dominates(rq, rp)) {
        dominated_by_me[q].push_back(p);
        ++domination_count[p];
      }
    }
  }

  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p)
    if (domination_count[p] == 0) current.push_back(p);
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : current)
      for (std::size_t q : dominated_by_me[p])
        if (--domination_count[q] == 0) next.push_back(q);
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

namespace {

Eigen::MatrixXd objective_matrix(const Population& population) {
  if (population.empty()) return {};
  const auto m = population.front().objectives.size();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(population.size()), m);
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (population[i].objectives.size() != m) throw InvalidInput("objective vectors differ in length");
    out.row(static_cast<Eigen::Index>(i)) = population[i].objectives.transpose();
  }
  return out;
}

}  // namespace

Fronts non_dominated_sort(const Population& population) {
  return non_dominated_sort(objective_matrix(population));
}

Eigen::VectorXd crowding_distance(const Eigen::Ref<const Eigen::MatrixXd>& objectives,
                                  std::span<const std::size_t> front) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto size = static_cast<Eigen::Index>(front.size());
  Eigen::VectorXd distance = Eigen::VectorXd::Zero(size);
  if (size <= 2) {
    distance.setConstant(kInf);
    return distance;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(size));
  for (Eigen::Index obj = 0; obj < objectives.cols(); ++obj) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    auto value = [&](Eigen::Index pos) { return objectives(static_cast<Eigen::Index>(front[pos]), obj); };
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return value(a) < value(b); });
    const double lo = value(order.front());
    const double hi = value(order.back());
    distance(order.front()) = kInf;
    distance(order.back()) = kInf;
    if (!(hi > lo)) continue;
    for (std::size_t r = 1; r + 1 < order.size(); ++r)
      distance(order[r]) += (value(order[r + 1]) - value(order[r - 1])) / (hi - lo);
  }
  return distance;
}

Fronts assign_rank_and_crowding(Population& population) {
  const Eigen::MatrixXd obj = objective_matrix(population);
  Fronts fronts = non_dominated_sort(obj);
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    const Eigen::VectorXd crowd = crowding_distance(obj, fronts[r]);
    for (std::size_t i = 0; i < fronts[r].size(); ++i) {
      population[fronts[r][i]].rank = r;
      population[fronts[r][i]].crowding = crowd(static_cast<Eigen::Index>(i));
    }
  }
  return fronts;
}

bool crowded_better(const Population& population, std::size_t a, std::size_t b) {
  const Individual& x = population[a];
  const Individual& y = population[b];
  if (x.rank != y.rank) return x.rank < y.rank;
  if (x.crowding != y.crowding) return x.crowding > y.crowding;
  return a < b;
}

std::size_t tournament_winner(const Population& population, std::span<const std::size_t> competitors) {
  if (competitors.empty()) throw InvalidInput("tournament without competitors");
  std::size_t best = competitors.front();
  for (std::size_t c : competitors.subspan(1))
    if (crowded_better(population, c, best)) best = c;
  return best;
}

std::size_t tournament_select(const Population& population, std::mt19937_64& rng,
                              std::size_t tournament_size) {
  if (population.empty()) throw InvalidInput("tournament on an empty population");
  std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
  std::vector<std::size_t> competitors(std::max<std::size_t>(1, tournament_size));
  for (auto& c : competitors) c = pick(rng);
  return tournament_winner(population, competitors);
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& p1, const Chromosome& p2, double rate,
                                            std::mt19937_64& rng) {
  if (p1.size() != p2.size()) throw InvalidInput("crossover: parents differ in length");
  if (p1.forced_mask != p2.forced_mask) throw InvalidInput("crossover: parents differ in forced mask");
  Chromosome c1 = p1;
  Chromosome c2 = p2;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) < rate) {
    for (std::size_t i = 0; i < c1.size(); ++i) {
      if (unit(rng) < 0.5) {
        const bool tmp = c1.genes[i];
        c1.genes[i] = c2.genes[i];
        c2.genes[i] = tmp;
      }
    }
  }
  for (std::size_t i = 0; i < c1.size(); ++i) {
    if (c1.forced_mask[i]) {
      c1.genes[i] = true;
      c2.genes[i] = true;
    }
  }
  return {std::move(c1), std::move(c2)};
}

void repair(Chromosome& c, std::size_t n_max, std::mt19937_64& rng) {
  std::vector<std::size_t> droppable;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.genes[i] && !c.forced_mask[i]) droppable.push_back(i);
  std::size_t count = c.popcount();
  while (count > n_max && !droppable.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, droppable.size() - 1);
    const std::size_t at = pick(rng);
    c.genes[droppable[at]] = false;
    droppable[at] = droppable.back();
    droppable.pop_back();
    --count;
  }
}

Chromosome mutate(const Chromosome& c, double per_bit_rate, std::mt19937_64& rng,
                  std::optional<std::size_t> n_max) {
  if (!(per_bit_rate >= 0.0 && per_bit_rate <= 1.0)) throw InvalidInput("mutation rate outside [0, 1]");
  Chromosome out = c;
  if (per_bit_rate > 0.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out.forced_mask[i]) continue;
      if (per_bit_rate >= 1.0 || unit(rng) < per_bit_rate) out.genes[i] = !out.genes[i];
    }
  }
  if (n_max) repair(out, *n_max, rng);
  return out;
}

Chromosome random_chromosome(const std::vector<bool>& forced_mask, std::optional<std::size_t> n_max,
                             std::mt19937_64& rng) {
  Chromosome c;
  c.forced_mask = forced_mask;
  c.genes = forced_mask;
  std::vector<std::size_t> free_sites;
  for (std::size_t i = 0; i < forced_mask.size(); ++i)
    if (!forced_mask[i]) free_sites.push_back(i);
  const std::size_t forced = forced_mask.size() - free_sites.size();
  const std::size_t upper = std::min(n_max.value_or(forced_mask.size()), forced_mask.size());
  if (upper < forced) throw InvalidConfig("n_max is below the number of forced sites");
  const std::size_t count = std::uniform_int_distribution<std::size_t>(forced, upper)(rng);
  // partial Fisher-Yates over the free sites
  for (std::size_t i = 0; i < count - forced; ++i) {
    const std::size_t j = std::uniform_int_distribution<std::size_t>(i, free_sites.size() - 1)(rng);
    std::swap(free_sites[i], free_sites[j]);
    c.genes[free_sites[i]] = true;
  }
  return c;
}

namespace {

class EvaluationCache {
public:
  EvaluationCache(const Evaluator& evaluate, std::size_t threads) : evaluate_(evaluate), threads_(threads) {}

  /// Fills objectives/scores for every individual, evaluating unseen
  /// chromosomes in parallel. Results do not depend on the worker count.
  void fill(Population& batch) {
    std::vector<const Chromosome*> pending;
    std::unordered_map<std::vector<bool>, std::size_t> pending_index;
    for (const auto& ind : batch) {
      if (cache_.contains(ind.chromosome.genes) || pending_index.contains(ind.chromosome.genes)) continue;
      pending_index.emplace(ind.chromosome.genes, pending.size());
      pending.push_back(&ind.chromosome);
    }

    std::vector<Evaluation> results(pending.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min(threads_, pending.size()));
    if (workers <= 1) {
      for (std::size_t i = 0; i < pending.size(); ++i) results[i] = evaluate_(*pending[i]);
    } else {
      std::vector<std::exception_ptr> errors(workers);
      {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
          pool.emplace_back([&, w] {
            try {
              for (std::size_t i = w; i < pending.size(); i += workers) results[i] = evaluate_(*pending[i]);
            } catch (...) {
              errors[w] = std::current_exception();
            }
          });
        }
      }
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }

    for (std::size_t i = 0; i < pending.size(); ++i) cache_.emplace(pending[i]->genes, std::move(results[i]));
    evaluations_ += pending.size();
    for (auto& ind : batch) {
      const Evaluation& e = cache_.at(ind.chromosome.genes);
      ind.objectives = e.objectives;
      ind.scores = e.scores;
    }
  }

  std::size_t evaluations() const { return evaluations_; }

private:
  const Evaluator& evaluate_;
  std::size_t threads_;
  std::unordered_map<std::vector<bool>, Evaluation> cache_;
  std::size_t evaluations_ = 0;
};

ProgressRecord make_record(std::size_t generation, const Population& population, const Fronts& fronts) {
  ProgressRecord rec;
  rec.generation = generation;
  const auto& first = fronts.front();
  rec.front_size = first.size();
  const auto m = population.front().objectives.size();
  rec.front.resize(static_cast<Eigen::Index>(first.size()), m);
  for (std::size_t i = 0; i < first.size(); ++i)
    rec.front.row(static_cast<Eigen::Index>(i)) = population[first[i]].objectives.transpose();
  rec.best = rec.front.colwise().minCoeff().transpose();
  return rec;
}

std::vector<std::vector<double>> front_signature(const Population& population, const Fronts& fronts) {
  std::vector<std::vector<double>> sig;
  for (std::size_t i : fronts.front()) {
    const auto& o = population[i].objectives;
    sig.emplace_back(o.data(), o.data() + o.size());
  }
  std::sort(sig.begin(), sig.end());
  sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
  return sig;
}

}  // namespace

EvolutionResult evolve(const Evaluator& evaluate, const std::vector<bool>& forced_mask,
                       const GaConfig& config, const ProgressCallback& progress) {
  validate(config);
  const std::size_t genes = forced_mask.size();
  if (genes == 0) throw InvalidConfig("no candidate sites");
  const std::size_t forced = static_cast<std::size_t>(std::count(forced_mask.begin(), forced_mask.end(), true));
  if (config.n_max && *config.n_max < forced) throw InvalidConfig("n_max is below the number of forced sites");

  const double mutation_rate = config.mutation_rate.value_or(1.0 / static_cast<double>(genes));
  std::size_t threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  std::mt19937_64 rng(config.rng_seed);
  EvaluationCache cache(evaluate, threads);

  Population population(config.population_size);
  for (auto& ind : population) ind.chromosome = random_chromosome(forced_mask, config.n_max, rng);
  cache.fill(population);
  Fronts fronts = assign_rank_and_crowding(population);

  EvolutionResult result;
  result.initial_population = population;
  if (progress) progress(make_record(0, population, fronts));

  auto signature = front_signature(population, fronts);
  std::size_t unchanged = 0;
  std::size_t gen = 1;
  for (; gen <= config.generations; ++gen) {
    Population offspring;
    offspring.reserve(config.population_size);
    while (offspring.size() < config.population_size) {
      const std::size_t a = tournament_select(population, rng, config.tournament_size);
      const std::size_t b = tournament_select(population, rng, config.tournament_size);
      auto [c1, c2] = crossover(population[a].chromosome, population[b].chromosome, config.crossover_rate, rng);
      offspring.push_back({mutate(c1, mutation_rate, rng, config.n_max), {}, {}, 0, 0.0});
      if (offspring.size() < config.population_size)
        offspring.push_back({mutate(c2, mutation_rate, rng, config.n_max), {}, {}, 0, 0.0});
    }
    cache.fill(offspring);

    Population merged = std::move(population);
    merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                  std::make_move_iterator(offspring.end()));
    const Fronts merged_fronts = assign_rank_and_crowding(merged);

    Population next;
    next.reserve(config.population_size);
    for (const auto& front : merged_fronts) {
      if (next.size() + front.size() <= config.population_size) {
        for (std::size_t i : front) next.push_back(merged[i]);
        continue;
      }
      std::vector<std::size_t> sorted(front.begin(), front.end());
      std::stable_sort(sorted.begin(), sorted.end(),
                       [&](std::size_t x, std::size_t y) { return crowded_better(merged, x, y); });
      for (std::size_t i = 0; next.size() < config.population_size; ++i) next.push_back(merged[sorted[i]]);
      break;
    }
    population = std::move(next);
    fronts = assign_rank_and_crowding(population);
    if (progress) progress(make_record(gen, population, fronts));

    if (config.stagnation_window) {
      auto sig = front_signature(population, fronts);
      unchanged = sig == signature ? unchanged + 1 : 0;
      signature = std::move(sig);
      if (unchanged >= *config.stagnation_window) {
        ++gen;
        break;
      }
    }
  }
  result.generations_run = gen - 1;

  for (std::size_t i : fronts.front()) {
    const bool duplicate = std::any_of(result.front.begin(), result.front.end(), [&](const Individual& f) {
      return f.chromosome.genes == population[i].chromosome.genes;
    });
    if (!duplicate) result.front.push_back(population[i]);
  }
  result.final_population = std::move(population);
  result.evaluations = cache.evaluations();
  return result;
}

}  // namespace osp
