#include "osp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace osp {

namespace {

bool lon_lat_less(const GeodeticPosition& a, const GeodeticPosition& b) {
  return std::tie(a.longitude_deg, a.latitude_deg, a.altitude_m) <
         std::tie(b.longitude_deg, b.latitude_deg, b.altitude_m);
}

/// Cell centers of a rows x cols split of the area, at the given altitude.
std::vector<GeodeticPosition> cell_centers(const AreaBounds& bounds, std::size_t count, double altitude_m) {
  const auto [rows, cols] = lattice_shape(count);
  const double dlat = (bounds.lat_up - bounds.lat_low) / static_cast<double>(rows);
  const double dlon = (bounds.lon_up - bounds.lon_low) / static_cast<double>(cols);
  std::vector<GeodeticPosition> out;
  out.reserve(count);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r)
      out.push_back({bounds.lat_low + (static_cast<double>(r) + 0.5) * dlat,
                     bounds.lon_low + (static_cast<double>(c) + 0.5) * dlon, altitude_m});
  return out;
}

std::vector<GeodeticPosition> uniform_sites(const AreaBounds& bounds, std::size_t count, std::mt19937_64& rng,
                                            double altitude_m) {
  std::uniform_real_distribution<double> lat(bounds.lat_low, bounds.lat_up);
  std::uniform_real_distribution<double> lon(bounds.lon_low, bounds.lon_up);
  std::vector<GeodeticPosition> out;
  std::set<std::pair<double, double>> seen;
  while (out.size() < count) {
    const double la = lat(rng);
    const double lo = lon(rng);
    if (!seen.emplace(la, lo).second) continue;
    out.push_back({la, lo, altitude_m});
  }
  return out;
}

std::string site_id(char prefix, std::size_t i) {
  std::ostringstream s;
  s << prefix;
  s.width(4);
  s.fill('0');
  s << i;
  return s.str();
}

void finish_problem(PlacementProblem& p, const ScenarioConfig& config, const GaConfig& ga,
                    std::size_t deployed, std::size_t cells_override = 0) {
  const std::size_t base = config.candidates.count + deployed;
  p.penalty_cells = std::max(base, cells_override);
  if (ga.n_max) {
    p.selection_cap = deployed + *ga.n_max;
    p.max_selectable = *p.selection_cap;
  } else {
    p.selection_cap.reset();
    p.max_selectable = base;
  }
  p.max_selectable = std::max(p.max_selectable, cells_override);
  p.requirements = config.requirements;
  p.propagation = config.propagation;
  p.of3_weights = config.of3_weights;
  p.pareto_weight_a = ga.pareto_weight_a;
  p.range_cap_km = config.requirements.range_cap_km > 0.0 ? config.requirements.range_cap_km
                                                          : config.area.diagonal_km();
  precompute(p);
}

}  // namespace

double AreaBounds::diagonal_km() const {
  return ground_distance_km({lat_low, lon_low, 0.0}, {lat_up, lon_up, 0.0});
}

void validate(const AreaBounds& b) {
  if (!(b.lat_low < b.lat_up) || !(b.lon_low < b.lon_up)) throw InvalidConfig("area bounds are degenerate");
  if (b.lat_low < -90.0 || b.lat_up > 90.0 || b.lon_low < -180.0 || b.lon_up > 180.0)
    throw InvalidConfig("area bounds outside geodetic range");
  if (b.altitude_levels_m.empty()) throw InvalidConfig("area needs at least one altitude level");
  for (std::size_t i = 0; i < b.altitude_levels_m.size(); ++i) {
    if (!(b.altitude_levels_m[i] > 0.0)) throw InvalidConfig("altitude levels must be > 0");
    if (i > 0 && !(b.altitude_levels_m[i] > b.altitude_levels_m[i - 1]))
      throw InvalidConfig("altitude levels must be strictly increasing");
  }
}

void validate(const ScenarioConfig& c) {
  validate(c.area);
  if (c.grid_lat_count < 2 || c.grid_lon_count < 2) throw InvalidConfig("grid counts must be >= 2");
  if (c.candidates.count < 1) throw InvalidConfig("candidate count must be >= 1");
  if (c.candidates.antenna_height_m < 0.0) throw InvalidConfig("antenna height must be >= 0");
  if (c.jammers.count > 0) {
    if (c.jammers.heights_m.empty()) throw InvalidConfig("jammer heights must not be empty");
    if (c.jammers.count % c.jammers.heights_m.size() != 0)
      throw InvalidConfig("jammer count must be divisible by the number of heights");
    for (double h : c.jammers.heights_m)
      if (!(h >= 0.0)) throw InvalidConfig("jammer heights must be >= 0");
    JammerModel probe = c.jammers.prototype;
    probe.position = {c.area.lat_low, c.area.lon_low, 0.0};
    validate(probe);
  }
  validate(c.propagation);
  validate(c.requirements);
  validate_of3_weights(c.of3_weights);
}

std::size_t PlacementProblem::forced_count() const {
  return static_cast<std::size_t>(std::count(forced_mask.begin(), forced_mask.end(), true));
}

std::pair<std::size_t, std::size_t> lattice_shape(std::size_t count) {
  if (count == 0) return {0, 0};
  std::size_t rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(count)));
  while (rows * rows > count) --rows;
  while (count % rows != 0) --rows;
  return {rows, count / rows};
}

AirspaceGrid sample_grid(const AreaBounds& bounds, std::size_t lat_count, std::size_t lon_count,
                         const ObjectiveRequirements& req) {
  validate(bounds);
  if (lat_count < 2 || lon_count < 2) throw InvalidConfig("grid counts must be >= 2");
  std::vector<GeodeticPosition> points;
  points.reserve(lat_count * lon_count * bounds.altitude_levels_m.size());
  const double dlat = (bounds.lat_up - bounds.lat_low) / static_cast<double>(lat_count - 1);
  const double dlon = (bounds.lon_up - bounds.lon_low) / static_cast<double>(lon_count - 1);
  for (std::size_t c = 0; c < lon_count; ++c) {
    // pin the last row/column to the bound so rounding never leaves the area
    const double lon = c + 1 == lon_count ? bounds.lon_up : bounds.lon_low + static_cast<double>(c) * dlon;
    for (std::size_t r = 0; r < lat_count; ++r) {
      const double lat = r + 1 == lat_count ? bounds.lat_up : bounds.lat_low + static_cast<double>(r) * dlat;
      for (double alt : bounds.altitude_levels_m) points.push_back({lat, lon, alt});
    }
  }
  std::stable_sort(points.begin(), points.end(), lon_lat_less);
  return make_grid(std::move(points), req);
}

std::vector<GeodeticPosition> generate_candidates(const AreaBounds& bounds, const CandidateSpec& spec) {
  validate(bounds);
  if (spec.count < 1) throw InvalidConfig("candidate count must be >= 1");
  std::vector<GeodeticPosition> sites;
  if (spec.pattern == SitePattern::kLattice) {
    sites = cell_centers(bounds, spec.count, spec.antenna_height_m);
  } else {
    std::mt19937_64 rng(spec.seed);
    sites = uniform_sites(bounds, spec.count, rng, spec.antenna_height_m);
  }
  std::stable_sort(sites.begin(), sites.end(), lon_lat_less);
  return sites;
}

std::vector<JammerModel> generate_jammers(const AreaBounds& bounds, const JammerSpec& spec) {
  validate(bounds);
  std::vector<JammerModel> out;
  if (spec.count == 0) return out;
  if (spec.heights_m.empty() || spec.count % spec.heights_m.size() != 0)
    throw InvalidConfig("jammer count must be divisible by the number of heights");
  const std::size_t per_level = spec.count / spec.heights_m.size();
  std::mt19937_64 rng(spec.seed);
  for (double h : spec.heights_m) {
    const auto positions = spec.pattern == SitePattern::kLattice ? cell_centers(bounds, per_level, h)
                                                                 : uniform_sites(bounds, per_level, rng, h);
    for (const auto& p : positions) {
      JammerModel j = spec.prototype;
      j.position = p;
      out.push_back(j);
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const JammerModel& a, const JammerModel& b) { return lon_lat_less(a.position, b.position); });
  return out;
}

NormalizationBounds normalization_bounds(const AirspaceGrid& grid, const ObjectiveRequirements& req,
                                         double range_cap_km, std::size_t max_selectable) {
  NormalizationBounds b;
  b.min.setZero();
  if (grid.size() > 0) {
    b.max(0) = shortfall_msd(grid.required_gdop, Eigen::VectorXd::Constant(grid.required_gdop.size(), req.gdop_cap),
                             req.gdop_cap);
    b.max(1) = shortfall_msd(grid.required_range_km,
                             Eigen::VectorXd::Constant(grid.required_range_km.size(), range_cap_km), range_cap_km);
  } else {
    b.max(0) = b.max(1) = 0.0;
  }
  b.max(2) = req.required_min_sensor_spacing_km * req.required_min_sensor_spacing_km;
  b.max(3) = req.required_min_jammer_distance_km * req.required_min_jammer_distance_km;
  const double excess =
      std::max(0.0, static_cast<double>(max_selectable) - static_cast<double>(req.required_max_sensors_in_jammer_los));
  b.max(4) = excess * excess;
  return b;
}

void precompute(PlacementProblem& problem) {
  if (problem.forced_mask.size() != problem.sites.size())
    throw InvalidInput("forced mask length differs from the site list");
  problem.geometry = precompute_geometry(problem.grid, problem.sites, problem.jammers, problem.propagation);
  problem.bounds =
      normalization_bounds(problem.grid, problem.requirements, problem.range_cap_km, problem.max_selectable);
}

PlacementProblem build_scenario1(const ScenarioConfig& config, const GaConfig& ga) {
  return build_scenario2(config, ga, {});
}

PlacementProblem build_scenario2(const ScenarioConfig& config, const GaConfig& ga,
                                 std::span<const SensorRecord> deployed) {
  validate(config);
  validate(ga);
  PlacementProblem p;
  p.grid = sample_grid(config.area, config.grid_lat_count, config.grid_lon_count, config.requirements);
  p.sites = generate_candidates(config.area, config.candidates);
  for (std::size_t i = 0; i < p.sites.size(); ++i) p.site_ids.push_back(site_id('C', i));
  p.forced_mask.assign(p.sites.size(), false);
  p.jammers = generate_jammers(config.area, config.jammers);

  std::size_t kept = 0;
  std::vector<GeodeticPosition> seen;
  for (const auto& rec : deployed) {
    validate(rec.position);
    if (std::find(seen.begin(), seen.end(), rec.position) != seen.end()) {
      p.warnings.push_back("deployed sensor '" + rec.id + "' duplicates an earlier row; dropped");
      continue;
    }
    seen.push_back(rec.position);
    if (!config.area.contains(rec.position))
      p.warnings.push_back("deployed sensor '" + rec.id + "' lies outside the area bounds; kept");
    p.sites.push_back(rec.position);
    p.site_ids.push_back(rec.id.empty() ? site_id('D', kept) : rec.id);
    p.forced_mask.push_back(true);
    ++kept;
  }
  if (ga.n_max && kept + *ga.n_max > p.sites.size())
    p.warnings.push_back("n_max exceeds the number of free candidate sites");
  finish_problem(p, config, ga, kept);
  return p;
}

PlacementProblem build_evaluation_problem(const ScenarioConfig& config, const GaConfig& ga,
                                          std::span<const SensorRecord> sensors) {
  validate(config);
  PlacementProblem p;
  p.grid = sample_grid(config.area, config.grid_lat_count, config.grid_lon_count, config.requirements);
  p.jammers = generate_jammers(config.area, config.jammers);
  std::size_t forced = 0;
  for (const auto& rec : sensors) {
    validate(rec.position);
    p.sites.push_back(rec.position);
    p.site_ids.push_back(rec.id);
    p.forced_mask.push_back(rec.forced);
    if (rec.forced) ++forced;
  }
  finish_problem(p, config, ga, forced, sensors.size());
  return p;
}

ObjectiveScores evaluate_scores(const PlacementProblem& problem, const SiteMask& selection) {
  if (selection.size() != problem.site_count())
    throw InvalidInput("selection length differs from the number of sites");
  const SiteGeometry& g = problem.geometry;
  const ObjectiveRequirements& req = problem.requirements;

  std::vector<Eigen::Index> idx;
  ObjectiveScores s;
  for (std::size_t i = 0; i < selection.size(); ++i) {
    if (!selection[i]) continue;
    idx.push_back(static_cast<Eigen::Index>(i));
    if (problem.forced_mask[i]) ++s.forced;
  }
  s.selected = idx.size();

  s.of1 = of1_gdop_msd(problem.grid, achieved_gdop(g, selection, req.gdop_subset_cap), req);
  s.of2 = of2_range_msd(problem.grid, achieved_range_km(g, selection), problem.range_cap_km);

  const bool have_jammers = !problem.jammers.empty() && !idx.empty();
  s.of3_components(0) =
      idx.size() >= 2 ? spacing_msd(g.site_distance_km(idx, idx), req.required_min_sensor_spacing_km) : 0.0;
  s.of3_components(1) = have_jammers ? jammer_distance_msd(g.jammer_distance_km(Eigen::all, idx),
                                                           g.jammer_los(Eigen::all, idx),
                                                           req.required_min_jammer_distance_km)
                                     : 0.0;
  s.of3_components(2) =
      have_jammers ? jammer_exposure_msd(g.jammer_affects(Eigen::all, idx), req.required_max_sensors_in_jammer_los)
                   : 0.0;

  const auto& b = problem.bounds;
  for (int c = 0; c < 3; ++c)
    s.of3_normalized_components(c) = normalize_score(s.of3_components(c), b.min(2 + c), b.max(2 + c));
  s.of3 = of3_combined(s.of3_normalized_components, problem.of3_weights);

  s.penalty = knapsack_penalty(s.selected, problem.penalty_cells);
  s.normalized << normalize_score(s.of1, b.min(0), b.max(0)), normalize_score(s.of2, b.min(1), b.max(1)),
      normalize_score(s.of3, 0.0, 1.0);
  for (int c = 0; c < 3; ++c) s.fitness(c) = weighted_fitness(s.normalized(c), s.penalty, problem.pareto_weight_a);
  return s;
}

}  // namespace osp
