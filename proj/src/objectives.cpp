#include "osp/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

namespace osp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

SiteMask all_selected(std::size_t n) { return SiteMask(n, true); }

}  // namespace

void validate(const JammerModel& jammer) {
  validate(jammer.position);
  if (!(jammer.power_w > 0.0) || !(jammer.antenna_gain > 0.0) || !(jammer.transmitter_power_w > 0.0) ||
      !(jammer.transmitter_antenna_gain > 0.0))
    throw InvalidConfig("jammer powers and gains must be strictly positive");
  if (jammer.affect_rule == AffectRule::kLineOfSightAndJsr &&
      (!(jammer.jsr_threshold >= 0.0) || !(jammer.reference_signal_range_km > 0.0)))
    throw InvalidConfig("jammer JSR rule needs jsr_threshold >= 0 and reference_signal_range_km > 0");
}

void validate(const ObjectiveRequirements& req) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidConfig(std::string(name) + " must be finite and > 0");
  };
  positive(req.required_gdop, "required_gdop");
  positive(req.required_range_km, "required_range_km");
  positive(req.required_min_sensor_spacing_km, "required_min_sensor_spacing_km");
  positive(req.required_min_jammer_distance_km, "required_min_jammer_distance_km");
  positive(req.gdop_cap, "gdop_cap");
  if (req.required_max_sensors_in_jammer_los < 0)
    throw InvalidConfig("required_max_sensors_in_jammer_los must be >= 0");
  if (req.gdop_tolerance < 0 || req.range_tolerance_km < 0 || req.spacing_tolerance_km < 0 ||
      req.jammer_distance_tolerance_km < 0 || req.jammer_los_tolerance < 0)
    throw InvalidConfig("tolerances must be >= 0");
  if (!std::isfinite(req.range_cap_km)) throw InvalidConfig("range_cap_km must be finite");
}

AirspaceGrid make_grid(std::vector<GeodeticPosition> points, const ObjectiveRequirements& req) {
  AirspaceGrid grid;
  const auto m = static_cast<Eigen::Index>(points.size());
  grid.points = std::move(points);
  grid.required_gdop = Eigen::VectorXd::Constant(m, req.required_gdop);
  grid.required_range_km = Eigen::VectorXd::Constant(m, req.required_range_km);
  return grid;
}

SiteGeometry precompute_geometry(const AirspaceGrid& grid, std::span<const GeodeticPosition> sites,
                                 std::span<const JammerModel> jammers,
                                 const PropagationParams& params) {
  const auto m = static_cast<Eigen::Index>(grid.size());
  const auto n = static_cast<Eigen::Index>(sites.size());
  const auto k = static_cast<Eigen::Index>(jammers.size());

  Eigen::Matrix3Xd site_ecef(3, n);
  for (Eigen::Index i = 0; i < n; ++i) site_ecef.col(i) = geodetic_to_ecef(sites[i]);

  SiteGeometry g;
  g.point_distance_km.resize(m, n);
  g.point_directions.assign(m, Eigen::Matrix3Xd(3, n));
  g.point_los.resize(m, n);
  g.point_visible_order.resize(m);

  auto fill_rows = [&](const GeodeticPosition& origin, Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> dist,
                       Eigen::Matrix3Xd& dirs) {
    const EcefPosition o = geodetic_to_ecef(origin);
    const Eigen::Matrix3d r = ned_rotation(origin);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Vector3d v = r * (site_ecef.col(i) - o);
      const double len = v.norm();
      dist(i) = euclidean_distance(site_ecef.col(i), o) / 1000.0;
      if (len > 0.0)
        dirs.col(i) = v / len;
      else
        dirs.col(i).setZero();
    }
  };

  for (Eigen::Index j = 0; j < m; ++j) {
    const GeodeticPosition& p = grid.points[j];
    fill_rows(p, g.point_distance_km.row(j), g.point_directions[j]);
    auto& order = g.point_visible_order[j];
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool los = is_visible(p, sites[i], params);
      g.point_los(j, i) = los;
      if (los) {
        if (g.point_directions[j].col(i).isZero())
          throw DegenerateGeometry("grid point coincides with a sensor site");
        order.push_back(i);
      }
    }
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      const double da = g.point_distance_km(j, a);
      const double db = g.point_distance_km(j, b);
      if (da != db) return da < db;
      const auto& sa = sites[a];
      const auto& sb = sites[b];
      return std::tie(sa.latitude_deg, sa.longitude_deg, sa.altitude_m) <
             std::tie(sb.latitude_deg, sb.longitude_deg, sb.altitude_m);
    });
  }

  g.jammer_distance_km.resize(k, n);
  g.jammer_directions.assign(k, Eigen::Matrix3Xd(3, n));
  g.jammer_los.resize(k, n);
  g.jammer_affects.resize(k, n);
  for (Eigen::Index l = 0; l < k; ++l) {
    const JammerModel& jam = jammers[l];
    fill_rows(jam.position, g.jammer_distance_km.row(l), g.jammer_directions[l]);
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool los = is_visible(jam.position, sites[i], params);
      g.jammer_los(l, i) = los;
      bool hit = los;
      if (hit && jam.affect_rule == AffectRule::kLineOfSightAndJsr) {
        hit = jsr_ratio(jam.power_w * jam.antenna_gain,
                        jam.transmitter_power_w * jam.transmitter_antenna_gain,
                        jam.reference_signal_range_km, g.jammer_distance_km(l, i)) >= jam.jsr_threshold;
      }
      g.jammer_affects(l, i) = hit;
    }
  }

  g.site_distance_km.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g.site_distance_km(i, i) = 0.0;
    for (Eigen::Index c = i + 1; c < n; ++c) {
      const double d = euclidean_distance(site_ecef.col(i), site_ecef.col(c)) / 1000.0;
      g.site_distance_km(i, c) = d;
      g.site_distance_km(c, i) = d;
    }
  }
  return g;
}

Eigen::VectorXd achieved_gdop(const SiteGeometry& geometry, const SiteMask& selection,
                              std::size_t subset_cap) {
  const auto m = static_cast<Eigen::Index>(geometry.point_visible_order.size());
  Eigen::VectorXd out(m);
  Eigen::Matrix3Xd buffer;
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto& order = geometry.point_visible_order[j];
    const auto& dirs = geometry.point_directions[j];
    buffer.resize(3, static_cast<Eigen::Index>(order.size()));
    Eigen::Index count = 0;
    for (Eigen::Index i : order) {
      if (!selection[static_cast<std::size_t>(i)]) continue;
      buffer.col(count++) = dirs.col(i);
      if (subset_cap != 0 && static_cast<std::size_t>(count) == subset_cap) break;
    }
    out(j) = best_gdop_from_directions(buffer.leftCols(count), 0);
  }
  return out;
}

Eigen::VectorXd achieved_range_km(const SiteGeometry& geometry, const SiteMask& selection) {
  const auto m = static_cast<Eigen::Index>(geometry.point_visible_order.size());
  Eigen::VectorXd out = Eigen::VectorXd::Constant(m, kInf);
  for (Eigen::Index j = 0; j < m; ++j) {
    int seen = 0;
    for (Eigen::Index i : geometry.point_visible_order[j]) {
      if (!selection[static_cast<std::size_t>(i)]) continue;
      if (++seen == 2) {
        out(j) = geometry.point_distance_km(j, i);
        break;
      }
    }
  }
  return out;
}

Eigen::VectorXi visible_count(const SiteGeometry& geometry, const SiteMask& selection) {
  const auto m = static_cast<Eigen::Index>(geometry.point_visible_order.size());
  Eigen::VectorXi out = Eigen::VectorXi::Zero(m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i : geometry.point_visible_order[j])
      if (selection[static_cast<std::size_t>(i)]) ++out(j);
  return out;
}

double shortfall_msd(const Eigen::Ref<const Eigen::VectorXd>& required,
                     const Eigen::Ref<const Eigen::VectorXd>& achieved, double cap) {
  if (required.size() == 0) throw InvalidInput("objective over an empty grid");
  if (required.size() != achieved.size()) throw InvalidInput("required/achieved size mismatch");
  double sum = 0.0;
  for (Eigen::Index j = 0; j < required.size(); ++j) {
    const double excess = std::max(0.0, std::min(achieved(j), cap) - required(j));
    sum += excess * excess;
  }
  return sum / static_cast<double>(required.size());
}

double of1_gdop_msd(const AirspaceGrid& grid, const Eigen::Ref<const Eigen::VectorXd>& achieved,
                    const ObjectiveRequirements& req) {
  return shortfall_msd(grid.required_gdop, achieved, req.gdop_cap);
}

double of2_range_msd(const AirspaceGrid& grid, const Eigen::Ref<const Eigen::VectorXd>& achieved,
                     double range_cap_km) {
  return shortfall_msd(grid.required_range_km, achieved, range_cap_km);
}

double spacing_msd(const Eigen::Ref<const Eigen::MatrixXd>& pairwise_km, double target_km) {
  const Eigen::Index n = pairwise_km.rows();
  if (n < 2) throw InvalidInput("spacing objective needs at least two sensors");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double nearest = kInf;
    for (Eigen::Index c = 0; c < n; ++c)
      if (c != i) nearest = std::min(nearest, pairwise_km(i, c));
    const double shortfall = std::min(0.0, nearest - target_km);
    sum += shortfall * shortfall;
  }
  return sum / static_cast<double>(n);
}

double jammer_distance_msd(const Eigen::Ref<const Eigen::MatrixXd>& jammer_to_sensor_km,
                           const Eigen::Ref<const BoolArray>& los, double target_km) {
  const Eigen::Index k = jammer_to_sensor_km.rows();
  if (k == 0) throw InvalidInput("jammer objective needs at least one jammer");
  double sum = 0.0;
  for (Eigen::Index l = 0; l < k; ++l) {
    if (!los.row(l).any()) continue;
    const double shortfall = std::min(0.0, jammer_to_sensor_km.row(l).minCoeff() - target_km);
    sum += shortfall * shortfall;
  }
  return sum / static_cast<double>(k);
}

double jammer_exposure_msd(const Eigen::Ref<const BoolArray>& affects, int max_allowed) {
  const Eigen::Index k = affects.rows();
  if (k == 0) throw InvalidInput("jammer objective needs at least one jammer");
  double sum = 0.0;
  for (Eigen::Index l = 0; l < k; ++l) {
    const double excess = std::max<Eigen::Index>(0, affects.row(l).count() - max_allowed);
    sum += excess * excess;
  }
  return sum / static_cast<double>(k);
}

double of1_gdop_msd(const AirspaceGrid& grid, std::span<const GeodeticPosition> sensors,
                    const ObjectiveRequirements& req, const PropagationParams& params) {
  const SiteGeometry g = precompute_geometry(grid, sensors, {}, params);
  return of1_gdop_msd(grid, achieved_gdop(g, all_selected(sensors.size()), req.gdop_subset_cap), req);
}

double of2_range_msd(const AirspaceGrid& grid, std::span<const GeodeticPosition> sensors,
                     double range_cap_km, const PropagationParams& params) {
  if (!(range_cap_km > 0.0)) throw InvalidInput("range cap must be positive");
  const SiteGeometry g = precompute_geometry(grid, sensors, {}, params);
  return of2_range_msd(grid, achieved_range_km(g, all_selected(sensors.size())), range_cap_km);
}

double of3_direction1_spacing(const Eigen::Ref<const Eigen::Matrix3Xd>& sensors_ecef,
                              const ObjectiveRequirements& req) {
  const Eigen::Index n = sensors_ecef.cols();
  if (n < 2) throw InvalidInput("spacing objective needs at least two sensors");
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index c = 0; c < n; ++c)
      d(i, c) = euclidean_distance(sensors_ecef.col(i), sensors_ecef.col(c)) / 1000.0;
  return spacing_msd(d, req.required_min_sensor_spacing_km);
}

double of3_direction2_jammer_distance(std::span<const GeodeticPosition> sensors,
                                      std::span<const JammerModel> jammers,
                                      const ObjectiveRequirements& req,
                                      const PropagationParams& params) {
  if (sensors.empty() || jammers.empty()) throw InvalidInput("jammer objective needs sensors and jammers");
  const SiteGeometry g = precompute_geometry(AirspaceGrid{}, sensors, jammers, params);
  return jammer_distance_msd(g.jammer_distance_km, g.jammer_los, req.required_min_jammer_distance_km);
}

double of3_direction3_sensors_in_range(std::span<const GeodeticPosition> sensors,
                                       std::span<const JammerModel> jammers,
                                       const ObjectiveRequirements& req,
                                       const PropagationParams& params) {
  if (sensors.empty() || jammers.empty()) throw InvalidInput("jammer objective needs sensors and jammers");
  const SiteGeometry g = precompute_geometry(AirspaceGrid{}, sensors, jammers, params);
  return jammer_exposure_msd(g.jammer_affects, req.required_max_sensors_in_jammer_los);
}

double jsr_ratio(double jammer_power_gain, double transmitter_power_gain, double transmitter_distance,
                 double jammer_distance) {
  if (jammer_distance == 0.0) return kInf;
  return jammer_power_gain * transmitter_distance * transmitter_distance /
         (transmitter_power_gain * jammer_distance * jammer_distance);
}

double jsr(const JammerModel& jammer, const EcefPosition& sensor, const EcefPosition& transmitter) {
  return jsr_ratio(jammer.power_w * jammer.antenna_gain,
                   jammer.transmitter_power_w * jammer.transmitter_antenna_gain,
                   euclidean_distance(transmitter, sensor),
                   euclidean_distance(geodetic_to_ecef(jammer.position), sensor));
}

bool jammer_affects(const JammerModel& jammer, const GeodeticPosition& sensor,
                    const PropagationParams& params) {
  const GeodeticPosition one[] = {sensor};
  const JammerModel jam[] = {jammer};
  return precompute_geometry(AirspaceGrid{}, one, jam, params).jammer_affects(0, 0);
}

void validate_of3_weights(const Eigen::Ref<const Eigen::Vector3d>& weights) {
  if ((weights.array() < 0.0).any() || !weights.allFinite())
    throw InvalidConfig("OF3 direction weights must be non-negative");
  if (std::abs(weights.sum() - 1.0) > 1e-9) throw InvalidConfig("OF3 direction weights must sum to 1");
}

double of3_combined(const Eigen::Ref<const Eigen::Vector3d>& normalized_directions,
                    const Eigen::Ref<const Eigen::Vector3d>& weights) {
  validate_of3_weights(weights);
  return normalized_directions.dot(weights);
}

double knapsack_penalty(std::size_t selected_count, std::size_t total_cells) {
  if (total_cells == 0) throw InvalidConfig("knapsack penalty needs R > 0");
  if (selected_count > total_cells) throw InvalidInput("more selected sites than cells");
  const double ratio = static_cast<double>(selected_count) / static_cast<double>(total_cells);
  return 0.5 * ratio * ratio;
}

double normalize_score(double score, double running_min, double running_max) {
  if (!(running_max > running_min)) return 0.0;
  return std::clamp((score - running_min) / (running_max - running_min), 0.0, 1.0);
}

}  // namespace osp
