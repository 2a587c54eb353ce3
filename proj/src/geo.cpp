#include "osp/geo.hpp"

#include <string>

namespace osp {

void validate(const GeodeticPosition& p) {
  if (!std::isfinite(p.latitude_deg) || p.latitude_deg < -90.0 || p.latitude_deg > 90.0)
    throw InvalidInput("latitude out of [-90, 90]: " + std::to_string(p.latitude_deg));
  if (!std::isfinite(p.longitude_deg) || p.longitude_deg < -180.0 || p.longitude_deg > 180.0)
    throw InvalidInput("longitude out of [-180, 180]: " + std::to_string(p.longitude_deg));
  if (!std::isfinite(p.altitude_m) || p.altitude_m < 0.0)
    throw InvalidInput("altitude must be a finite value >= 0: " + std::to_string(p.altitude_m));
}

void validate(const PropagationParams& params) {
  if (!(params.effective_earth_radius_factor > 0.0) ||
      !std::isfinite(params.effective_earth_radius_factor))
    throw InvalidConfig("effective_earth_radius_factor must be > 0");
  if (!(params.horizon_coefficient > 0.0)) throw InvalidConfig("horizon_coefficient must be > 0");
  if (!(params.los_coefficient > 0.0)) throw InvalidConfig("los_coefficient must be > 0");
}

double radio_horizon_km(double h1_m, double h2_m, const PropagationParams& params) {
  return params.horizon_coefficient * std::sqrt(params.effective_earth_radius_factor) *
         (std::sqrt(h1_m) + std::sqrt(h2_m));
}

double ground_distance_km(const GeodeticPosition& a, const GeodeticPosition& b) {
  const double lat1 = detail::deg_to_rad(a.latitude_deg);
  const double lat2 = detail::deg_to_rad(b.latitude_deg);
  const double dlat = lat2 - lat1;
  const double dlon = detail::deg_to_rad(b.longitude_deg - a.longitude_deg);
  const double s1 = std::sin(dlat / 2.0);
  const double s2 = std::sin(dlon / 2.0);
  const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
  return 2.0 * wgs84::kMeanRadius / 1000.0 * std::asin(std::min(1.0, std::sqrt(h)));
}

bool is_visible(const GeodeticPosition& transmitter, const GeodeticPosition& receiver,
                const PropagationParams& params) {
  const double d = ground_distance_km(transmitter, receiver);
  if (receiver.altitude_m > 0.0)
    return d <= radio_horizon_km(transmitter.altitude_m, receiver.altitude_m, params);
  return transmitter.altitude_m >=
         params.los_coefficient * d * d / params.effective_earth_radius_factor;
}

double toa(const GeodeticPosition& transmitter, const GeodeticPosition& sensor, double tau_s,
           double noise_std_s, std::mt19937_64& rng) {
  if (!(noise_std_s >= 0.0)) throw InvalidInput("toa: noise_std_s must be >= 0");
  const double range = euclidean_distance(geodetic_to_ecef(transmitter), geodetic_to_ecef(sensor));
  double t = range / kSpeedOfLight + tau_s;
  if (noise_std_s > 0.0) t += std::normal_distribution<double>(0.0, noise_std_s)(rng);
  return t;
}

double toa(const GeodeticPosition& transmitter, const GeodeticPosition& sensor, double tau_s,
           double noise_std_s, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  return toa(transmitter, sensor, tau_s, noise_std_s, rng);
}

}  // namespace osp
