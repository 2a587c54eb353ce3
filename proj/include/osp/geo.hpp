#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Core>

#include "osp/error.hpp"

namespace osp {

namespace wgs84 {
inline constexpr double kSemiMajorAxis = 6378137.0;
inline constexpr double kFlattening = 1.0 / 298.257223563;
inline constexpr double kSemiMinorAxis = kSemiMajorAxis * (1.0 - kFlattening);
inline constexpr double kEccentricitySq = kFlattening * (2.0 - kFlattening);
inline constexpr double kSecondEccentricitySq = kEccentricitySq / (1.0 - kEccentricitySq);
/// IUGG mean radius R1, used for great-circle ground distances.
inline constexpr double kMeanRadius = 6371008.8;
}  // namespace wgs84

inline constexpr double kSpeedOfLight = 299792458.0;

template <typename Scalar>
struct GeodeticPositionT {
  Scalar latitude_deg{0};
  Scalar longitude_deg{0};
  Scalar altitude_m{0};

  friend bool operator==(const GeodeticPositionT&, const GeodeticPositionT&) = default;
};

using GeodeticPosition = GeodeticPositionT<double>;

template <typename Scalar>
using EcefPositionT = Eigen::Matrix<Scalar, 3, 1>;
using EcefPosition = EcefPositionT<double>;

template <typename Scalar>
using NedVectorT = Eigen::Matrix<Scalar, 3, 1>;
using NedVector = NedVectorT<double>;

struct PropagationParams {
  /// k_e, effective earth-radius factor.
  double effective_earth_radius_factor = 4.0 / 3.0;
  /// km per sqrt(m) in the radio-horizon formula.
  double horizon_coefficient = 3.57;
  /// m per km^2 in the transmitter-height visibility inequality.
  double los_coefficient = 0.0785;
};

/// Throws InvalidInput when latitude/longitude are out of range, altitude is
/// negative, or any field is not finite.
void validate(const GeodeticPosition& p);
/// Throws InvalidConfig when k_e or the coefficients are not strictly positive.
void validate(const PropagationParams& params);

namespace detail {
template <typename Scalar>
constexpr Scalar deg_to_rad(Scalar deg) {
  return deg * Scalar(std::numbers::pi / 180.0);
}
template <typename Scalar>
constexpr Scalar rad_to_deg(Scalar rad) {
  return rad * Scalar(180.0 / std::numbers::pi);
}
}  // namespace detail

template <typename Scalar>
EcefPositionT<Scalar> geodetic_to_ecef(const GeodeticPositionT<Scalar>& p) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const Scalar a = Scalar(wgs84::kSemiMajorAxis);
  const Scalar e2 = Scalar(wgs84::kEccentricitySq);
  const Scalar lat = detail::deg_to_rad(p.latitude_deg);
  const Scalar lon = detail::deg_to_rad(p.longitude_deg);
  const Scalar slat = sin(lat);
  const Scalar clat = cos(lat);
  // prime vertical radius of curvature
  const Scalar n = a / sqrt(Scalar(1) - e2 * slat * slat);
  return {(n + p.altitude_m) * clat * cos(lon),
          (n + p.altitude_m) * clat * sin(lon),
          (n * (Scalar(1) - e2) + p.altitude_m) * slat};
}

/// Inverse of geodetic_to_ecef. Longitude is reported as 0 on the polar axis.
/// Throws InvalidInput for the Earth's center.
template <typename Derived>
GeodeticPositionT<typename Derived::Scalar> ecef_to_geodetic(const Eigen::MatrixBase<Derived>& e) {
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3);
  using Scalar = typename Derived::Scalar;
  using std::atan2;
  using std::cos;
  using std::sin;
  using std::sqrt;
  const Scalar a = Scalar(wgs84::kSemiMajorAxis);
  const Scalar b = Scalar(wgs84::kSemiMinorAxis);
  const Scalar e2 = Scalar(wgs84::kEccentricitySq);
  const Scalar ep2 = Scalar(wgs84::kSecondEccentricitySq);

  const Scalar x = e(0), y = e(1), z = e(2);
  const Scalar p = sqrt(x * x + y * y);
  if (p == Scalar(0)) {
    if (z == Scalar(0)) throw InvalidInput("ecef_to_geodetic: point at the Earth's center");
    return {z > 0 ? Scalar(90) : Scalar(-90), Scalar(0), (z > 0 ? z : -z) - b};
  }

  // Bowring's parametric-latitude iteration; converges to machine precision in
  // a handful of steps for any point outside the core.
  Scalar beta = atan2(a * z, b * p);
  Scalar lat = 0;
  for (int i = 0; i < 5; ++i) {
    const Scalar sb = sin(beta), cb = cos(beta);
    lat = atan2(z + ep2 * b * sb * sb * sb, p - e2 * a * cb * cb * cb);
    beta = atan2((Scalar(1) - Scalar(wgs84::kFlattening)) * sin(lat), cos(lat));
  }
  const Scalar slat = sin(lat);
  const Scalar clat = cos(lat);
  const Scalar h = p * clat + z * slat - a * sqrt(Scalar(1) - e2 * slat * slat);
  return {detail::rad_to_deg(lat), detail::rad_to_deg(atan2(y, x)), h};
}

/// ECEF -> NED rotation at the given point.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> ned_rotation(const GeodeticPositionT<Scalar>& p) {
  using std::cos;
  using std::sin;
  const Scalar lat = detail::deg_to_rad(p.latitude_deg);
  const Scalar lon = detail::deg_to_rad(p.longitude_deg);
  const Scalar sp = sin(lat), cp = cos(lat), sl = sin(lon), cl = cos(lon);
  Eigen::Matrix<Scalar, 3, 3> r;
  r << -sp * cl, -sp * sl, cp,
       -sl,       cl,      Scalar(0),
       -cp * cl, -cp * sl, -sp;
  return r;
}

/// Vector from the aircraft to the sensor, expressed in the aircraft's NED frame.
template <typename Scalar, typename Derived>
NedVectorT<Scalar> ned_vector(const GeodeticPositionT<Scalar>& aircraft,
                              const Eigen::MatrixBase<Derived>& sensor) {
  return ned_rotation(aircraft) * (sensor - geodetic_to_ecef(aircraft));
}

/// Unit line-of-sight vector in NED. Throws DegenerateGeometry when the sensor
/// coincides with the aircraft.
template <typename Scalar, typename Derived>
NedVectorT<Scalar> direction_cosines(const GeodeticPositionT<Scalar>& aircraft,
                                     const Eigen::MatrixBase<Derived>& sensor) {
  const NedVectorT<Scalar> v = ned_vector(aircraft, sensor);
  const Scalar n = v.norm();
  if (!(n > Scalar(0))) throw DegenerateGeometry("direction_cosines: sensor coincides with aircraft");
  return v / n;
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar euclidean_distance(const Eigen::MatrixBase<DerivedA>& a,
                                             const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).norm();
}

/// r0 = c * sqrt(k_e) * (sqrt(h1) + sqrt(h2)), heights in m, result in km.
double radio_horizon_km(double h1_m, double h2_m, const PropagationParams& params = {});

/// Haversine distance on the mean-radius sphere, in km. Altitudes are ignored.
double ground_distance_km(const GeodeticPosition& a, const GeodeticPosition& b);

/// Radio line of sight from transmitter to receiver. With a ground-level
/// receiver this is h1 >= 0.0785 * d^2 / k_e (d in km, h1 in m); a raised
/// receiver antenna extends reach to d <= r0(h1, h2).
bool is_visible(const GeodeticPosition& transmitter, const GeodeticPosition& receiver,
                const PropagationParams& params = {});

/// Time of arrival (s): geometric delay + tau + N(0, noise_std_s^2).
double toa(const GeodeticPosition& transmitter, const GeodeticPosition& sensor, double tau_s,
           double noise_std_s, std::mt19937_64& rng);
double toa(const GeodeticPosition& transmitter, const GeodeticPosition& sensor, double tau_s,
           double noise_std_s, std::uint64_t rng_seed);

}  // namespace osp
