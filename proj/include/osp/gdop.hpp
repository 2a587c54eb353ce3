#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>

#include <Eigen/Core>

#include "osp/geo.hpp"

namespace osp {

/// Rows [b1, b2, b3, 1] for four sensors.
using GdopMatrix = Eigen::Matrix4d;

/// Dimensionless GDOP; +inf means "cannot be evaluated".
using GdopValue = double;

inline constexpr GdopValue kInfiniteGdop = std::numeric_limits<double>::infinity();

/// B^T B is treated as singular above this condition number.
inline constexpr double kSingularConditionNumber = 1e12;

struct SubsetStrategy {
  /// Only the nearest `nearest_cap` visible sensors enter the 4-subset
  /// enumeration. 0 enumerates every visible sensor.
  std::size_t nearest_cap = 12;

  static SubsetStrategy exhaustive() { return {0}; }
};

/// Builds B from four unit line-of-sight vectors stored as columns.
GdopMatrix gdop_matrix(const Eigen::Ref<const Eigen::Matrix<double, 3, 4>>& directions);

/// sqrt(trace((B^T B)^-1)) for four unit line-of-sight vectors (columns).
/// Returns kInfiniteGdop when B^T B is singular or ill-conditioned.
GdopValue gdop_from_directions(const Eigen::Ref<const Eigen::Matrix<double, 3, 4>>& directions);

/// Throws DegenerateGeometry if any sensor coincides with the aircraft.
GdopValue gdop_of_four(const GeodeticPosition& aircraft, std::span<const EcefPosition, 4> sensors);

/// Minimum GDOP over all 4-subsets of the leading `cap` columns (0 = all).
/// Columns are expected nearest-first.
GdopValue best_gdop_from_directions(const Eigen::Ref<const Eigen::Matrix3Xd>& directions,
                                    std::size_t cap);

/// Best achievable GDOP at `aircraft` given the sensors that can hear it.
/// Fewer than four sensors yields kInfiniteGdop.
GdopValue best_gdop_at(const GeodeticPosition& aircraft, std::span<const EcefPosition> visible_sensors,
                       SubsetStrategy strategy = {});

}  // namespace osp
