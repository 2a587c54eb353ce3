#include "osp/gdop.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace osp {

GdopMatrix gdop_matrix(const Eigen::Ref<const Eigen::Matrix<double, 3, 4>>& directions) {
  GdopMatrix b;
  b.leftCols<3>() = directions.transpose();
  b.col(3).setOnes();
  return b;
}

GdopValue gdop_from_directions(const Eigen::Ref<const Eigen::Matrix<double, 3, 4>>& directions) {
  const GdopMatrix b = gdop_matrix(directions);
  const double det = b.determinant();
  if (det == 0.0 || !std::isfinite(det)) return kInfiniteGdop;

  // B is square, so (B^T B)^-1 = B^-1 B^-T and its trace is ||B^-1||_F^2.
  const double trace_inv = b.inverse().squaredNorm();
  if (!std::isfinite(trace_inv)) return kInfiniteGdop;

  // trace(B^T B) = 8 for unit direction rows, which pins the 2-norm condition
  // number of B^T B to [trace_inv / 2, 8 * trace_inv]. Only the ambiguous band
  // needs the eigenvalues.
  if (8.0 * trace_inv > kSingularConditionNumber) {
    if (trace_inv / 2.0 > kSingularConditionNumber) return kInfiniteGdop;
    const Eigen::Matrix4d normal = b.transpose() * b;
    const Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(normal, Eigen::EigenvaluesOnly).eigenvalues();
    if (!(ev(0) > 0.0) || ev(3) / ev(0) > kSingularConditionNumber) return kInfiniteGdop;
  }
  return std::sqrt(trace_inv);
}

GdopValue gdop_of_four(const GeodeticPosition& aircraft, std::span<const EcefPosition, 4> sensors) {
  Eigen::Matrix<double, 3, 4> dirs;
  for (int i = 0; i < 4; ++i) dirs.col(i) = direction_cosines(aircraft, sensors[i]);
  return gdop_from_directions(dirs);
}

GdopValue best_gdop_from_directions(const Eigen::Ref<const Eigen::Matrix3Xd>& directions,
                                    std::size_t cap) {
  const Eigen::Index total = directions.cols();
  const Eigen::Index k =
      cap == 0 ? total : std::min<Eigen::Index>(total, static_cast<Eigen::Index>(cap));
  if (k < 4) return kInfiniteGdop;

  GdopValue best = kInfiniteGdop;
  Eigen::Matrix<double, 3, 4> dirs;
  for (Eigen::Index i = 0; i < k - 3; ++i) {
    dirs.col(0) = directions.col(i);
    for (Eigen::Index j = i + 1; j < k - 2; ++j) {
      dirs.col(1) = directions.col(j);
      for (Eigen::Index l = j + 1; l < k - 1; ++l) {
        dirs.col(2) = directions.col(l);
        for (Eigen::Index m = l + 1; m < k; ++m) {
          dirs.col(3) = directions.col(m);
          best = std::min(best, gdop_from_directions(dirs));
        }
      }
    }
  }
  return best;
}

GdopValue best_gdop_at(const GeodeticPosition& aircraft, std::span<const EcefPosition> visible_sensors,
                       SubsetStrategy strategy) {
  if (visible_sensors.size() < 4) return kInfiniteGdop;
  const EcefPosition origin = geodetic_to_ecef(aircraft);

  std::vector<std::size_t> order(visible_sensors.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> dist(visible_sensors.size());
  for (std::size_t i = 0; i < visible_sensors.size(); ++i)
    dist[i] = euclidean_distance(visible_sensors[i], origin);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });

  Eigen::Matrix3Xd dirs(3, static_cast<Eigen::Index>(order.size()));
  for (std::size_t c = 0; c < order.size(); ++c)
    dirs.col(static_cast<Eigen::Index>(c)) = direction_cosines(aircraft, visible_sensors[order[c]]);
  return best_gdop_from_directions(dirs, strategy.nearest_cap);
}

}  // namespace osp
