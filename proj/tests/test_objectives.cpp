#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "osp/objectives.hpp"

using namespace osp;

namespace {

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;
constexpr double kInf = std::numeric_limits<double>::infinity();

AirspaceGrid single_point_grid(const GeodeticPosition& p, const ObjectiveRequirements& req) {
  return make_grid({p}, req);
}

// Ring of ground sensors around (48, 7).
std::vector<GeodeticPosition> ring(double radius_deg, int count) {
  std::vector<GeodeticPosition> out;
  for (int i = 0; i < count; ++i) {
    const double t = 2.0 * 3.14159265358979 * i / count;
    out.push_back({48.0 + radius_deg * std::cos(t), 7.0 + 1.5 * radius_deg * std::sin(t), 0.0});
  }
  return out;
}

}  // namespace

TEST_SUITE("objectives") {
  TEST_CASE("shortfall MSD") {
    Eigen::VectorXd req(1), ach(1);
    req << 10.0;
    ach << 12.0;
    CHECK(shortfall_msd(req, ach, 100.0) == 4.0);
    ach << 10.0;
    CHECK(shortfall_msd(req, ach, 100.0) == 0.0);
    ach << 3.0;
    CHECK(shortfall_msd(req, ach, 100.0) == 0.0);
    ach << kInf;
    CHECK(shortfall_msd(req, ach, 100.0) == 90.0 * 90.0);

    Eigen::VectorXd r2(1), a2(1);
    r2 << 100.0;
    a2 << 120.0;
    CHECK(shortfall_msd(r2, a2, 500.0) == 400.0);

    CHECK_THROWS_AS(shortfall_msd(Eigen::VectorXd(), Eigen::VectorXd(), 1.0), InvalidInput);
  }

  TEST_CASE("OF1 is zero when every point meets its GDOP requirement") {
    ObjectiveRequirements req;
    const GeodeticPosition aircraft{48.0, 7.0, 10000.0};
    auto sensors = ring(0.4, 6);
    sensors.push_back({48.0, 7.0, 0.0});  // equal elevations alone would be degenerate
    std::vector<oracle::Vec3> u;
    const EcefPosition a = geodetic_to_ecef(aircraft);
    for (const auto& s : sensors) {
      const EcefPosition e = geodetic_to_ecef(s);
      u.push_back(oracle::unit({a(0), a(1), a(2)}, {e(0), e(1), e(2)}));
    }
    REQUIRE(oracle::best_gdop(u) <= req.required_gdop);
    CHECK(of1_gdop_msd(single_point_grid(aircraft, req), sensors, req) == 0.0);
  }

  TEST_CASE("OF1 saturates with fewer than four sensors") {
    ObjectiveRequirements req;
    const auto sensors = ring(0.4, 3);
    const double expected = (req.gdop_cap - req.required_gdop) * (req.gdop_cap - req.required_gdop);
    CHECK(of1_gdop_msd(single_point_grid({48.0, 7.0, 10000.0}, req), sensors, req) == expected);
  }

  TEST_CASE("OF2 second-nearest range") {
    ObjectiveRequirements req;
    req.required_range_km = 150.0;
    const auto grid = single_point_grid({48.0, 7.0, 10000.0}, req);
    CHECK(of2_range_msd(grid, ring(0.4, 4), 500.0) == 0.0);
    // A single visible sensor leaves the point saturated at the cap.
    const GeodeticPosition one[] = {{48.1, 7.0, 0.0}};
    CHECK(of2_range_msd(grid, one, 500.0) == 350.0 * 350.0);
    CHECK_THROWS_AS(of2_range_msd(grid, one, 0.0), InvalidInput);
  }

  TEST_CASE("direction 1: sensor spacing") {
    ObjectiveRequirements req;
    req.required_min_sensor_spacing_km = 50.0;
    const double a = 6378137.0;

    Eigen::Matrix3Xd same(3, 2);
    same << a, a, 0, 0, 0, 0;
    CHECK(of3_direction1_spacing(same, req) == 2500.0);

    Eigen::Matrix3Xd line(3, 3);
    line << a, a, a, 0, 30000, 60000, 0, 0, 0;
    CHECK(of3_direction1_spacing(line, req) == doctest::Approx(400.0).epsilon(1e-12));

    Eigen::Matrix3Xd wide(3, 3);
    wide << a, a, a, 0, 50000, 100000, 0, 0, 0;
    CHECK(of3_direction1_spacing(wide, req) == 0.0);

    CHECK_THROWS_AS(of3_direction1_spacing(same.leftCols(1), req), InvalidInput);
  }

  TEST_CASE("direction 2: jammer distance") {
    Eigen::MatrixXd dist(1, 2);
    dist << 10.0, 70.0;
    BoolArray los = BoolArray::Constant(1, 2, true);
    CHECK(jammer_distance_msd(dist, los, 40.0) == 900.0);
    CHECK(jammer_distance_msd(dist, los, 5.0) == 0.0);
    los.setConstant(false);
    CHECK(jammer_distance_msd(dist, los, 40.0) == 0.0);

    // Sensor far outside a low jammer's line of sight contributes nothing.
    ObjectiveRequirements req;
    const JammerModel jam{{48.0, 7.0, 100.0}};
    const GeodeticPosition far[] = {{50.0, 9.0, 0.0}};
    const JammerModel jams[] = {jam};
    CHECK(of3_direction2_jammer_distance(far, jams, req) == 0.0);
    const GeodeticPosition near[] = {{48.05, 7.0, 0.0}};
    const double d = euclidean_distance(geodetic_to_ecef(jam.position), geodetic_to_ecef(near[0])) / 1000.0;
    CHECK(of3_direction2_jammer_distance(near, jams, req) ==
          doctest::Approx((80.0 - d) * (80.0 - d)).epsilon(1e-12));
  }

  TEST_CASE("direction 3: sensors exposed to jammers") {
    BoolArray none = BoolArray::Constant(2, 4, false);
    CHECK(jammer_exposure_msd(none, 0) == 0.0);
    BoolArray five = BoolArray::Constant(1, 5, true);
    CHECK(jammer_exposure_msd(five, 0) == 25.0);
    BoolArray two(2, 3);
    two << true, true, true, true, false, false;
    CHECK(jammer_exposure_msd(two, 1) == 2.0);

    ObjectiveRequirements req;
    const JammerModel jams[] = {JammerModel{{48.0, 7.0, 3000.0}}};
    const auto sensors = ring(0.3, 5);
    CHECK(of3_direction3_sensors_in_range(sensors, jams, req) == 25.0);
  }

  TEST_CASE("jamming-to-signal ratio") {
    CHECK(jsr_ratio(100.0, 100.0, 50.0, 50.0) == 1.0);
    CHECK(jsr_ratio(100.0, 100.0, 50.0, 100.0) == 0.25);
    CHECK(jsr_ratio(400.0, 100.0, 50.0, 50.0) == 4.0);
    CHECK(std::isinf(jsr_ratio(1.0, 1.0, 1.0, 0.0)));

    JammerModel jam{{48.0, 7.0, 0.0}};
    jam.power_w = jam.transmitter_power_w;
    const EcefPosition sensor = geodetic_to_ecef(GeodeticPosition{48.0, 7.5, 0.0});
    const EcefPosition tx = 2.0 * sensor - geodetic_to_ecef(jam.position);  // mirror image of the jammer
    CHECK(jsr(jam, sensor, tx) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("JSR affect rule") {
    JammerModel jam{{48.0, 7.0, 6000.0}};
    const GeodeticPosition sensor{48.5, 7.0, 0.0};
    CHECK(jammer_affects(jam, sensor));
    jam.affect_rule = AffectRule::kLineOfSightAndJsr;
    jam.jsr_threshold = 1e6;
    CHECK_FALSE(jammer_affects(jam, sensor));
    jam.jsr_threshold = 1e-3;
    CHECK(jammer_affects(jam, sensor));
    jam.position.altitude_m = 0.0;  // out of line of sight
    CHECK_FALSE(jammer_affects(jam, sensor));
  }

  TEST_CASE("OF3 combination") {
    const Eigen::Vector3d d(0.2, 0.5, 0.9);
    CHECK(of3_combined(d, Eigen::Vector3d(1, 0, 0)) == 0.2);
    const Eigen::Vector3d v = Eigen::Vector3d::Constant(0.37);
    CHECK(of3_combined(v, Eigen::Vector3d(0.2, 0.3, 0.5)) == doctest::Approx(0.37).epsilon(1e-15));
    CHECK(of3_combined(v, Eigen::Vector3d::Constant(1.0 / 3.0)) == doctest::Approx(0.37).epsilon(1e-15));
    CHECK_THROWS_AS(of3_combined(d, Eigen::Vector3d(0.5, 0.5, 0.5)), InvalidConfig);
    CHECK_THROWS_AS(of3_combined(d, Eigen::Vector3d(1.5, -0.5, 0.0)), InvalidConfig);
  }

  TEST_CASE("knapsack penalty") {
    CHECK(knapsack_penalty(0, 400) == 0.0);
    CHECK(knapsack_penalty(400, 400) == 0.5);
    CHECK(knapsack_penalty(30, 400) == 0.0028125);
    CHECK_THROWS_AS(knapsack_penalty(1, 0), InvalidConfig);
    CHECK_THROWS_AS(knapsack_penalty(5, 4), InvalidInput);
  }

  TEST_CASE("weighted fitness") {
    CHECK(weighted_fitness(0.7, 0.2, 0.0) == 0.7);
    CHECK(weighted_fitness(0.7, 0.2, 1.0) == 0.2);
    CHECK(weighted_fitness(0.2, 0.1, 0.5) == doctest::Approx(0.15).epsilon(1e-15));
  }

  TEST_CASE("normalization") {
    CHECK(normalize_score(2.0, 2.0, 12.0) == 0.0);
    CHECK(normalize_score(12.0, 2.0, 12.0) == 1.0);
    CHECK(normalize_score(7.0, 2.0, 12.0) == 0.5);
    CHECK(normalize_score(30.0, 2.0, 12.0) == 1.0);
    CHECK(normalize_score(5.0, 3.0, 3.0) == 0.0);
  }

  TEST_CASE("requirement and jammer validation") {
    ObjectiveRequirements req;
    CHECK_NOTHROW(validate(req));
    req.required_gdop = 0.0;
    CHECK_THROWS_AS(validate(req), InvalidConfig);
    req = {};
    req.required_max_sensors_in_jammer_los = -1;
    CHECK_THROWS_AS(validate(req), InvalidConfig);

    JammerModel jam;
    CHECK_NOTHROW(validate(jam));
    jam.power_w = 0.0;
    CHECK_THROWS_AS(validate(jam), InvalidConfig);
  }
}
