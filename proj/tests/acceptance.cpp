// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "osp/analysis.hpp"
#include "osp/gdop.hpp"
#include "osp/geo.hpp"
#include "osp/io.hpp"
#include "osp/nsga2.hpp"
#include "osp/objectives.hpp"
#include "osp/optimize.hpp"
#include "osp/scenario.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace osp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects failed sub-checks of one criterion.
class Criterion {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool passed() const { return failures_.empty(); }
  std::string summary() const {
    std::string s;
    const auto& items = failures_.empty() ? notes_ : failures_;
    for (const auto& i : items) s += (s.empty() ? "" : "; ") + i;
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

int g_failed = 0;

void report(const char* name, const std::function<void(Criterion&)>& body) {
  Criterion c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  if (!c.passed()) ++g_failed;
  std::cout << name << (c.passed() ? " PASS" : " FAIL") << ": " << c.summary() << std::endl;
}

std::string num(double v) { return format_double9(v); }

oracle::Vec3 as_vec3(const EcefPosition& e) { return {e(0), e(1), e(2)}; }

// ---------------------------------------------------------------------------
// CLI helpers

const fs::path kWork = fs::current_path() / "acceptance_runs";

int run_cli(const std::string& args, const std::string& log_stem) {
  const std::string cmd = std::string("\"") + OSP_CLI + "\" " + args + " > \"" +
                          (kWork / (log_stem + ".out")).string() + "\" 2> \"" +
                          (kWork / (log_stem + ".err")).string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path config_path(const std::string& name) { return fs::path(OSP_CONFIG_DIR) / name; }

std::vector<fs::path> solution_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string n = e.path().filename().string();
    if (n.starts_with("solution_") && n.ends_with(".csv")) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Byte comparison of pareto.csv and every solution file of two output dirs.
bool same_outputs(const fs::path& a, const fs::path& b, std::string& why) {
  const auto fa = solution_files(a), fb = solution_files(b);
  if (fa.size() != fb.size()) {
    why = "different number of solution files";
    return false;
  }
  if (slurp(a / "pareto.csv") != slurp(b / "pareto.csv")) {
    why = "pareto.csv differs";
    return false;
  }
  for (std::size_t i = 0; i < fa.size(); ++i) {
    if (fa[i].filename() != fb[i].filename() || slurp(fa[i]) != slurp(fb[i])) {
      why = fa[i].filename().string() + " differs";
      return false;
    }
  }
  return true;
}

json evaluate_file(const fs::path& config, const fs::path& sensors, const fs::path& out, const std::string& stem) {
  const int rc = run_cli("evaluate --config \"" + config.string() + "\" --sensors \"" + sensors.string() +
                             "\" --out \"" + out.string() + "\"",
                         stem);
  if (rc != 0) throw std::runtime_error("evaluate " + sensors.filename().string() + " exited " + std::to_string(rc));
  return json::parse(slurp(out / "scores.json"));
}

double gdop_above(const json& scores, double threshold) {
  const auto& t = scores.at("gdop_exceedance").at("thresholds");
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i].get<double>() == threshold) return scores.at("gdop_exceedance").at("fraction_above")[i].get<double>();
  throw std::runtime_error("threshold missing from scores.json");
}

/// Progress records (JSON lines) from an optimize stderr log.
std::vector<Eigen::MatrixXd> progress_fronts(const fs::path& err_log, std::vector<std::size_t>& generations) {
  std::ifstream in(err_log);
  std::vector<Eigen::MatrixXd> fronts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() != '{') continue;
    const json j = json::parse(line);
    const auto& f = j.at("front");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(f.size()), 3);
    for (std::size_t r = 0; r < f.size(); ++r)
      for (std::size_t c = 0; c < 3; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = f[r][c];
    fronts.push_back(std::move(m));
    generations.push_back(j.at("gen").get<std::size_t>());
  }
  return fronts;
}

// ---------------------------------------------------------------------------
// Criteria

void geodesy(Criterion& c) {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> lat(-89.9, 89.9), lon(-180.0, 179.999), alt(-500.0, 20000.0);
  double worst_deg = 0.0, worst_m = 0.0, worst_ortho = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const GeodeticPosition p{lat(rng), lon(rng), alt(rng)};
    const GeodeticPosition q = ecef_to_geodetic(geodetic_to_ecef(p));
    worst_deg = std::max({worst_deg, std::abs(q.latitude_deg - p.latitude_deg),
                          std::abs(q.longitude_deg - p.longitude_deg)});
    worst_m = std::max(worst_m, std::abs(q.altitude_m - p.altitude_m));
    const Eigen::Matrix3d r = ned_rotation(p);
    worst_ortho = std::max(worst_ortho, (r * r.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
  }
  const double t = seconds_since(start);
  c.require(worst_deg < 1e-9, "angle error " + num(worst_deg) + " deg");
  c.require(worst_m < 1e-3, "altitude error " + num(worst_m) + " m");
  c.require(worst_ortho < 1e-12, "orthonormality error " + num(worst_ortho));
  c.require(t < 1.0, "runtime " + num(t) + " s");
  c.note("1000 round trips, max " + num(worst_deg) + " deg / " + num(worst_m) + " m, |RR^T-I| " +
         num(worst_ortho) + ", " + num(t) + " s");
}

void gdop_equivalence(Criterion& c) {
  const auto start = Clock::now();
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> dlat(-1.5, 1.5), dlon(-2.0, 2.0), alt(1000.0, 12000.0);
  double worst = 0.0;
  int checked = 0;
  while (checked < 100) {
    const GeodeticPosition aircraft{48.0 + dlat(rng), 7.0 + dlon(rng), alt(rng)};
    const EcefPosition a = geodetic_to_ecef(aircraft);
    std::array<EcefPosition, 4> sensors;
    std::array<oracle::Vec3, 4> u;
    for (int i = 0; i < 4; ++i) {
      sensors[i] = geodetic_to_ecef(GeodeticPosition{48.0 + dlat(rng), 7.0 + dlon(rng), 0.0});
      u[i] = oracle::unit(as_vec3(a), as_vec3(sensors[i]));
    }
    const double expected = oracle::gdop(u);
    if (!(expected < 100.0)) continue;  // degenerate geometry
    worst = std::max(worst, std::abs(gdop_of_four(aircraft, sensors) - expected) / expected);
    ++checked;
  }
  double worst_subset = 0.0;
  int subsets = 0;
  for (std::size_t n = 4; n <= 8; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const GeodeticPosition aircraft{48.0 + dlat(rng), 7.0 + dlon(rng), alt(rng)};
      const EcefPosition a = geodetic_to_ecef(aircraft);
      std::vector<EcefPosition> sensors;
      std::vector<oracle::Vec3> u;
      for (std::size_t i = 0; i < n; ++i) {
        sensors.push_back(geodetic_to_ecef(GeodeticPosition{48.0 + dlat(rng), 7.0 + dlon(rng), 0.0}));
        u.push_back(oracle::unit(as_vec3(a), as_vec3(sensors.back())));
      }
      const double expected = oracle::best_gdop(u);
      if (!(expected < 100.0)) continue;
      const double got = best_gdop_at(aircraft, sensors, SubsetStrategy::exhaustive());
      worst_subset = std::max(worst_subset, std::abs(got - expected) / expected);
      ++subsets;
    }
  }
  const double t = seconds_since(start);
  c.require(worst < 1e-9, "gdop_of_four relative error " + num(worst));
  c.require(worst_subset < 1e-9, "exhaustive best GDOP relative error " + num(worst_subset));
  c.require(subsets >= 50, "too few non-degenerate subset cases");
  c.require(t < 5.0, "runtime " + num(t) + " s");
  c.note("100 geometries max rel " + num(worst) + "; " + std::to_string(subsets) + " C(n,4) cases max rel " +
         num(worst_subset) + "; " + num(t) + " s");
}

void los_boundary(Criterion& c) {
  const PropagationParams params;
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> lat(47.0, 52.0), lon(5.0, 10.0), h(0.0, 12000.0);
  int boundary = 0;
  for (int i = 0; i < 100; ++i) {
    const GeodeticPosition ground{lat(rng), lon(rng), 0.0};
    GeodeticPosition tx{lat(rng), lon(rng), 0.0};
    const double d = ground_distance_km(tx, ground);
    tx.altitude_m = params.los_coefficient * d * d / params.effective_earth_radius_factor;
    const bool at = is_visible(tx, ground, params);
    tx.altitude_m -= 1e-6;
    const bool below = is_visible(tx, ground, params);
    c.require(at, "boundary case not visible");
    c.require(!below, "boundary - 1e-6 m still visible");
    boundary += at && !below;
  }
  int monotone = 0;
  for (int i = 0; i < 1000; ++i) {
    const GeodeticPosition rx{lat(rng), lon(rng), (i % 2 == 0) ? 0.0 : h(rng) / 10.0};
    const double h1 = h(rng), h2 = h(rng);
    const GeodeticPosition low{lat(rng), lon(rng), std::min(h1, h2)};
    GeodeticPosition high = low;
    high.altitude_m = std::max(h1, h2);
    const bool ok = !is_visible(low, rx, params) || is_visible(high, rx, params);
    c.require(ok, "visibility lost when raising the transmitter");
    monotone += ok;
  }
  c.note(std::to_string(boundary) + "/100 boundary flips, " + std::to_string(monotone) + "/1000 monotone cases");
}

void objective_zero_points(Criterion& c) {
  ObjectiveRequirements req;
  req.required_min_sensor_spacing_km = 20.0;
  req.required_min_jammer_distance_km = 20.0;
  const GeodeticPosition aircraft{48.0, 7.0, 10000.0};
  std::vector<GeodeticPosition> sensors{{48.0, 7.0, 0.0}};
  for (int i = 0; i < 6; ++i) {
    const double t = 2.0 * std::numbers::pi * i / 6.0;
    sensors.push_back({48.0 + 0.4 * std::cos(t), 7.0 + 0.6 * std::sin(t), 0.0});
  }
  const AirspaceGrid grid = make_grid({aircraft}, req);
  Eigen::Matrix3Xd ecef(3, static_cast<Eigen::Index>(sensors.size()));
  for (std::size_t i = 0; i < sensors.size(); ++i) ecef.col(static_cast<Eigen::Index>(i)) = geodetic_to_ecef(sensors[i]);
  // Low jammer far away: out of sight of every sensor.
  const JammerModel jams[] = {JammerModel{{50.5, 9.5, 100.0}}};

  const double of1 = of1_gdop_msd(grid, sensors, req);
  const double of2 = of2_range_msd(grid, sensors, 500.0);
  const double d1 = of3_direction1_spacing(ecef, req);
  const double d2 = of3_direction2_jammer_distance(sensors, jams, req);
  const double d3 = of3_direction3_sensors_in_range(sensors, jams, req);
  c.require(of1 == 0.0, "OF1 = " + num(of1));
  c.require(of2 == 0.0, "OF2 = " + num(of2));
  c.require(d1 == 0.0 && d2 == 0.0 && d3 == 0.0, "OF3 directions " + num(d1) + "," + num(d2) + "," + num(d3));
  c.require(of3_combined(Eigen::Vector3d(d1, d2, d3), Eigen::Vector3d::Constant(1.0 / 3.0)) == 0.0, "OF3 != 0");
  c.require(knapsack_penalty(0, 400) == 0.0, "penalty(0) != 0");
  c.require(knapsack_penalty(400, 400) == 0.5, "penalty(R) != 0.5");
  c.require(knapsack_penalty(30, 400) == 0.0028125, "penalty(30, 400) = " + num(knapsack_penalty(30, 400)));
  c.note("OF1=OF2=OF3=0; penalty 0 / 0.5 / 0.0028125 exact");
}

void nsga2_correctness(Criterion& c) {
  std::mt19937_64 rng(404);
  int sorts = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng() % 64);
    Eigen::MatrixXd obj(n, 3);
    std::vector<std::vector<double>> pts;
    for (Eigen::Index i = 0; i < n; ++i) {
      std::vector<double> p;
      for (int k = 0; k < 3; ++k) {
        obj(i, k) = static_cast<double>(rng() % 8);
        p.push_back(obj(i, k));
      }
      pts.push_back(p);
    }
    const auto expected = oracle::ranks(pts);
    std::vector<std::size_t> got(static_cast<std::size_t>(n), 999);
    const Fronts fronts = non_dominated_sort(obj);
    for (std::size_t r = 0; r < fronts.size(); ++r)
      for (std::size_t i : fronts[r]) got[i] = r;
    c.require(got == expected, "sort mismatch in population " + std::to_string(trial));
    sorts += got == expected;

    // Each objective's extreme values must be held by an infinite-distance member.
    const auto& f0 = fronts[0];
    const Eigen::VectorXd cd = crowding_distance(obj, f0);
    bool boundaries_ok = true;
    if (f0.size() <= 2) boundaries_ok = cd.array().isInf().all();
    for (Eigen::Index k = 0; k < 3 && f0.size() > 2; ++k) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (std::size_t i : f0) {
        lo = std::min(lo, obj(static_cast<Eigen::Index>(i), k));
        hi = std::max(hi, obj(static_cast<Eigen::Index>(i), k));
      }
      if (lo == hi) continue;
      bool lo_inf = false, hi_inf = false;
      for (std::size_t m = 0; m < f0.size(); ++m) {
        const double v = obj(static_cast<Eigen::Index>(f0[m]), k);
        const bool inf = std::isinf(cd(static_cast<Eigen::Index>(m)));
        lo_inf |= v == lo && inf;
        hi_inf |= v == hi && inf;
      }
      boundaries_ok = boundaries_ok && lo_inf && hi_inf;
    }
    c.require(boundaries_ok, "boundary member not infinite in population " + std::to_string(trial));
  }
  Eigen::MatrixXd line(4, 2);
  line << 0, 3, 1, 2, 2, 1, 3, 0;
  const std::vector<std::size_t> all{0, 1, 2, 3};
  const Eigen::VectorXd cd = crowding_distance(line, all);
  c.require(std::isinf(cd(0)) && std::isinf(cd(3)) && std::isfinite(cd(1)) && std::isfinite(cd(2)),
            "crowding boundaries not infinite");

  // Crowded tournament: lower rank wins; equal rank -> larger crowding; full tie -> lower index.
  Population pop(3);
  pop[0].rank = 1, pop[0].crowding = 9.0;
  pop[1].rank = 0, pop[1].crowding = 0.1;
  pop[2].rank = 0, pop[2].crowding = 0.5;
  const std::size_t ranks_pair[] = {0, 1}, crowd_pair[] = {1, 2};
  c.require(tournament_winner(pop, ranks_pair) == 1, "lower rank must win");
  c.require(tournament_winner(pop, crowd_pair) == 2, "larger crowding must win");
  pop[1].crowding = 0.5;
  const std::size_t tie[] = {2, 1};
  c.require(tournament_winner(pop, tie) == 1, "full tie must go to the lower index");

  // Toy placement problem: 10 candidates, single active objective.
  ScenarioConfig sc;
  sc.area = {47.4, 48.4, 7.0, 8.0, {3000.0, 10000.0}};
  sc.grid_lat_count = 4;
  sc.grid_lon_count = 4;
  sc.candidates.count = 10;
  sc.jammers.count = 2;
  sc.jammers.heights_m = {3000.0, 6000.0};
  sc.requirements.required_range_km = 60.0;
  sc.requirements.required_min_sensor_spacing_km = 20.0;
  sc.requirements.required_min_jammer_distance_km = 20.0;
  GaConfig ga;  // default population: smaller ones lose diversity on a single objective
  ga.generations = 100;
  ga.rng_seed = 5;
  ga.threads = 1;
  const PlacementProblem p = build_scenario1(sc, ga);
  const auto score = [&p](const std::vector<bool>& mask) { return evaluate_scores(p, mask).fitness(0); };
  double best = std::numeric_limits<double>::infinity();
  for (unsigned m = 0; m < 1024; ++m) {
    std::vector<bool> mask(10);
    for (unsigned b = 0; b < 10; ++b) mask[b] = (m >> b) & 1u;
    best = std::min(best, score(mask));
  }
  const Evaluator eval = [&](const Chromosome& ch) {
    Eigen::VectorXd o(1);
    o(0) = score(ch.genes);
    return Evaluation{o, {}};
  };
  const EvolutionResult r = evolve(eval, p.forced_mask, ga);
  double found = std::numeric_limits<double>::infinity();
  for (const auto& ind : r.front) found = std::min(found, ind.objectives(0));
  c.require(found == best, "toy optimum " + num(found) + " vs exhaustive " + num(best));
  c.note(std::to_string(sorts) + "/50 sorts exact; boundaries infinite; tournament order ok; toy optimum " +
         num(found) + " = exhaustive");
}

struct DeskRun {
  fs::path dir;
  double seconds = 0.0;
  int exit_code = -1;
};

DeskRun run_optimize(const fs::path& config, const fs::path& out, const std::string& stem,
                     const std::string& extra = {}) {
  DeskRun r;
  r.dir = out;
  const auto start = Clock::now();
  r.exit_code = run_cli("optimize --config \"" + config.string() + "\" --out \"" + out.string() + "\" " + extra, stem);
  r.seconds = seconds_since(start);
  return r;
}

void determinism(Criterion& c, const DeskRun& first) {
  c.require(first.exit_code == 0, "first run exited " + std::to_string(first.exit_code));
  const DeskRun second = run_optimize(config_path("desk_reproduction.json"), kWork / "desk_repeat", "desk_repeat");
  c.require(second.exit_code == 0, "second run exited " + std::to_string(second.exit_code));
  std::string why;
  c.require(same_outputs(first.dir, second.dir, why), why);
  c.note("pareto.csv and " + std::to_string(solution_files(first.dir).size()) +
         " solution files byte-identical across two runs");
}

void desk_reproduction(Criterion& c, const DeskRun& run) {
  c.require(run.exit_code == 0, "optimize exited " + std::to_string(run.exit_code));
  const fs::path cfg = config_path("desk_reproduction.json");
  const json baseline = evaluate_file(cfg, fs::path(OSP_DATA_DIR) / "clustered21.csv", kWork / "eval_baseline",
                                      "eval_baseline");
  const double base_gdop = gdop_above(baseline, 60.0);
  const int base_max = baseline.at("jamming").at("max_affected").get<int>();

  const auto rows = read_pareto_csv(run.dir / "pareto.csv");
  c.require(!rows.empty(), "empty front");
  const auto best_of = [&rows](auto key, auto keep) {
    const ParetoRow* best = nullptr;
    for (const auto& r : rows)
      if (keep(r) && (!best || key(r) < key(*best))) best = &r;
    return best;
  };
  const auto any = [](const ParetoRow&) { return true; };
  const ParetoRow* of1 = best_of([](const ParetoRow& r) { return r.of1; }, any);
  const ParetoRow* of3 = best_of([](const ParetoRow& r) { return r.of3; }, any);
  const ParetoRow* of3_real = best_of([](const ParetoRow& r) { return r.of3; },
                                      [](const ParetoRow& r) { return r.n_sensors >= 4; });
  c.require(of1 && of3 && of3_real, "front lacks required members");
  if (!of1 || !of3 || !of3_real) return;

  const auto eval_member = [&](const ParetoRow& r) {
    return evaluate_file(cfg, run.dir / ("solution_" + r.id + ".csv"), kWork / ("eval_" + r.id), "eval_" + r.id);
  };
  const double of1_gdop = gdop_above(eval_member(*of1), 60.0);
  const int of3_max = eval_member(*of3).at("jamming").at("max_affected").get<int>();
  const int of3_real_max = eval_member(*of3_real).at("jamming").at("max_affected").get<int>();

  c.require(of1_gdop <= 0.5 * base_gdop, "(a) GDOP>60 fraction " + num(of1_gdop) + " vs baseline " + num(base_gdop));
  c.require(of3_max <= 0.5 * base_max,
            "(b) max affected " + std::to_string(of3_max) + " vs baseline " + std::to_string(base_max));
  c.require(of3_real_max <= 0.5 * base_max, "(b) max affected among members with >= 4 sensors " +
                                                std::to_string(of3_real_max) + " vs baseline " +
                                                std::to_string(base_max));
  c.require(run.seconds <= 900.0, "(c) wall clock " + num(run.seconds) + " s");
  c.note("(a) GDOP>60 " + num(base_gdop) + " -> " + num(of1_gdop) + " (" + of1->id + ", " +
         std::to_string(of1->n_sensors) + " sensors); (b) max affected " + std::to_string(base_max) + " -> " +
         std::to_string(of3_max) + " (" + of3->id + ", " + std::to_string(of3->n_sensors) + " sensors), " +
         std::to_string(of3_real_max) + " (" + of3_real->id + ", " + std::to_string(of3_real->n_sensors) +
         " sensors); (c) " + num(run.seconds) + " s");
}

void scenario2(Criterion& c) {
  const fs::path cfg = config_path("augment_clustered21.json");
  const fs::path out = kWork / "augment";
  const int rc = run_cli("augment --config \"" + cfg.string() + "\" --out \"" + out.string() + "\"", "augment");
  c.require(rc == 0, "augment exited " + std::to_string(rc));
  if (rc != 0) return;
  const auto deployed = read_sensors(fs::path(OSP_DATA_DIR) / "clustered21.csv");
  const auto files = solution_files(out);
  c.require(!files.empty(), "no solution files");
  std::size_t max_total = 0;
  for (const auto& f : files) {
    const auto sensors = read_sensors(f);
    max_total = std::max(max_total, sensors.size());
    c.require(sensors.size() <= 36, f.filename().string() + " has " + std::to_string(sensors.size()) + " sensors");
    for (const auto& d : deployed) {
      const bool present = std::any_of(sensors.begin(), sensors.end(), [&](const SensorRecord& s) {
        return s.forced && s.id == d.id && s.position == d.position;
      });
      c.require(present, f.filename().string() + " lacks forced " + d.id);
    }
  }
  for (const auto& r : read_pareto_csv(out / "pareto.csv"))
    c.require(r.n_forced == deployed.size(), r.id + " n_forced " + std::to_string(r.n_forced));

  // Empty deployed file: augment must reproduce optimize byte for byte.
  json quick = json::parse(slurp(config_path("desk_reproduction.json")));
  quick["ga"]["generations"] = 15;
  const fs::path quick_cfg = kWork / "quick.json";
  std::ofstream(quick_cfg) << quick.dump(2);
  const fs::path empty = kWork / "empty_deployed.csv";
  std::ofstream(empty) << "id,lat_deg,lon_deg,alt_m\n";
  const DeskRun scratch = run_optimize(quick_cfg, kWork / "quick_optimize", "quick_optimize");
  const int arc = run_cli("augment --config \"" + quick_cfg.string() + "\" --sensors \"" + empty.string() +
                              "\" --out \"" + (kWork / "quick_augment").string() + "\"",
                          "quick_augment");
  c.require(scratch.exit_code == 0 && arc == 0, "empty-deployed runs failed");
  std::string why;
  c.require(same_outputs(kWork / "quick_optimize", kWork / "quick_augment", why), "empty deployed: " + why);
  c.note(std::to_string(files.size()) + " solutions, all keep 21 forced sensors, max " + std::to_string(max_total) +
         " total; empty deployed file reproduces optimize byte for byte");
}

void elitism(Criterion& c, const DeskRun& run) {
  std::vector<std::size_t> gens;
  const auto fronts = progress_fronts(kWork / "desk.err", gens);
  c.require(fronts.size() >= 2, "fewer than two progress records");
  std::size_t violations = 0;
  for (std::size_t t = 1; t < fronts.size(); ++t) {
    c.require(gens[t] == gens[t - 1] + 1, "progress generations not consecutive");
    for (Eigen::Index i = 0; i < fronts[t].rows(); ++i)
      for (Eigen::Index j = 0; j < fronts[t - 1].rows(); ++j)
        if (dominates(fronts[t - 1].row(j).transpose().eval(), fronts[t].row(i).transpose().eval())) ++violations;
  }
  c.require(violations == 0, std::to_string(violations) + " members dominated by the previous front");
  c.note(std::to_string(fronts.size()) + " progress records of run " + run.dir.filename().string() +
         ", no rank-0 member dominated by the previous generation's rank-0 set");
}

void round_trip(Criterion& c, const DeskRun& run) {
  const fs::path cfg = config_path("desk_reproduction.json");
  const auto rows = read_pareto_csv(run.dir / "pareto.csv");
  std::size_t exact = 0;
  for (const auto& r : rows) {
    const json s = evaluate_file(cfg, run.dir / ("solution_" + r.id + ".csv"), kWork / "eval_roundtrip", "eval_rt");
    const auto vec = [](const json& a) { return Eigen::Vector3d(a[0].get<double>(), a[1], a[2]); };
    const auto comp = [](const json& o) {
      return Eigen::Vector3d(o.at("spacing").get<double>(), o.at("jammer_distance"), o.at("jammer_exposure"));
    };
    const bool ok = s.at("n_sensors").get<std::size_t>() == r.n_sensors &&
                    s.at("n_forced").get<std::size_t>() == r.n_forced && s.at("of1").get<double>() == r.of1 &&
                    s.at("of2").get<double>() == r.of2 && s.at("of3").get<double>() == r.of3 &&
                    vec(s.at("normalized")) == r.normalized &&
                    comp(s.at("of3_components")) == r.of3_components &&
                    comp(s.at("of3_normalized_components")) == r.of3_normalized_components &&
                    s.at("penalty").get<double>() == r.penalty && vec(s.at("fitness")) == r.fitness;
    c.require(ok, r.id + " scores differ after re-evaluation");
    exact += ok;
  }
  c.note(std::to_string(exact) + "/" + std::to_string(rows.size()) + " solutions reproduce their pareto.csv row exactly");
}

}  // namespace

int main() {
  fs::create_directories(kWork);
  report("AC1 geodesy round trip", geodesy);
  report("AC2 GDOP oracle equivalence", gdop_equivalence);
  report("AC3 line-of-sight boundary", los_boundary);
  report("AC4 objective zero points", objective_zero_points);
  report("AC5 NSGA-II correctness", nsga2_correctness);

  const DeskRun desk = run_optimize(config_path("desk_reproduction.json"), kWork / "desk", "desk");
  report("AC6 determinism", [&](Criterion& c) { determinism(c, desk); });
  report("AC7 desk-scale reproduction", [&](Criterion& c) { desk_reproduction(c, desk); });
  report("AC8 augmentation contract", scenario2);
  report("AC9 elitism", [&](Criterion& c) { elitism(c, desk); });
  report("AC10 evaluate round trip", [&](Criterion& c) { round_trip(c, desk); });

  std::cout << (g_failed == 0 ? "all criteria passed" : std::to_string(g_failed) + " criteria failed") << std::endl;
  return g_failed == 0 ? 0 : 1;
}
