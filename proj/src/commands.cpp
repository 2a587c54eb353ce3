#include "osp/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "json.hpp"
#include "osp/analysis.hpp"
#include "osp/io.hpp"
#include "osp/optimize.hpp"
#include "osp/scenario.hpp"

namespace osp {

namespace {

namespace fs = std::filesystem;

constexpr double kReportThresholds[] = {5.0, 10.0, 20.0, 30.0, 60.0, 100.0};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_st>(err, true);
  auto logger = std::make_shared<spdlog::logger>("osp", sink);
  logger->set_pattern("[%l] %v");
  const char* level = std::getenv("OSP_LOG");
  logger->set_level(level ? spdlog::level::from_str(level) : spdlog::level::info);
  return logger;
}

int guarded(std::ostream& err, const std::function<int(spdlog::logger&)>& body) {
  auto log = make_logger(err);
  try {
    return body(*log);
  } catch (const InvalidConfig& e) {
    log->error("invalid config: {}", e.what());
    return kExitUsage;
  } catch (const InputError& e) {
    log->error("input error: {}", e.what());
    return kExitUsage;
  } catch (const NoFeasibleSolution& e) {
    log->error("no feasible solution: {}", e.what());
    return kExitInfeasible;
  } catch (const std::exception& e) {
    log->error("{}", e.what());
    return kExitRuntime;
  }
}

RunConfig load_config(const CommandOptions& options) {
  RunConfig rc = load_run_config(options.config);
  if (options.seed) rc.ga.rng_seed = *options.seed;
  if (options.threads) rc.ga.threads = *options.threads;
  return rc;
}

fs::path output_dir(const CommandOptions& options, const RunConfig& rc) {
  fs::path dir = options.out ? *options.out : fs::path(rc.output_dir);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  return out;
}

std::vector<SensorRecord> forced_records(const PlacementProblem& problem) {
  std::vector<SensorRecord> out;
  for (std::size_t i = 0; i < problem.site_count(); ++i)
    if (problem.forced_mask[i]) out.push_back({problem.site_ids[i], problem.sites[i], true});
  return out;
}

void emit_progress(std::ostream& err, const ProgressRecord& r) {
  nlohmann::json j;
  j["gen"] = r.generation;
  j["front_size"] = r.front_size;
  j["best"] = std::vector<double>(r.best.data(), r.best.data() + r.best.size());
  nlohmann::json front = nlohmann::json::array();
  for (Eigen::Index i = 0; i < r.front.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < r.front.cols(); ++c) row.push_back(r.front(i, c));
    front.push_back(std::move(row));
  }
  j["front"] = std::move(front);
  err << j.dump() << '\n';
}

int run_front(const PlacementProblem& problem, const RunConfig& rc, const CommandOptions& options,
              std::ostream& out, std::ostream& err, spdlog::logger& log) {
  for (const auto& w : problem.warnings) log.warn("{}", w);
  const fs::path dir = output_dir(options, rc);
  const RunMetadata meta{config_hash(rc, forced_records(problem)), rc.ga.rng_seed};

  log.info("optimizing {} sites ({} forced), {} grid points, {} jammers", problem.site_count(),
           problem.forced_count(), problem.grid.size(), problem.jammers.size());
  ProgressCallback progress;
  if (options.progress) progress = [&err](const ProgressRecord& r) { emit_progress(err, r); };
  const ParetoFront front = optimize(problem, rc.ga, progress);

  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.starts_with("solution_") && name.ends_with(".csv")) fs::remove(entry.path());
  }
  const auto rows = pareto_summary(front);
  {
    auto f = open_output(dir / "pareto.csv");
    write_pareto_csv(f, rows, meta);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto f = open_output(dir / ("solution_" + rows[i].id + ".csv"));
    write_solution_csv(f, rows[i], selected_sensors(problem, front.members[i].selection), meta);
  }
  out << "front: " << rows.size() << " solutions after " << front.generations_run << " generations ("
      << front.evaluations << " evaluations)\n"
      << "config hash: " << meta.config_hash << ", seed: " << meta.seed << '\n'
      << "written to " << dir.string() << '\n';
  return kExitOk;
}

void print_summary(std::ostream& out, std::span<const ParetoRow> rows) {
  char line[256];
  std::snprintf(line, sizeof line, "%-6s %9s %8s %12s %12s %12s %9s %9s %9s %10s\n", "id", "n_sensors", "n_forced",
                "of1", "of2", "of3", "of1_norm", "of2_norm", "of3_norm", "penalty");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-6s %9zu %8zu %12.6g %12.6g %12.6g %9.4f %9.4f %9.4f %10.6f\n",
                  r.id.c_str(), r.n_sensors, r.n_forced, r.of1, r.of2, r.of3, r.normalized(0), r.normalized(1),
                  r.normalized(2), r.penalty);
    out << line;
  }
}

}  // namespace

int cmd_optimize(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&](spdlog::logger& log) {
    const RunConfig rc = load_config(options);
    if (rc.kind == ScenarioKind::kAugment)
      log.warn("config describes an augmentation run; optimizing from scratch as requested");
    const PlacementProblem problem = build_scenario1(rc.scenario, rc.ga);
    return run_front(problem, rc, options, out, err, log);
  });
}

int cmd_augment(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&](spdlog::logger& log) {
    const RunConfig rc = load_config(options);
    fs::path deployed;
    if (options.sensors)
      deployed = *options.sensors;
    else if (!rc.deployed_csv.empty())
      deployed = rc.deployed_csv;
    else
      throw InvalidConfig("augment needs a deployed-sensor file (--sensors or scenario.deployed_csv)");
    auto records = read_sensors(deployed);
    for (auto& r : records) r.forced = true;
    const PlacementProblem problem = build_scenario2(rc.scenario, rc.ga, records);
    return run_front(problem, rc, options, out, err, log);
  });
}

int cmd_evaluate(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&](spdlog::logger& log) {
    RunConfig rc = load_config(options);
    if (!options.sensors) throw InvalidConfig("evaluate needs a sensor file (--sensors)");
    const auto records = read_sensors(*options.sensors);
    const auto file_meta = read_metadata(*options.sensors);

    const PlacementProblem problem = build_evaluation_problem(rc.scenario, rc.ga, records);
    for (const auto& w : problem.warnings) log.warn("{}", w);

    RunMetadata meta{config_hash(rc, forced_records(problem)), rc.ga.rng_seed};
    if (!options.seed && file_meta.contains("seed")) meta.seed = std::stoull(file_meta.at("seed"));
    if (file_meta.contains("config_hash") && file_meta.at("config_hash") != meta.config_hash)
      log.warn("sensor file was produced under config hash {}, evaluating under {}", file_meta.at("config_hash"),
               meta.config_hash);

    const PlacementEvaluation eval = evaluate_placement(problem, select_all(problem));
    const GdopDistribution dist = gdop_distribution(eval.coverage, kReportThresholds);

    const fs::path dir = output_dir(options, rc);
    {
      auto f = open_output(dir / "scores.json");
      write_scores_json(f, eval, dist, meta);
    }
    {
      auto f = open_output(dir / "coverage.csv");
      write_coverage_csv(f, eval.coverage, meta);
    }
    {
      auto f = open_output(dir / "jam_report.csv");
      write_jam_report_csv(f, eval.jam, meta);
    }
    const ObjectiveScores& s = eval.scores;
    out << "sensors: " << s.selected << " (" << s.forced << " forced)\n"
        << "of1: " << format_double(s.of1) << "  of2: " << format_double(s.of2)
        << "  of3: " << format_double(s.of3) << "  penalty: " << format_double(s.penalty) << '\n'
        << "GDOP > 60: " << format_double9(dist.above(60.0)) << " of grid points\n"
        << "max sensors affected by one jammer: " << eval.jam.max_affected << '\n'
        << "written to " << dir.string() << '\n';
    return kExitOk;
  });
}

int cmd_report(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&](spdlog::logger& log) {
    if (!options.out) throw InvalidConfig("report needs the front directory");
    const fs::path dir = *options.out;
    if (!fs::is_directory(dir)) throw InvalidConfig(dir.string() + ": not a directory");
    if (!fs::exists(dir / "pareto.csv")) throw InvalidConfig((dir / "pareto.csv").string() + ": missing");
    const auto rows = read_pareto_csv(dir / "pareto.csv");

    std::size_t solution_files = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const std::string name = entry.path().filename().string();
      if (name.starts_with("solution_") && name.ends_with(".csv")) ++solution_files;
    }
    if (solution_files != rows.size())
      log.warn("pareto.csv lists {} solutions but {} solution files exist", rows.size(), solution_files);

    print_summary(out, rows);
    SelectionPreferences prefs;
    prefs.budget_cap = options.budget;
    if (options.weights) prefs.weights = *options.weights;
    try {
      out << "selected: " << select_solution(rows, prefs) << '\n';
    } catch (const NoFeasibleSolution&) {
      out << "no feasible solution: no front member fits the budget\n";
      return static_cast<int>(kExitInfeasible);
    }
    return static_cast<int>(kExitOk);
  });
}

}  // namespace osp
