// Command-line front end: optimize, augment, evaluate, report.
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "osp/commands.hpp"

namespace {

Eigen::Vector3d parse_weights(const std::string& text) {
  std::vector<double> w;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) w.push_back(std::stod(cell));
  if (w.size() != 3) throw CLI::ValidationError("--weights", "expected three comma-separated numbers");
  return {w[0], w[1], w[2]};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensor placement optimizer for ADS-B receiver networks"};
  app.require_subcommand(1);

  osp::CommandOptions opts;
  std::string config, sensors, out;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::size_t budget = 0;
  std::string weights;
  bool quiet = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Output directory (overrides the config)");
    cmd->add_option("--seed", seed, "Random seed (overrides the config)");
    cmd->add_option("--threads", threads, "Evaluation worker threads (0 = all cores)");
    cmd->add_flag("--quiet", quiet, "Suppress the per-generation progress stream");
  };

  auto* optimize = app.add_subcommand("optimize", "Place sensors from scratch");
  add_common(optimize);
  auto* augment = app.add_subcommand("augment", "Add sensors to a deployed network");
  add_common(augment);
  augment->add_option("--sensors", sensors, "Deployed sensors CSV (overrides the config)");
  auto* evaluate = app.add_subcommand("evaluate", "Score a given placement");
  add_common(evaluate);
  evaluate->add_option("--sensors", sensors, "Sensors CSV or solution file")->required();
  auto* report = app.add_subcommand("report", "Summarize a front and pick a solution");
  report->add_option("front_dir", out, "Directory with pareto.csv and solution files")->required();
  report->add_option("--budget", budget, "Maximum number of sensors");
  report->add_option("--weights", weights, "Weights on normalized OF1,OF2,OF3 (sum to 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : osp::kExitUsage;
  }

  opts.config = config;
  if (!sensors.empty()) opts.sensors = sensors;
  if (!out.empty()) opts.out = out;
  if (app.got_subcommand(optimize) || app.got_subcommand(augment) || app.got_subcommand(evaluate)) {
    auto* cmd = app.get_subcommands().front();
    if (cmd->count("--seed")) opts.seed = seed;
    if (cmd->count("--threads")) opts.threads = threads;
  }
  opts.progress = !quiet;

  if (app.got_subcommand(optimize)) return osp::cmd_optimize(opts, std::cout, std::cerr);
  if (app.got_subcommand(augment)) return osp::cmd_augment(opts, std::cout, std::cerr);
  if (app.got_subcommand(evaluate)) return osp::cmd_evaluate(opts, std::cout, std::cerr);

  if (report->count("--budget")) opts.budget = budget;
  if (!weights.empty()) {
    try {
      opts.weights = parse_weights(weights);
    } catch (const std::exception& e) {
      std::cerr << "invalid --weights: " << e.what() << '\n';
      return osp::kExitUsage;
    }
  }
  return osp::cmd_report(opts, std::cout, std::cerr);
}
