// Copyright 2026 The netexp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run, truth, report, validate.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "netexp/config.h"
#include "netexp/errors.h"
#include "netexp/experiment.h"
#include "netexp/summary.h"

namespace {

std::ofstream Open(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw netexp::ConfigError("cannot write " + p.string());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network experiment simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::optional<int> workers;

  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", output_dir, "Output directory (overrides the config)");
  run->add_option("-w,--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* truth = app.add_subcommand("truth", "Compute the global treatment effect only");
  truth->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  truth->add_option("-o,--output", output_dir, "Output directory (overrides the config)");
  truth->add_option("-w,--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  std::string results_dir;
  auto* report = app.add_subcommand("report", "Recompute summary and plot data from a run");
  report->add_option("results-dir", results_dir, "Directory written by `run`")
      ->required()
      ->check(CLI::ExistingDirectory);

  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*report) {
      const auto result = netexp::ReadResults(results_dir);
      const auto rows = netexp::Summarize(result, netexp::ReadBaseline(results_dir));
      const std::filesystem::path dir(results_dir);
      auto summary = Open(dir / "summary.csv");
      netexp::WriteSummaryCsv(summary, rows);
      auto plot = Open(dir / "plot_data.csv");
      netexp::WritePlotDataCsv(plot, rows);
      std::cout << rows.size() << " summary rows written to " << dir.string() << "\n";
      return 0;
    }

    auto cfg = netexp::LoadConfig(config_path);
    if (*validate) {
      std::cout << "ok: " << cfg.Estimators().size() << " estimator columns, "
                << cfg.designs.size() << " designs, " << cfg.replications
                << " replications\n";
      return 0;
    }
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    const int n_workers = netexp::ResolveWorkers(workers);
    const auto result =
        *run ? netexp::RunExperiment(cfg, n_workers) : netexp::RunTruth(cfg, n_workers);
    netexp::WriteRunOutputs(cfg.output_dir, cfg, result);
    if (*run && cfg.keep_trajectories) netexp::WriteTrajectories(cfg, 0, cfg.output_dir);
    std::cout << "wrote " << cfg.output_dir.string() << "\n";
  } catch (const netexp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
