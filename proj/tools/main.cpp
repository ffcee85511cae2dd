/*
 * Copyright 2026 The geoseek Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "geoseek/experiment.hpp"

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitIoError = 3;

// A built-in experiment name or a JSON config path.
geoseek::ExperimentConfig resolve_config(const std::string & arg)
{
  if (auto builtin = geoseek::find_builtin(arg)) {
    return *builtin;
  }
  return geoseek::load_config(arg);
}

int cmd_run(const std::string & config_arg)
{
  const auto cfg = resolve_config(config_arg);
  const auto record = geoseek::run_experiment(cfg);
  std::cout << geoseek::emit_summary_table({record});
  std::cout << "wrote " << record.csv_path << "\n";
  return kExitOk;
}

int cmd_validate(const std::string & config_arg)
{
  const auto cfg = resolve_config(config_arg);
  cfg.validate();
  std::cout << "config '" << cfg.experiment << "' is valid ("
            << geoseek::space_kind_name(cfg.space) << ", " << cfg.dither.dim()
            << " dither components, t_f=" << cfg.integrator.horizon << ")\n";
  return kExitOk;
}

int cmd_sweep(
  const std::string & config_arg, const std::string & axis_name,
  const std::vector<double> & values)
{
  const auto cfg = resolve_config(config_arg);
  const auto axis = geoseek::sweep_axis_from_name(axis_name);
  const auto result = geoseek::run_sweep(cfg, axis, values);

  std::cout << geoseek::emit_summary_table(result.records);
  if (result.residual_slope_value.has_value()) {
    std::printf("residual log-log slope: %.6g\n", *result.residual_slope_value);
  }
  for (std::size_t i = 0; i < result.corrector_sups.size(); ++i) {
    std::printf(
      "corrector sup distance at %s=%.6g: %.6g\n", geoseek::sweep_axis_name(axis).c_str(),
      result.values[i], result.corrector_sups[i]);
  }
  for (std::size_t i = 0; i < result.corrector_ratios.size(); ++i) {
    std::printf("corrector sup ratio (value %zu -> %zu): %.6g\n", i + 1, i + 2,
                result.corrector_ratios[i]);
  }
  for (const auto & note : result.notes) {
    std::cout << "note: " << note << "\n";
  }

  const std::string summary = cfg.output + "_sweep_summary.json";
  std::ofstream out(summary, std::ios::binary);
  if (!out) {
    throw geoseek::IoError("cannot open '" + summary + "' for writing");
  }
  out << geoseek::emit_summary_json(result.records);

  for (const auto & record : result.records) {
    if (!record.error.empty()) {
      return kExitDiverged;
    }
  }
  return kExitOk;
}

int cmd_list()
{
  for (const auto & cfg : geoseek::builtin_experiments()) {
    std::printf(
      "%-14s %-4s cost=%-10s t_f=%-8g omega=%g\n", cfg.experiment.c_str(),
      geoseek::space_kind_name(cfg.space).c_str(), cfg.cost.type.c_str(),
      cfg.integrator.horizon, cfg.dither.base_frequency);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"geoseek: geodesic-dither extremum seeking on manifolds and matrix Lie groups"};
  app.require_subcommand(1);

  std::string config_arg;
  auto * run = app.add_subcommand("run", "run one experiment and write CSV + summary");
  run->add_option("config", config_arg, "built-in experiment name or JSON config path")
    ->required();

  auto * validate = app.add_subcommand("validate", "validate a config without running it");
  validate->add_option("config", config_arg, "built-in experiment name or JSON config path")
    ->required();

  std::string axis;
  std::vector<double> values;
  auto * sweep = app.add_subcommand("sweep", "run one experiment along a parameter axis");
  sweep->add_option("config", config_arg, "built-in experiment name or JSON config path")
    ->required();
  sweep->add_option("--axis", axis, "amplitude | omega | step")->required();
  sweep->add_option("--values", values, "comma-separated axis values")
    ->required()
    ->delimiter(',');

  auto * list = app.add_subcommand("list-experiments", "list the built-in experiments");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(config_arg);
    }
    if (validate->parsed()) {
      return cmd_validate(config_arg);
    }
    if (sweep->parsed()) {
      return cmd_sweep(config_arg, axis, values);
    }
    if (list->parsed()) {
      return cmd_list();
    }
  } catch (const geoseek::IntegrationDivergedError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDiverged;
  } catch (const geoseek::IntegrationChartExitError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDiverged;
  } catch (const geoseek::IoError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitOk;
}
