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

#ifndef GEOSEEK_EXPERIMENT_HPP_
#define GEOSEEK_EXPERIMENT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "geoseek/averaging.hpp"
#include "geoseek/integrator.hpp"

namespace geoseek
{

enum class SpaceKind { R1, S1, SO3, SE3 };

std::string space_kind_name(SpaceKind kind);
SpaceKind space_kind_from_name(const std::string & name);

/// Which built-in cost the experiment minimizes.
struct CostSelector
{
  std::string type;  // "quadratic" | "cos_well" | "so3_trace" | "se3_pose"
  double theta_star = 0.0;       // cos_well
  Eigen::VectorXd center;        // quadratic; empty means the origin
};

/// A fully specified experiment: space, cost, dither, integrator, target.
struct ExperimentConfig
{
  std::string experiment;
  SpaceKind space = SpaceKind::R1;
  CostSelector cost;
  State initial_state;
  DitherSpec dither;
  std::vector<std::string> multiplier_text;  // original decimal strings
  IntegratorConfig integrator;
  State target;
  double enter_radius = 0.0;
  std::string output;  // path stem for <stem>.csv / <stem>.summary.json

  SpaceBinding binding() const;
  CostOracle oracle() const;

  /// Frequency conditions, amplitude safety, state shapes, integrator
  /// settings. Throws with every violated frequency condition listed.
  void validate() const;
};

/// Loads and validates a JSON experiment config.
ExperimentConfig load_config(const std::string & path);

/// Parses a config from already-loaded JSON text (no file access).
ExperimentConfig parse_config_text(const std::string & text, const std::string & origin);

const std::vector<ExperimentConfig> & builtin_experiments();
std::optional<ExperimentConfig> find_builtin(const std::string & name);

/// Summary of one experiment run.
struct RunRecord
{
  std::string experiment;
  std::string space;
  std::string axis;                 // set by sweeps, else empty
  double axis_value = 0.0;          // meaningful only when axis is set
  double initial_cost = 0.0;
  double final_cost = 0.0;
  double final_distance = 0.0;
  std::optional<double> t_enter;    // empty means "never"
  double duration_seconds = 0.0;
  double max_membership_defect = 0.0;
  std::size_t sample_count = 0;
  std::string csv_path;
  std::string error;                // nonempty when the run aborted
};

/// Runs the extremum seeking experiment and writes <stem>.csv,
/// <stem>.summary.json and <stem>_plot.py. Integration errors are rethrown
/// after the partial CSV has been written and marked.
RunRecord run_experiment(const ExperimentConfig & cfg);

enum class SweepAxis { AmplitudeScale, Omega, Step };

std::string sweep_axis_name(SweepAxis axis);
SweepAxis sweep_axis_from_name(const std::string & name);

struct SweepResult
{
  SweepAxis axis = SweepAxis::AmplitudeScale;
  std::vector<double> values;
  std::vector<RunRecord> records;
  std::optional<double> residual_slope_value;  // amplitude axis
  std::vector<double> corrector_sups;          // omega axis, one per value
  std::vector<double> corrector_ratios;        // consecutive sup ratios
  std::vector<std::string> notes;
};

/// Independent runs of the base experiment along one parameter axis.
/// Per-run errors are recorded and the sweep continues. Runs may execute
/// concurrently; the GEOSEEK_THREADS environment variable caps parallelism.
SweepResult run_sweep(
  const ExperimentConfig & base, SweepAxis axis, const std::vector<double> & values);

/// Human-readable table, deterministic ordering, 6 significant digits.
std::string emit_summary_table(std::vector<RunRecord> records);

/// Machine-readable counterpart of the table.
std::string emit_summary_json(std::vector<RunRecord> records);

/// One CSV row per sample: t, cost, dist_to_target, then the flattened
/// state entries for the space.
void write_trajectory_csv(
  const Trajectory & trajectory, SpaceKind space, const std::string & path,
  const std::string & error_marker = "");

std::vector<std::string> csv_state_columns(SpaceKind space);

}  // namespace geoseek

#endif  // GEOSEEK_EXPERIMENT_HPP_
