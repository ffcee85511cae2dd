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

#include "geoseek/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace geoseek
{

namespace
{

using nlohmann::json;

// Membership tolerance for group elements supplied in configs.
constexpr double kInputDefectTol = 1e-6;
// Sample times used for the corrector-distance supremum in omega sweeps.
constexpr int kCorrectorSampleCount = 24;
constexpr double kCorrectorWindow = 2.0;

std::string format_full(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_short(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const json & get_required(const json & j, const char * key, const std::string & origin)
{
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ArgumentError(origin + ": missing required field '" + key + "'");
  }
  return *it;
}

Eigen::VectorXd parse_vector(const json & j, const std::string & origin)
{
  if (!j.is_array()) {
    throw ArgumentError(origin + ": expected an array of numbers");
  }
  Eigen::VectorXd out(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw ArgumentError(origin + ": expected an array of numbers");
    }
    out(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return out;
}

Eigen::MatrixXd parse_matrix(const json & j, int rows, int cols, const std::string & origin)
{
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw ArgumentError(origin + ": expected a " + std::to_string(rows) + "-row matrix");
  }
  Eigen::MatrixXd out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Eigen::VectorXd row = parse_vector(j[static_cast<std::size_t>(r)], origin);
    if (row.size() != cols) {
      throw ArgumentError(origin + ": expected " + std::to_string(cols) + " columns");
    }
    out.row(r) = row.transpose();
  }
  return out;
}

GroupElement checked_group_element(Eigen::MatrixXd mat, GroupTag tag, const std::string & origin)
{
  GroupElement g{tag, std::move(mat)};
  if (check_group_membership(g).max_defect() > kInputDefectTol) {
    throw ArgumentError(origin + ": matrix is not a valid " + group_name(tag) + " element");
  }
  return g;
}

State parse_state(const json & j, SpaceKind kind, const std::string & origin)
{
  switch (kind) {
    case SpaceKind::R1:
    case SpaceKind::S1: {
      const Eigen::VectorXd coords = parse_vector(j, origin);
      if (coords.size() != 1) {
        throw ArgumentError(origin + ": expected a 1-entry coordinate array");
      }
      return State{ChartPoint{coords}};
    }
    case SpaceKind::SO3: {
      if (j.contains("rotation_z")) {
        return State{GroupElement{GroupTag::SO3, rotation_z(j["rotation_z"].get<double>())}};
      }
      return State{checked_group_element(
        parse_matrix(get_required(j, "matrix", origin), 3, 3, origin), GroupTag::SO3, origin)};
    }
    case SpaceKind::SE3: {
      Eigen::Matrix4d mat = Eigen::Matrix4d::Identity();
      if (j.contains("matrix")) {
        mat = parse_matrix(j["matrix"], 4, 4, origin);
      } else {
        mat.topLeftCorner<3, 3>() =
          rotation_z(get_required(j, "rotation_z", origin).get<double>());
        const Eigen::VectorXd v = parse_vector(get_required(j, "translation", origin), origin);
        if (v.size() != 3) {
          throw ArgumentError(origin + ": expected a 3-entry translation");
        }
        mat.topRightCorner<3, 1>() = v;
      }
      return State{checked_group_element(mat, GroupTag::SE3, origin)};
    }
  }
  throw ArgumentError(origin + ": unknown space kind");
}

std::optional<double> trajectory_t_enter(const Trajectory & traj, double radius)
{
  std::optional<double> t_enter;
  for (auto it = traj.samples.rbegin(); it != traj.samples.rend(); ++it) {
    if (it->dist_to_target < radius) {
      t_enter = it->t;
    } else {
      break;
    }
  }
  return t_enter;
}

void write_text_file(const std::string & path, const std::string & content)
{
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out << content;
  if (!out) {
    throw IoError("failed while writing '" + path + "'");
  }
}

std::string plot_script(const std::string & csv_name, const std::vector<std::string> & columns)
{
  std::ostringstream os;
  os << "#!/usr/bin/env python3\n"
     << "\"\"\"Plots " << csv_name << ": cost, distance to target and state columns.\"\"\"\n"
     << "import csv\n"
     << "import matplotlib\n"
     << "matplotlib.use(\"Agg\")\n"
     << "import matplotlib.pyplot as plt\n"
     << "\n"
     << "CSV = \"" << csv_name << "\"\n"
     << "STATE_COLUMNS = [";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    os << (i == 0 ? "" : ", ") << '"' << columns[i] << '"';
  }
  os << "]\n"
     << "\n"
     << "with open(CSV, newline=\"\") as handle:\n"
     << "    rows = [r for r in csv.DictReader(handle) if not r[\"t\"].startswith(\"#\")]\n"
     << "t = [float(r[\"t\"]) for r in rows]\n"
     << "fig, axes = plt.subplots(3, 1, figsize=(8, 10), sharex=True)\n"
     << "axes[0].plot(t, [float(r[\"cost\"]) for r in rows])\n"
     << "axes[0].set_ylabel(\"cost\")\n"
     << "axes[1].plot(t, [float(r[\"dist_to_target\"]) for r in rows])\n"
     << "axes[1].set_ylabel(\"distance to target\")\n"
     << "for name in STATE_COLUMNS:\n"
     << "    axes[2].plot(t, [float(r[name]) for r in rows], label=name)\n"
     << "axes[2].set_ylabel(\"state\")\n"
     << "axes[2].set_xlabel(\"t\")\n"
     << "axes[2].legend(ncol=4, fontsize=7)\n"
     << "fig.tight_layout()\n"
     << "out = CSV[:-4] + \".png\" if CSV.endswith(\".csv\") else CSV + \".png\"\n"
     << "fig.savefig(out, dpi=150)\n"
     << "print(\"wrote\", out)\n";
  return os.str();
}

json record_to_json(const RunRecord & record)
{
  json j;
  j["experiment"] = record.experiment;
  j["space"] = record.space;
  if (!record.axis.empty()) {
    j["axis"] = record.axis;
    j["axis_value"] = record.axis_value;
  }
  j["initial_cost"] = record.initial_cost;
  j["final_cost"] = record.final_cost;
  j["final_distance"] = record.final_distance;
  if (record.t_enter.has_value()) {
    j["t_enter"] = *record.t_enter;
  } else {
    j["t_enter"] = "never";
  }
  j["duration_seconds"] = record.duration_seconds;
  j["max_membership_defect"] = record.max_membership_defect;
  j["samples"] = record.sample_count;
  j["csv"] = record.csv_path;
  if (!record.error.empty()) {
    j["error"] = record.error;
  }
  return j;
}

int sweep_thread_cap()
{
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) {
    hw = 1;
  }
  if (const char * env = std::getenv("GEOSEEK_THREADS")) {
    const int requested = std::atoi(env);
    if (requested >= 1) {
      return std::min<int>(requested, 64);
    }
  }
  return static_cast<int>(hw);
}

ExperimentConfig make_r1_classic()
{
  ExperimentConfig c;
  c.experiment = "r1_classic";
  c.space = SpaceKind::R1;
  c.cost.type = "quadratic";
  c.initial_state = State{ChartPoint{Eigen::VectorXd::Constant(1, 1.0)}};
  c.dither.amplitudes = Eigen::VectorXd::Constant(1, 0.1);
  c.multiplier_text = {"1"};
  c.dither.multipliers = {parse_rational("1")};
  c.dither.base_frequency = 100.0;
  c.integrator.method = Method::ChartRK4;
  c.integrator.step = 1e-3;
  c.integrator.t0 = 0.0;
  c.integrator.horizon = 2000.0;
  c.integrator.sample_stride = 1000;
  c.target = State{ChartPoint{Eigen::VectorXd::Zero(1)}};
  c.enter_radius = 0.05;
  c.output = "r1_classic";
  return c;
}

ExperimentConfig make_s1_benchmark()
{
  ExperimentConfig c;
  c.experiment = "s1_benchmark";
  c.space = SpaceKind::S1;
  c.cost.type = "cos_well";
  c.cost.theta_star = 1.0;
  c.initial_state = State{ChartPoint{Eigen::VectorXd::Constant(1, 1.5)}};
  c.dither.amplitudes = Eigen::VectorXd::Constant(1, 0.1);
  c.multiplier_text = {"1"};
  c.dither.multipliers = {parse_rational("1")};
  c.dither.base_frequency = 50.0;
  c.integrator.method = Method::ChartRK4;
  c.integrator.step = 1e-3;
  c.integrator.t0 = 0.0;
  c.integrator.horizon = 600.0;
  c.integrator.sample_stride = 500;
  c.target = State{ChartPoint{Eigen::VectorXd::Constant(1, 1.0)}};
  c.enter_radius = 0.1;
  c.output = "s1_benchmark";
  return c;
}

ExperimentConfig make_so3_paper()
{
  ExperimentConfig c;
  c.experiment = "so3_paper";
  c.space = SpaceKind::SO3;
  c.cost.type = "so3_trace";
  c.initial_state = State{GroupElement{GroupTag::SO3, rotation_z(M_PI / 4.0)}};
  c.dither.amplitudes = Eigen::VectorXd::Constant(3, 0.1);
  c.multiplier_text = {"2", "4.1", "6.2"};
  c.dither.multipliers = {parse_rational("2"), parse_rational("4.1"), parse_rational("6.2")};
  c.dither.base_frequency = 1.0;
  c.integrator.method = Method::LieEuler;
  c.integrator.step = 1e-3;
  c.integrator.t0 = 0.0;
  c.integrator.horizon = 200.0;
  c.integrator.sample_stride = 200;
  c.target = State{GroupElement::identity(GroupTag::SO3)};
  c.enter_radius = 0.2;
  c.output = "so3_paper";
  return c;
}

ExperimentConfig make_se3_paper()
{
  ExperimentConfig c;
  c.experiment = "se3_paper";
  c.space = SpaceKind::SE3;
  c.cost.type = "se3_pose";
  Eigen::Matrix4d g0 = Eigen::Matrix4d::Identity();
  g0.topLeftCorner<3, 3>() = rotation_z(M_PI / 4.0);
  g0.topRightCorner<3, 1>() = Eigen::Vector3d(1.0, -1.0, 2.0);
  c.initial_state = State{GroupElement{GroupTag::SE3, g0}};
  c.dither.amplitudes = Eigen::VectorXd::Constant(6, 0.1);
  c.multiplier_text = {"2", "4.1", "6.2", "8.3", "10.4", "12.5"};
  c.dither.multipliers = {
    parse_rational("2"),   parse_rational("4.1"), parse_rational("6.2"),
    parse_rational("8.3"), parse_rational("10.4"), parse_rational("12.5")};
  c.dither.base_frequency = 1.0;
  c.integrator.method = Method::LieEuler;
  c.integrator.step = 1e-3;
  c.integrator.t0 = 0.0;
  c.integrator.horizon = 400.0;
  c.integrator.sample_stride = 400;
  c.target = State{GroupElement::identity(GroupTag::SE3)};
  c.enter_radius = 0.5;
  c.output = "se3_paper";
  return c;
}

}  // namespace

std::string space_kind_name(SpaceKind kind)
{
  switch (kind) {
    case SpaceKind::R1:
      return "R1";
    case SpaceKind::S1:
      return "S1";
    case SpaceKind::SO3:
      return "SO3";
    case SpaceKind::SE3:
      return "SE3";
  }
  return "unknown";
}

SpaceKind space_kind_from_name(const std::string & name)
{
  if (name == "R1") {
    return SpaceKind::R1;
  }
  if (name == "S1") {
    return SpaceKind::S1;
  }
  if (name == "SO3") {
    return SpaceKind::SO3;
  }
  if (name == "SE3") {
    return SpaceKind::SE3;
  }
  throw ArgumentError("unknown space '" + name + "' (expected R1, S1, SO3 or SE3)");
}

SpaceBinding ExperimentConfig::binding() const
{
  switch (space) {
    case SpaceKind::R1:
      return ChartBinding{ManifoldDescriptor::euclidean(1)};
    case SpaceKind::S1:
      return ChartBinding{ManifoldDescriptor::circle()};
    case SpaceKind::SO3:
      return GroupBinding{GroupTag::SO3};
    case SpaceKind::SE3:
      return GroupBinding{GroupTag::SE3};
  }
  throw ArgumentError("unknown space kind");
}

CostOracle ExperimentConfig::oracle() const
{
  CostOracle oracle;
  oracle.target = target;
  if (cost.type == "quadratic") {
    Eigen::VectorXd center = cost.center;
    if (center.size() == 0) {
      center = Eigen::VectorXd::Zero(1);
    }
    oracle.eval = [center](const State & s) {
      return (std::get<ChartPoint>(s).coords - center).squaredNorm();
    };
  } else if (cost.type == "cos_well") {
    const double theta_star = cost.theta_star;
    oracle.eval = [theta_star](const State & s) {
      return 1.0 - std::cos(std::get<ChartPoint>(s).coords(0) - theta_star);
    };
  } else if (cost.type == "so3_trace") {
    // 1/2 |g - I|_F^2, which equals 3 - tr(g) on the group and stays
    // nonnegative under rounding.
    oracle.eval = [](const State & s) {
      const auto & g = std::get<GroupElement>(s);
      return 0.5 * (g.mat - Eigen::Matrix3d::Identity()).squaredNorm();
    };
  } else if (cost.type == "se3_pose") {
    oracle.eval = [](const State & s) {
      const auto & g = std::get<GroupElement>(s);
      const Eigen::Matrix3d r = g.mat.topLeftCorner<3, 3>();
      const Eigen::Vector3d v = g.mat.topRightCorner<3, 1>();
      return 0.5 * (r - Eigen::Matrix3d::Identity()).squaredNorm() + 0.5 * v.squaredNorm();
    };
  } else {
    throw ArgumentError("unknown cost type '" + cost.type + "'");
  }
  return oracle;
}

void ExperimentConfig::validate() const
{
  if (experiment.empty()) {
    throw ArgumentError("experiment name must not be empty");
  }
  const SpaceBinding bind = binding();

  static const std::map<std::string, SpaceKind> cost_spaces = {
    {"quadratic", SpaceKind::R1},
    {"cos_well", SpaceKind::S1},
    {"so3_trace", SpaceKind::SO3},
    {"se3_pose", SpaceKind::SE3},
  };
  const auto it = cost_spaces.find(cost.type);
  if (it == cost_spaces.end()) {
    throw ArgumentError("unknown cost type '" + cost.type + "'");
  }
  if (it->second != space) {
    throw ArgumentError(
      "cost type '" + cost.type + "' does not apply to space " + space_kind_name(space));
  }

  dither.validate();
  if (dither.dim() != space_dim(bind)) {
    throw ArgumentError("dither dimension does not match the space dimension");
  }
  const AmplitudeReport amplitude = validate_dither_amplitude(bind, dither.amplitudes);
  if (!amplitude.pass) {
    std::ostringstream os;
    os << "dither amplitudes fail the safety bound: " << amplitude.bound
       << " >= injectivity radius " << amplitude.radius;
    throw ArgumentError(os.str());
  }

  integrator.validate();
  if (is_chart(bind) && integrator.method != Method::ChartRK4) {
    throw ArgumentError("chart spaces require the chart_rk4 method");
  }
  if (!is_chart(bind) && integrator.method == Method::ChartRK4) {
    throw ArgumentError("group spaces require lie_euler or rkmk4");
  }

  if (!state_matches(bind, initial_state)) {
    throw ArgumentError("initial state does not match the space");
  }
  if (!state_matches(bind, target)) {
    throw ArgumentError("target state does not match the space");
  }
  if (!(enter_radius > 0.0)) {
    throw ArgumentError("enter_radius must be positive");
  }
  if (output.empty()) {
    throw ArgumentError("output path stem must not be empty");
  }
}

ExperimentConfig parse_config_text(const std::string & text, const std::string & origin)
{
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error & e) {
    throw ArgumentError(origin + ": " + e.what());
  }

  ExperimentConfig cfg;
  cfg.experiment = get_required(j, "experiment", origin).get<std::string>();
  cfg.space = space_kind_from_name(get_required(j, "space", origin).get<std::string>());

  const json & cost = get_required(j, "cost", origin);
  cfg.cost.type = get_required(cost, "type", origin).get<std::string>();
  if (cost.contains("theta_star")) {
    cfg.cost.theta_star = cost["theta_star"].get<double>();
  }
  if (cost.contains("center")) {
    cfg.cost.center = parse_vector(cost["center"], origin);
  }

  cfg.initial_state = parse_state(get_required(j, "initial_state", origin), cfg.space, origin);
  cfg.target = parse_state(get_required(j, "target", origin), cfg.space, origin);

  const json & dither = get_required(j, "dither", origin);
  cfg.dither.amplitudes = parse_vector(get_required(dither, "amplitudes", origin), origin);
  const json & multipliers = get_required(dither, "multipliers", origin);
  if (!multipliers.is_array() || multipliers.empty()) {
    throw ArgumentError(origin + ": dither.multipliers must be a non-empty array");
  }
  for (const auto & m : multipliers) {
    if (!m.is_string()) {
      throw ArgumentError(
        origin + ": frequency multipliers must be decimal strings for exact parsing");
    }
    cfg.multiplier_text.push_back(m.get<std::string>());
    cfg.dither.multipliers.push_back(parse_rational(m.get<std::string>()));
  }
  cfg.dither.base_frequency = get_required(dither, "omega", origin).get<double>();

  const json & integ = get_required(j, "integrator", origin);
  cfg.integrator.method =
    method_from_name(get_required(integ, "method", origin).get<std::string>());
  cfg.integrator.step = get_required(integ, "step", origin).get<double>();
  cfg.integrator.horizon = get_required(integ, "t_f", origin).get<double>();
  if (integ.contains("t0")) {
    cfg.integrator.t0 = integ["t0"].get<double>();
  }
  if (integ.contains("sample_stride")) {
    cfg.integrator.sample_stride = integ["sample_stride"].get<int>();
  }
  if (integ.contains("project_each_step")) {
    cfg.integrator.project_each_step = integ["project_each_step"].get<bool>();
  }

  cfg.enter_radius = get_required(j, "enter_radius", origin).get<double>();
  cfg.output = get_required(j, "output", origin).get<std::string>();

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

const std::vector<ExperimentConfig> & builtin_experiments()
{
  static const std::vector<ExperimentConfig> experiments = {
    make_r1_classic(), make_s1_benchmark(), make_so3_paper(), make_se3_paper()};
  return experiments;
}

std::optional<ExperimentConfig> find_builtin(const std::string & name)
{
  for (const auto & cfg : builtin_experiments()) {
    if (cfg.experiment == name) {
      return cfg;
    }
  }
  return std::nullopt;
}

std::vector<std::string> csv_state_columns(SpaceKind space)
{
  switch (space) {
    case SpaceKind::R1:
      return {"x"};
    case SpaceKind::S1:
      return {"theta"};
    case SpaceKind::SO3: {
      std::vector<std::string> cols;
      for (int r = 1; r <= 3; ++r) {
        for (int c = 1; c <= 3; ++c) {
          cols.push_back("g" + std::to_string(r) + std::to_string(c));
        }
      }
      return cols;
    }
    case SpaceKind::SE3: {
      std::vector<std::string> cols;
      for (int r = 1; r <= 3; ++r) {
        for (int c = 1; c <= 4; ++c) {
          cols.push_back("g" + std::to_string(r) + std::to_string(c));
        }
      }
      return cols;
    }
  }
  return {};
}

namespace
{

void append_state_entries(std::ostringstream & os, const State & state, SpaceKind space)
{
  if (const auto * point = std::get_if<ChartPoint>(&state)) {
    for (Eigen::Index i = 0; i < point->coords.size(); ++i) {
      os << ',' << format_full(point->coords(i));
    }
    return;
  }
  const auto & g = std::get<GroupElement>(state);
  const int cols = space == SpaceKind::SO3 ? 3 : 4;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < cols; ++c) {
      os << ',' << format_full(g.mat(r, c));
    }
  }
}

}  // namespace

void write_trajectory_csv(
  const Trajectory & trajectory, SpaceKind space, const std::string & path,
  const std::string & error_marker)
{
  std::ostringstream os;
  os << "t,cost,dist_to_target";
  for (const auto & col : csv_state_columns(space)) {
    os << ',' << col;
  }
  os << '\n';
  for (const auto & sample : trajectory.samples) {
    os << format_full(sample.t) << ',' << format_full(sample.cost) << ','
       << format_full(sample.dist_to_target);
    append_state_entries(os, sample.state, space);
    os << '\n';
  }
  if (!error_marker.empty()) {
    os << "# aborted: " << error_marker << '\n';
  }
  write_text_file(path, os.str());
}

RunRecord run_experiment(const ExperimentConfig & cfg)
{
  cfg.validate();
  const SpaceBinding bind = cfg.binding();
  const ESField field(cfg.dither, cfg.oracle(), bind);
  const std::string csv_path = cfg.output + ".csv";

  RunRecord record;
  record.experiment = cfg.experiment;
  record.space = space_kind_name(cfg.space);
  record.csv_path = csv_path;

  const auto start = std::chrono::steady_clock::now();
  Trajectory trajectory;
  try {
    trajectory = integrate_es(field, cfg.initial_state, cfg.integrator);
  } catch (const IntegrationDivergedError & e) {
    write_trajectory_csv(e.partial_trajectory(), cfg.space, csv_path, e.what());
    throw;
  } catch (const IntegrationChartExitError & e) {
    write_trajectory_csv(e.partial_trajectory(), cfg.space, csv_path, e.what());
    throw;
  }
  const auto stop = std::chrono::steady_clock::now();
  record.duration_seconds = std::chrono::duration<double>(stop - start).count();

  record.initial_cost = trajectory.front().cost;
  record.final_cost = trajectory.back().cost;
  record.final_distance = trajectory.back().dist_to_target;
  record.t_enter = trajectory_t_enter(trajectory, cfg.enter_radius);
  record.max_membership_defect = trajectory.max_membership_defect;
  record.sample_count = trajectory.samples.size();

  write_trajectory_csv(trajectory, cfg.space, csv_path);
  write_text_file(
    cfg.output + ".summary.json", record_to_json(record).dump(2) + "\n");
  {
    const std::filesystem::path csv_file(csv_path);
    write_text_file(
      cfg.output + "_plot.py",
      plot_script(csv_file.filename().string(), csv_state_columns(cfg.space)));
  }
  return record;
}

std::string sweep_axis_name(SweepAxis axis)
{
  switch (axis) {
    case SweepAxis::AmplitudeScale:
      return "amplitude";
    case SweepAxis::Omega:
      return "omega";
    case SweepAxis::Step:
      return "step";
  }
  return "unknown";
}

SweepAxis sweep_axis_from_name(const std::string & name)
{
  if (name == "amplitude" || name == "amplitude-scale") {
    return SweepAxis::AmplitudeScale;
  }
  if (name == "omega") {
    return SweepAxis::Omega;
  }
  if (name == "step") {
    return SweepAxis::Step;
  }
  throw ArgumentError("unknown sweep axis '" + name + "' (expected amplitude, omega or step)");
}

SweepResult run_sweep(
  const ExperimentConfig & base, SweepAxis axis, const std::vector<double> & values)
{
  base.validate();
  if (values.empty()) {
    throw ArgumentError("run_sweep needs at least one value");
  }

  SweepResult result;
  result.axis = axis;
  result.values = values;
  result.records.resize(values.size());
  if (values.size() < 2) {
    result.notes.push_back("insufficient points: a single-value sweep carries no trend");
  }

  // Per-value configs.
  std::vector<ExperimentConfig> configs;
  for (double value : values) {
    ExperimentConfig cfg = base;
    std::ostringstream stem;
    stem << base.output << "_" << sweep_axis_name(axis) << "_" << format_short(value);
    cfg.output = stem.str();
    switch (axis) {
      case SweepAxis::AmplitudeScale:
        cfg.dither.amplitudes =
          (value / base.dither.amplitudes.maxCoeff()) * base.dither.amplitudes;
        break;
      case SweepAxis::Omega:
        cfg.dither.base_frequency = value;
        break;
      case SweepAxis::Step:
        cfg.integrator.step = value;
        break;
    }
    configs.push_back(std::move(cfg));
  }

  // Independent runs, optionally in parallel.
  const int thread_cap =
    std::min<int>(sweep_thread_cap(), static_cast<int>(configs.size()));
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) {
        return;
      }
      RunRecord & record = result.records[i];
      try {
        record = run_experiment(configs[i]);
      } catch (const std::exception & e) {
        record.experiment = configs[i].experiment;
        record.space = space_kind_name(configs[i].space);
        record.csv_path = configs[i].output + ".csv";
        record.error = e.what();
      }
      record.axis = sweep_axis_name(axis);
      record.axis_value = values[i];
    }
  };
  if (thread_cap <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < thread_cap; ++i) {
      threads.emplace_back(worker);
    }
    for (auto & t : threads) {
      t.join();
    }
  }

  // Axis-specific analyses.
  if (axis == SweepAxis::AmplitudeScale) {
    if (values.size() < 3) {
      result.notes.push_back("insufficient points for a residual slope (need >= 3 scales)");
    } else {
      try {
        const ESField field(base.dither, base.oracle(), base.binding());
        result.residual_slope_value =
          residual_slope(field, base.initial_state, values).slope;
      } catch (const std::exception & e) {
        result.notes.push_back(std::string("residual slope unavailable: ") + e.what());
      }
    }
  }
  if (axis == SweepAxis::Omega) {
    if (!is_chart(base.binding())) {
      result.notes.push_back("corrector distances unavailable on group spaces");
    } else {
      for (double value : values) {
        ExperimentConfig cfg = base;
        cfg.dither.base_frequency = value;
        const ESField field(cfg.dither, cfg.oracle(), cfg.binding());
        const double window =
          std::min(kCorrectorWindow, cfg.integrator.horizon - cfg.integrator.t0);
        double sup = 0.0;
        for (int jj = 1; jj <= kCorrectorSampleCount; ++jj) {
          const double t_eval =
            cfg.integrator.t0 + window * jj / static_cast<double>(kCorrectorSampleCount);
          sup = std::max(
            sup,
            corrector_flow(field, cfg.initial_state, t_eval, cfg.integrator).distance);
        }
        result.corrector_sups.push_back(sup);
      }
      for (std::size_t i = 0; i + 1 < result.corrector_sups.size(); ++i) {
        result.corrector_ratios.push_back(
          result.corrector_sups[i + 1] / result.corrector_sups[i]);
      }
      if (result.corrector_sups.size() < 2) {
        result.notes.push_back("insufficient points for corrector ratios (need >= 2 values)");
      }
    }
  }
  return result;
}

std::string emit_summary_table(std::vector<RunRecord> records)
{
  std::sort(records.begin(), records.end(), [](const RunRecord & a, const RunRecord & b) {
    if (a.experiment != b.experiment) {
      return a.experiment < b.experiment;
    }
    return a.axis_value < b.axis_value;
  });

  std::ostringstream os;
  os << "experiment          axis        value      J(0)        J(end)      dist(end)  "
        "t_enter     defect      seconds     status\n";
  for (const auto & r : records) {
    std::ostringstream line;
    auto cell = [&line](const std::string & text, int width) {
      line << text;
      for (int i = static_cast<int>(text.size()); i < width; ++i) {
        line << ' ';
      }
    };
    cell(r.experiment, 20);
    cell(r.axis.empty() ? "-" : r.axis, 12);
    cell(r.axis.empty() ? "-" : format_short(r.axis_value), 11);
    cell(format_short(r.initial_cost), 12);
    cell(format_short(r.final_cost), 12);
    cell(format_short(r.final_distance), 11);
    cell(r.t_enter.has_value() ? format_short(*r.t_enter) : "never", 12);
    cell(format_short(r.max_membership_defect), 12);
    cell(format_short(r.duration_seconds), 12);
    line << (r.error.empty() ? "ok" : r.error);
    os << line.str() << '\n';
  }
  return os.str();
}

std::string emit_summary_json(std::vector<RunRecord> records)
{
  std::sort(records.begin(), records.end(), [](const RunRecord & a, const RunRecord & b) {
    if (a.experiment != b.experiment) {
      return a.experiment < b.experiment;
    }
    return a.axis_value < b.axis_value;
  });
  json arr = json::array();
  for (const auto & r : records) {
    arr.push_back(record_to_json(r));
  }
  return arr.dump(2) + "\n";
}

}  // namespace geoseek
