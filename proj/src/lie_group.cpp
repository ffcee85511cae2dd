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

#include "geoseek/lie_group.hpp"

#include <cmath>
#include <sstream>

namespace geoseek
{

namespace
{

constexpr double kSmallAngle = 1e-6;
constexpr double kAntisymmetryTol = 1e-10;
constexpr int kPolarMaxIterations = 50;

// theta for the paper's coordinate convention S = [[0, a, b], [-a, 0, c], [-b, -c, 0]].
double rotation_angle_of(const Eigen::Matrix3d & s)
{
  return std::sqrt(s(0, 1) * s(0, 1) + s(0, 2) * s(0, 2) + s(1, 2) * s(1, 2));
}

void require_antisymmetric(const Eigen::Matrix3d & s)
{
  if ((s + s.transpose()).norm() >= kAntisymmetryTol) {
    throw ArgumentError("expected an antisymmetric 3x3 matrix");
  }
}

// sin(theta)/theta and (1 - cos(theta))/theta^2 with 4th-order series below
// the small-angle threshold.
void rodrigues_coefficients(double theta, double & c_sin, double & c_cos)
{
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    c_sin = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    c_cos = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    c_sin = std::sin(theta) / theta;
    c_cos = (1.0 - std::cos(theta)) / (theta * theta);
  }
}

Eigen::Matrix3d rodrigues(const Eigen::Matrix3d & s)
{
  const double theta = rotation_angle_of(s);
  double c_sin = 0.0;
  double c_cos = 0.0;
  rodrigues_coefficients(theta, c_sin, c_cos);
  return Eigen::Matrix3d::Identity() + c_sin * s + c_cos * (s * s);
}

Eigen::Matrix3d nearest_rotation(const Eigen::Matrix3d & raw)
{
  // Newton iteration for the orthogonal polar factor.
  Eigen::Matrix3d x = raw;
  for (int it = 0; it < kPolarMaxIterations; ++it) {
    Eigen::FullPivLU<Eigen::Matrix3d> lu(x);
    if (!lu.isInvertible()) {
      throw NumericalError("polar iteration hit a singular iterate");
    }
    const Eigen::Matrix3d next = 0.5 * (x + lu.inverse().transpose().eval());
    const double delta = (next - x).norm();
    x = next;
    if (delta < 1e-15) {
      if (x.determinant() <= 0.0) {
        throw NumericalError("nearest orthogonal factor is not a rotation");
      }
      return x;
    }
  }
  throw NumericalError("polar iteration did not converge");
}

void require_tag_match(const GroupElement & g1, const GroupElement & g2)
{
  if (g1.tag != g2.tag) {
    throw ArgumentError("group elements carry different group tags");
  }
}

std::vector<Eigen::MatrixXd> make_so3_basis()
{
  Eigen::Matrix3d b1 = Eigen::Matrix3d::Zero();
  b1(0, 1) = 1.0;
  b1(1, 0) = -1.0;
  Eigen::Matrix3d b2 = Eigen::Matrix3d::Zero();
  b2(1, 2) = 1.0;
  b2(2, 1) = -1.0;
  Eigen::Matrix3d b3 = Eigen::Matrix3d::Zero();
  b3(0, 2) = 1.0;
  b3(2, 0) = -1.0;
  return {b1, b2, b3};
}

std::vector<Eigen::MatrixXd> make_se3_basis()
{
  std::vector<Eigen::MatrixXd> basis;
  auto zero = [] { return Eigen::Matrix4d::Zero().eval(); };
  Eigen::Matrix4d b1 = zero();
  b1(0, 1) = 1.0;
  b1(1, 0) = -1.0;
  Eigen::Matrix4d b2 = zero();
  b2(0, 2) = 1.0;
  b2(2, 0) = -1.0;
  Eigen::Matrix4d b3 = zero();
  b3(1, 2) = 1.0;
  b3(2, 1) = -1.0;
  basis.insert(basis.end(), {b1, b2, b3});
  for (int i = 0; i < 3; ++i) {
    Eigen::Matrix4d t = zero();
    t(i, 3) = 1.0;
    basis.push_back(t);
  }
  return basis;
}

}  // namespace

int group_matrix_size(GroupTag tag)
{
  return tag == GroupTag::SO3 ? 3 : 4;
}

int group_algebra_dim(GroupTag tag)
{
  return tag == GroupTag::SO3 ? 3 : 6;
}

std::string group_name(GroupTag tag)
{
  return tag == GroupTag::SO3 ? "SO(3)" : "SE(3)";
}

GroupElement GroupElement::identity(GroupTag tag)
{
  const int k = group_matrix_size(tag);
  return GroupElement{tag, Eigen::MatrixXd::Identity(k, k)};
}

const std::vector<Eigen::MatrixXd> & algebra_basis(GroupTag tag)
{
  static const std::vector<Eigen::MatrixXd> so3 = make_so3_basis();
  static const std::vector<Eigen::MatrixXd> se3 = make_se3_basis();
  return tag == GroupTag::SO3 ? so3 : se3;
}

Eigen::MatrixXd algebra_from_coords(const Eigen::VectorXd & coeffs, GroupTag tag)
{
  const int n = group_algebra_dim(tag);
  if (coeffs.size() != n) {
    std::ostringstream os;
    os << "expected " << n << " algebra coordinates for " << group_name(tag) << ", got "
       << coeffs.size();
    throw ArgumentError(os.str());
  }
  const int k = group_matrix_size(tag);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k, k);
  const auto & basis = algebra_basis(tag);
  for (int i = 0; i < n; ++i) {
    out += coeffs(i) * basis[i];
  }
  return out;
}

Eigen::VectorXd coords_from_algebra(const Eigen::MatrixXd & algebra, GroupTag tag)
{
  const int k = group_matrix_size(tag);
  if (algebra.rows() != k || algebra.cols() != k) {
    throw ArgumentError("algebra matrix has the wrong size for " + group_name(tag));
  }
  if (tag == GroupTag::SO3) {
    Eigen::VectorXd c(3);
    c << algebra(0, 1), algebra(1, 2), algebra(0, 2);
    return c;
  }
  Eigen::VectorXd c(6);
  c << algebra(0, 1), algebra(0, 2), algebra(1, 2), algebra(0, 3), algebra(1, 3), algebra(2, 3);
  return c;
}

GroupElement so3_exp(const Eigen::Matrix3d & antisymmetric)
{
  require_antisymmetric(antisymmetric);
  return GroupElement{GroupTag::SO3, rodrigues(antisymmetric)};
}

GroupElement se3_exp(const Eigen::Matrix4d & xi)
{
  const Eigen::Matrix3d s = xi.topLeftCorner<3, 3>();
  require_antisymmetric(s);
  if (xi.row(3).norm() != 0.0) {
    throw ArgumentError("se(3) matrix must have a zero bottom row");
  }
  const Eigen::Vector3d v = xi.topRightCorner<3, 1>();

  const double theta = rotation_angle_of(s);
  Eigen::Matrix3d a;
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    const double c1 = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;       // (1 - cos)/theta^2
    const double c2 = 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;  // (theta - sin)/theta^3
    a = Eigen::Matrix3d::Identity() + c1 * s + c2 * (s * s);
  } else {
    a = Eigen::Matrix3d::Identity() + ((1.0 - std::cos(theta)) / (theta * theta)) * s +
        ((theta - std::sin(theta)) / (theta * theta * theta)) * (s * s);
  }

  Eigen::Matrix4d out = Eigen::Matrix4d::Identity();
  out.topLeftCorner<3, 3>() = rodrigues(s);
  out.topRightCorner<3, 1>() = a * v;
  return GroupElement{GroupTag::SE3, out};
}

GroupElement group_exp(const Eigen::MatrixXd & algebra, GroupTag tag)
{
  const int k = group_matrix_size(tag);
  if (algebra.rows() != k || algebra.cols() != k) {
    throw ArgumentError("algebra matrix has the wrong size for " + group_name(tag));
  }
  if (tag == GroupTag::SO3) {
    return so3_exp(Eigen::Matrix3d(algebra));
  }
  return se3_exp(Eigen::Matrix4d(algebra));
}

Eigen::MatrixXd left_translate(const GroupElement & g, const Eigen::MatrixXd & algebra)
{
  if (g.mat.cols() != algebra.rows()) {
    throw ArgumentError("left_translate: incompatible matrix dimensions");
  }
  return g.mat * algebra;
}

GroupElement project_to_group(const Eigen::MatrixXd & raw, GroupTag tag)
{
  const int k = group_matrix_size(tag);
  if (raw.rows() != k || raw.cols() != k) {
    throw ArgumentError("matrix has the wrong size for " + group_name(tag));
  }
  if (tag == GroupTag::SO3) {
    return GroupElement{tag, nearest_rotation(Eigen::Matrix3d(raw))};
  }
  Eigen::Matrix4d out = Eigen::Matrix4d(raw);
  out.topLeftCorner<3, 3>() = nearest_rotation(out.topLeftCorner<3, 3>());
  out.row(3) << 0.0, 0.0, 0.0, 1.0;
  return GroupElement{tag, out};
}

double group_distance(const GroupElement & g1, const GroupElement & g2)
{
  require_tag_match(g1, g2);
  const Eigen::Matrix3d r1 = g1.mat.topLeftCorner<3, 3>();
  const Eigen::Matrix3d r2 = g2.mat.topLeftCorner<3, 3>();
  const double c = ((r1.transpose() * r2).trace() - 1.0) / 2.0;
  const double angle = std::acos(std::clamp(c, -1.0, 1.0));
  if (g1.tag == GroupTag::SO3) {
    return angle;
  }
  const Eigen::Vector3d dt =
    g1.mat.topRightCorner<3, 1>() - g2.mat.topRightCorner<3, 1>();
  return std::sqrt(angle * angle + dt.squaredNorm());
}

double MembershipReport::max_defect() const
{
  return std::max({orthogonality_defect, det_defect, bottom_row_defect});
}

MembershipReport check_group_membership(const GroupElement & g)
{
  MembershipReport report;
  const Eigen::Matrix3d r = g.mat.topLeftCorner<3, 3>();
  report.orthogonality_defect = (r * r.transpose() - Eigen::Matrix3d::Identity()).norm();
  report.det_defect = std::abs(r.determinant() - 1.0);
  if (g.tag == GroupTag::SE3) {
    Eigen::RowVector4d fixed;
    fixed << 0.0, 0.0, 0.0, 1.0;
    report.bottom_row_defect = (g.mat.bottomRows<1>() - fixed).norm();
  }
  return report;
}

Eigen::Matrix3d rotation_z(double angle)
{
  Eigen::Matrix3d r;
  r << std::cos(angle), -std::sin(angle), 0.0,  //
    std::sin(angle), std::cos(angle), 0.0,      //
    0.0, 0.0, 1.0;
  return r;
}

}  // namespace geoseek
