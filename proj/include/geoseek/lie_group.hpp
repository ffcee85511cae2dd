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

#ifndef GEOSEEK_LIE_GROUP_HPP_
#define GEOSEEK_LIE_GROUP_HPP_

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "geoseek/errors.hpp"

namespace geoseek
{

enum class GroupTag { SO3, SE3 };

/// Matrix size: 3 for SO(3), 4 for SE(3).
int group_matrix_size(GroupTag tag);
/// Algebra dimension: 3 for so(3), 6 for se(3).
int group_algebra_dim(GroupTag tag);
std::string group_name(GroupTag tag);

/// An element of SO(3) or SE(3), stored as its k x k matrix.
struct GroupElement
{
  GroupTag tag = GroupTag::SO3;
  Eigen::MatrixXd mat;

  static GroupElement identity(GroupTag tag);
};

/// The ordered algebra basis matrices. For so(3) the generators fill, in
/// order, the (1,2), (2,3) and (1,3) upper entries; for se(3) the rotation
/// generators fill the (1,2), (1,3) and (2,3) entries followed by the three
/// translation generators.
const std::vector<Eigen::MatrixXd> & algebra_basis(GroupTag tag);

/// sum_i coeffs_i * basis_i.
Eigen::MatrixXd algebra_from_coords(const Eigen::VectorXd & coeffs, GroupTag tag);

/// Inverse of algebra_from_coords; reads the defining entries back off.
Eigen::VectorXd coords_from_algebra(const Eigen::MatrixXd & algebra, GroupTag tag);

/// Rodrigues closed form for a 3x3 antisymmetric matrix, with a series
/// fallback below theta = 1e-6.
GroupElement so3_exp(const Eigen::Matrix3d & antisymmetric);

/// Closed-form exponential of a 4x4 se(3) matrix [[S, v], [0, 0]].
GroupElement se3_exp(const Eigen::Matrix4d & xi);

/// Closed-form exponential of an algebra matrix of either group.
GroupElement group_exp(const Eigen::MatrixXd & algebra, GroupTag tag);

/// g * X: the pushforward of left translation applied to an algebra-valued
/// matrix, giving the left-invariant field value at g.
Eigen::MatrixXd left_translate(const GroupElement & g, const Eigen::MatrixXd & algebra);

/// Replaces the rotation block by its nearest special-orthogonal matrix
/// (Newton iteration for the orthogonal polar factor) and re-fixes the
/// SE(3) bottom row.
GroupElement project_to_group(const Eigen::MatrixXd & raw, GroupTag tag);

/// SO(3): rotation angle between g1 and g2. SE(3): sqrt(angle^2 + |dt|^2),
/// a monitoring proxy rather than a left-invariant geodesic distance.
double group_distance(const GroupElement & g1, const GroupElement & g2);

struct MembershipReport
{
  double orthogonality_defect = 0.0;  // |R R^T - I|_F of the rotation block
  double det_defect = 0.0;            // |det(R) - 1|
  double bottom_row_defect = 0.0;     // SE(3) only, else 0

  double max_defect() const;
};

MembershipReport check_group_membership(const GroupElement & g);

/// Rotation by `angle` about the z axis.
Eigen::Matrix3d rotation_z(double angle);

}  // namespace geoseek

#endif  // GEOSEEK_LIE_GROUP_HPP_
