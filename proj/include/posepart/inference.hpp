/*
   Copyright 2026 The posepart Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "posepart/detector.hpp"
#include "posepart/maps.hpp"
#include "posepart/partition.hpp"
#include "posepart/scene.hpp"

namespace posepart {

struct PoseJoint {
  /// Index of the source candidate in the detector output.
  std::size_t candidate = 0;
  GridPoint position;
  float score = 0.0f;
  /// The candidate's embedding point.
  Point vote;
};

struct PersonPose {
  /// One slot per joint category.
  std::vector<std::optional<PoseJoint>> joints;
  /// Running centroid after the last accepted joint.
  Point final_centroid;
  /// Index of the partition the pose was inferred from.
  std::size_t partition = 0;
  int root_joint = 0;

  int joint_count() const;
};

/// Running energy after one greedy acceptance. The first entry of a trace
/// has no acceptance (`joint == -1`) and holds the starting energy.
struct EnergyStep {
  std::size_t partition = 0;
  std::size_t pose = 0;
  int joint = -1;
  std::size_t candidate = 0;
  double energy = 0.0;
};

struct PoseSet {
  std::vector<PersonPose> poses;
  std::vector<EnergyStep> trace;
  std::size_t num_partitions = 0;
};

/// Pairwise proximities and unary terms of one partition's members.
struct ProximityReport {
  /// Row-major n x n, n = members.size().
  std::vector<double> pairwise;
  std::vector<double> unary;
  std::size_t size = 0;

  double at(std::size_t v, std::size_t w) const { return pairwise[v * size + w]; }
};

/// Detector confidence at the candidate's position. Throws a parameter error
/// for off-grid candidates.
double unary(const JointCandidate& candidate, const ConfidenceMapSet& conf);

/// 1[s_a >= tau] 1[s_b >= tau] exp(-|h_a - h_b|^2).
double pairwise(const JointCandidate& a, const JointCandidate& b, const RegressionMapSet& reg,
                double tau);

ProximityReport proximity_report(const Partition& partition, const ConfidenceMapSet& conf,
                                 const RegressionMapSet& reg, double tau);

/// Local greedy inference inside one partition.
///
/// Until the pool is empty: the root is the highest-confidence candidate of
/// the lowest-ranked category still present; then every other category, in
/// rank order, contributes the available candidate whose vote is nearest the
/// running centroid (mean of the accepted votes). Equal distances go to the
/// higher confidence, then the row-major first position.
///
/// If `trace` is given, one step per acceptance is appended, starting from
/// `energy_start` and lowering the energy by the unary term and the pairwise
/// terms to the joints already in the pose.
std::vector<PersonPose> greedy_infer(const Partition& partition, const ConfidenceMapSet& conf,
                                     const RegressionMapSet& reg, const JointLayout& layout,
                                     double tau, std::vector<EnergyStep>* trace = nullptr,
                                     double energy_start = 0.0, std::size_t partition_index = 0,
                                     std::size_t first_pose_index = 0);

/// Greedy inference over every partition in order. The trace starts at
/// -partition_score(partitions).
PoseSet infer_all(std::span<const Partition> partitions, const ConfidenceMapSet& conf,
                  const RegressionMapSet& reg, const JointLayout& layout, double tau);

/// E = -phi(p, g) - sum over poses of (sum of unary terms + sum of pairwise
/// terms over unordered joint pairs of the pose).
double energy(std::span<const PersonPose> poses, std::span<const Partition> partitions,
              const ConfidenceMapSet& conf, const RegressionMapSet& reg, double tau);

}  // namespace posepart
