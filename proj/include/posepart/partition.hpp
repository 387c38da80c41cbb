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
#include <span>
#include <vector>

#include "posepart/detector.hpp"
#include "posepart/geometry.hpp"
#include "posepart/maps.hpp"

namespace posepart {

/// A candidate's hypothesis for its person's centroid.
struct Vote {
  JointCandidate source;
  /// Index of `source` in the candidate list that was embedded.
  std::size_t index = 0;
  /// p + Z * T_joint(p).
  Point point;
};

struct ClusterParams {
  /// Average-linkage merge cutoff in pixels. Merging stops once the closest
  /// pair of clusters is farther apart than this.
  double link_threshold = 1.0;
  /// Per-joint vote weights; empty means 1 for every joint.
  std::vector<double> weights;

  double weight(int joint) const {
    return weights.empty() ? 1.0 : weights[static_cast<std::size_t>(joint)];
  }
};

void validate(const ClusterParams& params);

struct Partition {
  /// Members in canonical candidate order.
  std::vector<Vote> members;
  /// Mean of the member vote points.
  Point centroid;
  /// log of the vote density at `centroid`.
  double score = 0.0;
};

/// The embedding f_j(p) = p + Z * T_j(p) for a single grid point.
Point embed_point(const RegressionMapSet& reg, int joint, GridPoint p);

/// One vote per candidate. Throws a parameter error for candidates outside
/// the map grid or with an unknown joint id.
std::vector<Vote> embed(std::span<const JointCandidate> candidates, const RegressionMapSet& reg);

/// Sum over votes of w_j * exp(-|h_v - h|^2). Unnormalized.
double vote_density(Point h, std::span<const Vote> votes, const ClusterParams& params);

/// log(vote_density), evaluated with log-sum-exp so that far-away votes do
/// not underflow. -infinity when every vote has zero weight.
double log_vote_density(Point h, std::span<const Vote> votes, const ClusterParams& params);

/// Average-linkage agglomerative clustering of the vote points. Votes are
/// first put in canonical candidate order; a cluster's id is the canonical
/// position of its first member and ties between equally close pairs go to
/// the lexicographically smallest (id, id). Output partitions are ordered by
/// id, which makes the result independent of the input order.
std::vector<Partition> cluster_votes(std::span<const Vote> votes, const ClusterParams& params);

/// Sum of the partition log-densities. Throws if any score is not finite.
double partition_score(std::span<const Partition> partitions);

/// Relative tolerance under which two linkage values count as tied.
inline constexpr double kLinkageTieTolerance = 1e-12;

}  // namespace posepart
