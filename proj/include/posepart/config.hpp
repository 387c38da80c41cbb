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

#include <cstdint>
#include <optional>
#include <vector>

#include "posepart/corpus.hpp"
#include "posepart/detector.hpp"
#include "posepart/eval.hpp"
#include "posepart/maps.hpp"
#include "posepart/partition.hpp"
#include "posepart/scene.hpp"

namespace posepart {

/// Every tunable constant of the pipeline in one place. A single `tau` feeds
/// map construction, detection and inference.
struct PipelineConfig {
  double sigma = 7.0;
  double radius = 7.0;
  double tau = 0.1;
  int nms_radius = 3;
  /// Explicit clustering cutoff in pixels; empty means link_fraction * Z.
  std::optional<double> link_threshold;
  double link_fraction = 0.1;
  /// Per-joint vote weights; empty means 1 for every joint.
  std::vector<double> weights;
  /// Weight of the regression term in the map loss.
  double alpha = 1.0;
  JointLayout layout = mpii_layout();
  MatchParams match;
  CorpusSpec corpus;
  std::uint64_t seed = 0;

  ForwardParams forward() const { return {sigma, radius, tau}; }
  DetectorParams detector() const { return {tau, nms_radius}; }
  /// Resolves the link threshold against the map norm factor Z.
  ClusterParams cluster(double norm_factor) const;
};

/// Throws a config error on any out-of-range field.
void validate(const PipelineConfig& config);

}  // namespace posepart
