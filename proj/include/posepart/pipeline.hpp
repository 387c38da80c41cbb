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

#include <span>
#include <vector>

#include "posepart/config.hpp"
#include "posepart/detector.hpp"
#include "posepart/inference.hpp"
#include "posepart/maps.hpp"
#include "posepart/partition.hpp"

namespace posepart {

struct MapPair {
  ConfidenceMapSet conf;
  RegressionMapSet reg;
};

/// Ground-truth maps for a scene.
MapPair synthesize(const Scene& scene, const PipelineConfig& config);

/// Throws a dimension error when the two map sets disagree on K, H or W, or
/// when K differs from the layout.
void check_compatible(const ConfidenceMapSet& conf, const RegressionMapSet& reg, const JointLayout& layout);

/// Embeds and clusters candidates. `link_threshold`, if given, receives the
/// resolved cutoff.
std::vector<Partition> partition_candidates(std::span<const JointCandidate> candidates,
                                            const RegressionMapSet& reg, const PipelineConfig& config,
                                            double* link_threshold = nullptr);

struct DecodeResult {
  std::vector<JointCandidate> candidates;
  std::vector<Partition> partitions;
  PoseSet poses;
  double link_threshold = 0.0;
};

/// detect -> partition -> greedy inference.
DecodeResult decode(const ConfidenceMapSet& conf, const RegressionMapSet& reg, const PipelineConfig& config);

}  // namespace posepart
