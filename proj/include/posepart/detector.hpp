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

#include <vector>

#include "posepart/geometry.hpp"
#include "posepart/maps.hpp"

namespace posepart {

struct JointCandidate {
  GridPoint position;
  int joint = 0;
  float score = 0.0f;

  friend bool operator==(const JointCandidate&, const JointCandidate&) = default;
};

/// Canonical candidate order: joint id, then descending score, then row-major
/// position.
bool canonical_less(const JointCandidate& a, const JointCandidate& b);

struct DetectorParams {
  double tau = 0.1;
  /// Chebyshev radius of the suppression window.
  int nms_radius = 3;
};

void validate(const DetectorParams& params);

/// Peaks of each joint map with score >= tau that are >= all 8 neighbours
/// and > at least one, followed by greedy suppression in descending score
/// (row-major first on ties) within the Chebyshev window. Output is in
/// canonical order.
std::vector<JointCandidate> detect_candidates(const ConfidenceMapSet& conf,
                                              const DetectorParams& params);

}  // namespace posepart
