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

#include "posepart/detector.hpp"

#include <algorithm>
#include <cstdlib>

#include "posepart/error.hpp"
#include "posepart/parallel.hpp"

namespace posepart {

bool canonical_less(const JointCandidate& a, const JointCandidate& b) {
  if (a.joint != b.joint) return a.joint < b.joint;
  if (a.score != b.score) return a.score > b.score;
  return row_major_less(a.position, b.position);
}

void validate(const DetectorParams& params) {
  if (!(params.tau > 0.0 && params.tau < 1.0)) throw config_error("tau must lie in (0, 1)");
  if (params.nms_radius < 1) throw config_error("nms_radius must be at least 1");
}

namespace {

std::vector<JointCandidate> detect_plane(const ConfidenceMapSet& conf, int joint,
                                         const DetectorParams& params) {
  const int h = conf.dims().height;
  const int w = conf.dims().width;
  const double tau = params.tau;

  std::vector<JointCandidate> peaks;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float v = conf.at(joint, y, x);
      if (!(static_cast<double>(v) >= tau)) continue;
      bool dominates = true;
      bool strict = false;
      for (int dy = -1; dy <= 1 && dominates; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const float n = conf.at(joint, ny, nx);
          if (n > v) {
            dominates = false;
            break;
          }
          if (n < v) strict = true;
        }
      }
      if (dominates && strict) peaks.push_back({{x, y}, joint, v});
    }
  }

  std::sort(peaks.begin(), peaks.end(), canonical_less);
  std::vector<JointCandidate> kept;
  for (const auto& peak : peaks) {
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](const JointCandidate& k) {
      return std::abs(k.position.x - peak.position.x) <= params.nms_radius &&
             std::abs(k.position.y - peak.position.y) <= params.nms_radius;
    });
    if (!suppressed) kept.push_back(peak);
  }
  return kept;
}

}  // namespace

std::vector<JointCandidate> detect_candidates(const ConfidenceMapSet& conf,
                                              const DetectorParams& params) {
  validate(params);
  const int k = conf.dims().joints;
  std::vector<std::vector<JointCandidate>> per_joint(static_cast<std::size_t>(std::max(k, 0)));
  parallel_for(per_joint.size(), [&](std::size_t j) {
    per_joint[j] = detect_plane(conf, static_cast<int>(j), params);
  });
  std::vector<JointCandidate> out;
  for (auto& list : per_joint) out.insert(out.end(), list.begin(), list.end());
  return out;
}

}  // namespace posepart
