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
#include <vector>

#include "posepart/scene.hpp"

namespace posepart {

struct CorpusSpec {
  int num_scenes = 200;
  int min_persons = 1;
  int max_persons = 5;
  /// Minimum distance between any two person centroids.
  double min_separation = 60.0;
  int height = 256;
  int width = 256;
  /// Per-joint uniform jitter, in pixels, applied to the skeleton template.
  double jitter = 3.0;
  double min_scale = 0.8;
  double max_scale = 1.2;
  bool integer_coords = true;
  /// Placement retries per person and restarts per scene.
  int max_attempts = 1000;
};

void validate(const CorpusSpec& spec);

/// Small deterministic generator (SplitMix64). Used instead of the standard
/// distributions, whose output is implementation-defined.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

 private:
  std::uint64_t state_;
};

/// Standing skeleton template, offsets from the person anchor in pixels, for
/// a layout whose joint names follow MPII. Throws a config error for joints
/// the template does not know.
std::vector<Point> skeleton_template(const JointLayout& layout);

/// Scenes with a random number of persons in [min_persons, max_persons],
/// each a scaled and jittered template whose derived centroid keeps
/// min_separation from every other. Deterministic per seed. Throws a config
/// error when placement keeps failing.
std::vector<Scene> generate_corpus(const CorpusSpec& spec, std::uint64_t seed,
                                   const JointLayout& layout = mpii_layout());

}  // namespace posepart
