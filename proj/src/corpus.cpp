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

#include "posepart/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "posepart/error.hpp"

namespace posepart {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int SplitMix64::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo + 1);
  return lo + static_cast<int>(next() % span);
}

void validate(const CorpusSpec& spec) {
  if (spec.num_scenes < 0) throw config_error("corpus num_scenes must be non-negative");
  if (spec.min_persons < 1 || spec.max_persons < spec.min_persons)
    throw config_error("corpus person range must satisfy 1 <= min <= max");
  if (!(spec.min_separation >= 0.0)) throw config_error("corpus min_separation must be non-negative");
  if (spec.height < 1 || spec.width < 1) throw config_error("corpus canvas must be at least 1x1");
  if (!(spec.jitter >= 0.0)) throw config_error("corpus jitter must be non-negative");
  if (!(spec.min_scale > 0.0) || spec.max_scale < spec.min_scale)
    throw config_error("corpus scale range must satisfy 0 < min <= max");
  if (spec.max_attempts < 1) throw config_error("corpus max_attempts must be positive");
}

std::vector<Point> skeleton_template(const JointLayout& layout) {
  // Upright person facing the camera: right side on the image left.
  static const std::map<std::string, Point> kOffsets = {
      {"head_top", {0, -45}},     {"upper_neck", {0, -33}}, {"thorax", {0, -27}},
      {"pelvis", {0, 5}},         {"r_hip", {-8, 5}},       {"l_hip", {8, 5}},
      {"r_knee", {-9, 25}},       {"l_knee", {9, 25}},      {"r_ankle", {-10, 45}},
      {"l_ankle", {10, 45}},      {"r_shoulder", {-12, -27}}, {"l_shoulder", {12, -27}},
      {"r_elbow", {-16, -12}},    {"l_elbow", {16, -12}},   {"r_wrist", {-18, 2}},
      {"l_wrist", {18, 2}},
  };
  std::vector<Point> out;
  for (const auto& spec : layout.joints()) {
    const auto it = kOffsets.find(spec.name);
    if (it == kOffsets.end())
      throw config_error("no skeleton template entry for joint '" + spec.name + "'");
    out.push_back(it->second);
  }
  return out;
}

namespace {

std::optional<PersonAnnotation> place_person(const CorpusSpec& spec, const std::vector<Point>& tmpl,
                                             SplitMix64& rng) {
  const double scale = rng.uniform(spec.min_scale, spec.max_scale);
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  for (const Point p : tmpl) {
    min_x = std::min(min_x, scale * p.x);
    max_x = std::max(max_x, scale * p.x);
    min_y = std::min(min_y, scale * p.y);
    max_y = std::max(max_y, scale * p.y);
  }
  // keep a one-pixel margin so rounding never leaves the canvas
  const double lo_x = -min_x + spec.jitter + 1.0;
  const double hi_x = spec.width - 2.0 - max_x - spec.jitter;
  const double lo_y = -min_y + spec.jitter + 1.0;
  const double hi_y = spec.height - 2.0 - max_y - spec.jitter;
  if (hi_x < lo_x || hi_y < lo_y) return std::nullopt;

  const Point anchor{rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y)};
  PersonAnnotation person;
  for (const Point offset : tmpl) {
    Point p = anchor + scale * offset +
              Point{rng.uniform(-spec.jitter, spec.jitter), rng.uniform(-spec.jitter, spec.jitter)};
    if (spec.integer_coords) p = {std::round(p.x), std::round(p.y)};
    p.x = std::clamp(p.x, 0.0, spec.width - 1.0);
    p.y = std::clamp(p.y, 0.0, spec.height - 1.0);
    person.joints.emplace_back(p);
  }
  return person;
}

}  // namespace

std::vector<Scene> generate_corpus(const CorpusSpec& spec, std::uint64_t seed, const JointLayout& layout) {
  validate(spec);
  const auto tmpl = skeleton_template(layout);
  SplitMix64 rng(seed);
  std::vector<Scene> corpus;
  corpus.reserve(static_cast<std::size_t>(spec.num_scenes));

  for (int s = 0; s < spec.num_scenes; ++s) {
    const int persons = rng.uniform_int(spec.min_persons, spec.max_persons);
    bool placed_all = false;
    Scene scene;
    for (int restart = 0; restart < spec.max_attempts && !placed_all; ++restart) {
      scene = Scene{spec.height, spec.width, layout, {}};
      std::vector<Point> centroids;
      placed_all = true;
      for (int i = 0; i < persons && placed_all; ++i) {
        bool ok = false;
        for (int attempt = 0; attempt < spec.max_attempts && !ok; ++attempt) {
          auto person = place_person(spec, tmpl, rng);
          if (!person) break;
          const Point c = derive_centroid(*person);
          ok = std::all_of(centroids.begin(), centroids.end(),
                           [&](Point q) { return distance(c, q) >= spec.min_separation; });
          if (ok) {
            centroids.push_back(c);
            scene.persons.push_back(std::move(*person));
          }
        }
        placed_all = ok;
      }
    }
    if (!placed_all)
      throw config_error("cannot place " + std::to_string(persons) + " persons " +
                         std::to_string(spec.min_separation) + " px apart on a " +
                         std::to_string(spec.width) + "x" + std::to_string(spec.height) + " canvas");
    corpus.push_back(std::move(scene));
  }
  return corpus;
}

}  // namespace posepart
