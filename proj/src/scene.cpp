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

#include "posepart/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "posepart/error.hpp"

namespace posepart {

const char* to_string(JointGroup group) {
  switch (group) {
    case JointGroup::neck: return "neck";
    case JointGroup::torso: return "torso";
    case JointGroup::limb: return "limb";
  }
  return "limb";
}

JointGroup joint_group_from_string(const std::string& name) {
  if (name == "neck") return JointGroup::neck;
  if (name == "torso") return JointGroup::torso;
  if (name == "limb") return JointGroup::limb;
  throw config_error("unknown joint group '" + name + "'");
}

JointLayout::JointLayout(std::vector<JointSpec> joints) {
  const int k = static_cast<int>(joints.size());
  if (k == 0) throw config_error("joint layout is empty");

  std::sort(joints.begin(), joints.end(),
            [](const JointSpec& a, const JointSpec& b) { return a.id < b.id; });
  for (int j = 0; j < k; ++j) {
    if (joints[j].id != j)
      throw config_error("joint ids must be a permutation of 0..K-1");
  }

  int necks = 0;
  std::vector<int> order(k, -1);
  for (const auto& spec : joints) {
    if (spec.group == JointGroup::neck) ++necks;
    if (spec.rank < 0 || spec.rank >= k || order[spec.rank] != -1)
      throw config_error("joint ranks must be a permutation of 0..K-1");
    order[spec.rank] = spec.id;
    if (spec.mirror_id < 0 || spec.mirror_id >= k)
      throw config_error("mirror id out of range for joint '" + spec.name + "'");
  }
  if (necks != 1) throw config_error("exactly one joint must be in group 'neck'");

  for (const auto& spec : joints) {
    if (joints[spec.mirror_id].mirror_id != spec.id)
      throw config_error("mirror table is not symmetric at joint '" + spec.name + "'");
  }

  // neck < torso < limb along the rank order
  for (int r = 1; r < k; ++r) {
    if (static_cast<int>(joints[order[r - 1]].group) > static_cast<int>(joints[order[r]].group))
      throw config_error("joint ranks must visit neck, then torso, then limb joints");
  }
  if (joints[order[0]].group != JointGroup::neck)
    throw config_error("the neck joint must have rank 0");

  joints_ = std::move(joints);
  order_ = std::move(order);
}

std::optional<int> JointLayout::find(const std::string& name) const {
  for (const auto& spec : joints_) {
    if (spec.name == name) return spec.id;
  }
  return std::nullopt;
}

bool operator==(const JointLayout& a, const JointLayout& b) {
  if (a.size() != b.size()) return false;
  for (int j = 0; j < a.size(); ++j) {
    const auto& x = a[j];
    const auto& y = b[j];
    if (x.name != y.name || x.group != y.group || x.rank != y.rank ||
        x.mirror_id != y.mirror_id)
      return false;
  }
  return true;
}

const JointLayout& mpii_layout() {
  using G = JointGroup;
  static const JointLayout layout({
      {0, "r_ankle", G::limb, 10, 5},
      {1, "r_knee", G::limb, 8, 4},
      {2, "r_hip", G::torso, 4, 3},
      {3, "l_hip", G::torso, 5, 2},
      {4, "l_knee", G::limb, 9, 1},
      {5, "l_ankle", G::limb, 11, 0},
      {6, "pelvis", G::torso, 2, 6},
      {7, "thorax", G::torso, 1, 7},
      {8, "upper_neck", G::neck, 0, 8},
      {9, "head_top", G::torso, 3, 9},
      {10, "r_wrist", G::limb, 14, 15},
      {11, "r_elbow", G::limb, 12, 14},
      {12, "r_shoulder", G::torso, 6, 13},
      {13, "l_shoulder", G::torso, 7, 12},
      {14, "l_elbow", G::limb, 13, 11},
      {15, "l_wrist", G::limb, 15, 10},
  });
  return layout;
}

Point derive_centroid(const PersonAnnotation& person) {
  Point sum;
  int count = 0;
  for (const auto& joint : person.joints) {
    if (!joint) continue;
    sum = sum + *joint;
    ++count;
  }
  if (count == 0) throw annotation_error("person has no annotated joint");
  return sum / static_cast<double>(count);
}

Point resolved_centroid(const PersonAnnotation& person) {
  return person.centroid ? *person.centroid : derive_centroid(person);
}

namespace {

bool inside(Point p, int height, int width) {
  return p.x >= 0.0 && p.x < width && p.y >= 0.0 && p.y < height;
}

}  // namespace

void validate(const Scene& scene) {
  if (scene.height < 1 || scene.width < 1)
    throw annotation_error("scene dimensions must be at least 1x1");
  const auto k = static_cast<std::size_t>(scene.layout.size());
  if (k == 0) throw annotation_error("scene has no joint layout");
  for (std::size_t i = 0; i < scene.persons.size(); ++i) {
    const auto& person = scene.persons[i];
    const std::string who = "person " + std::to_string(i);
    if (person.joints.size() != k)
      throw annotation_error(who + " has " + std::to_string(person.joints.size()) +
                             " joint slots, expected " + std::to_string(k));
    bool any = false;
    for (std::size_t j = 0; j < k; ++j) {
      const auto& joint = person.joints[j];
      if (!joint) continue;
      any = true;
      if (!std::isfinite(joint->x) || !std::isfinite(joint->y) ||
          !inside(*joint, scene.height, scene.width))
        throw annotation_error(who + " joint " + std::to_string(j) + " lies outside the canvas");
    }
    if (!any) throw annotation_error(who + " has no annotated joint");
    if (person.centroid && (!std::isfinite(person.centroid->x) || !std::isfinite(person.centroid->y)))
      throw annotation_error(who + " has a non-finite centroid");
  }
}

namespace {

// Axes first, then diagonals, then the remaining sixteenths of the circle.
// Axis-aligned unit vectors are exact so that axis moves land exactly min_sep
// away.
Point perturb_direction(int step) {
  static constexpr int kOrder[16] = {0, 4, 8, 12, 2, 6, 10, 14, 1, 3, 5, 7, 9, 11, 13, 15};
  const int d = kOrder[step];
  switch (d) {
    case 0: return {1.0, 0.0};
    case 4: return {0.0, 1.0};
    case 8: return {-1.0, 0.0};
    case 12: return {0.0, -1.0};
    default: break;
  }
  const double angle = 2.0 * std::numbers::pi * d / 16.0;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

Scene perturb_overlapping_centroids(const Scene& scene, double min_sep) {
  if (!(min_sep > 0.0)) throw parameter_error("min_sep must be positive");

  constexpr int kDirections = 16;
  const double max_x = scene.width - 1;
  const double max_y = scene.height - 1;
  auto clamp = [&](Point p) {
    return Point{std::clamp(p.x, 0.0, max_x), std::clamp(p.y, 0.0, max_y)};
  };

  Scene out = scene;
  std::vector<Point> placed;
  placed.reserve(out.persons.size());
  for (auto& person : out.persons) {
    const Point origin = resolved_centroid(person);
    auto clearance = [&](Point p) {
      double worst = std::numeric_limits<double>::infinity();
      for (const Point q : placed) worst = std::min(worst, distance(p, q));
      return worst;
    };

    Point chosen = origin;
    double best = clearance(origin);
    if (best < min_sep) {
      Point fallback = origin;
      bool found = false;
      for (int step = 0; step < kDirections && !found; ++step) {
        const Point candidate = clamp(origin + min_sep * perturb_direction(step));
        const double c = clearance(candidate);
        if (c >= min_sep) {
          chosen = candidate;
          found = true;
        } else if (c > best) {
          best = c;
          fallback = candidate;
        }
      }
      if (!found) chosen = fallback;
      person.centroid = chosen;
    }
    placed.push_back(chosen);
  }
  return out;
}

namespace {

void check_augment(const AugmentParams& p) {
  if (!(p.scale > 0.0) || !std::isfinite(p.scale))
    throw parameter_error("augment scale must be positive");
  if (!std::isfinite(p.rotation_deg) || !std::isfinite(p.translate.x) ||
      !std::isfinite(p.translate.y))
    throw parameter_error("augment parameters must be finite");
  if (!p.enforce_ranges) return;
  if (std::abs(p.rotation_deg) > 40.0)
    throw parameter_error("rotation outside [-40, 40] degrees");
  if (p.scale < 0.7 || p.scale > 1.3) throw parameter_error("scale outside [0.7, 1.3]");
  if (std::abs(p.translate.x) > 40.0 || std::abs(p.translate.y) > 40.0)
    throw parameter_error("translation outside [-40, 40] px");
}

}  // namespace

Point transform_point(Point p, const AugmentParams& params, int height, int width) {
  const Point center{(width - 1) / 2.0, (height - 1) / 2.0};
  if (params.mirror) p.x = (width - 1) - p.x;
  const double theta = params.rotation_deg * std::numbers::pi / 180.0;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Point d = p - center;
  const Point rotated{c * d.x - s * d.y, s * d.x + c * d.y};
  return center + params.scale * rotated + params.translate;
}

Scene augment(const Scene& scene, const AugmentParams& params) {
  check_augment(params);

  Scene out;
  out.height = scene.height;
  out.width = scene.width;
  out.layout = scene.layout;
  const int k = scene.layout.size();
  for (const auto& person : scene.persons) {
    PersonAnnotation moved;
    moved.joints.assign(k, std::nullopt);
    bool any = false;
    for (int j = 0; j < k; ++j) {
      if (!person.joints[j]) continue;
      const Point p = transform_point(*person.joints[j], params, scene.height, scene.width);
      const int slot = params.mirror ? scene.layout.mirror(j) : j;
      if (inside(p, scene.height, scene.width)) {
        moved.joints[slot] = p;
        any = true;
      }
    }
    if (!any) continue;
    moved.centroid = transform_point(resolved_centroid(person), params, scene.height, scene.width);
    if (person.head_box) {
      // Head size is rotation invariant: move the box center, scale the extent.
      const auto& b = *person.head_box;
      const Point center = transform_point({(b[0] + b[2]) / 2.0, (b[1] + b[3]) / 2.0}, params,
                                           scene.height, scene.width);
      const double hw = std::abs(b[2] - b[0]) / 2.0 * params.scale;
      const double hh = std::abs(b[3] - b[1]) / 2.0 * params.scale;
      moved.head_box = std::array<double, 4>{center.x - hw, center.y - hh, center.x + hw, center.y + hh};
    }
    out.persons.push_back(std::move(moved));
  }
  return out;
}

AugmentParams inverse(const AugmentParams& params) {
  if (params.mirror) throw parameter_error("inverse() is defined for non-mirroring parameters");
  if (!(params.scale > 0.0)) throw parameter_error("augment scale must be positive");
  AugmentParams inv;
  inv.rotation_deg = -params.rotation_deg;
  inv.scale = 1.0 / params.scale;
  const double theta = inv.rotation_deg * std::numbers::pi / 180.0;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Point t = params.translate;
  inv.translate = Point{-(c * t.x - s * t.y), -(s * t.x + c * t.y)} / params.scale;
  inv.enforce_ranges = false;
  return inv;
}

}  // namespace posepart
