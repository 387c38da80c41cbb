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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "posepart/geometry.hpp"

namespace posepart {

enum class JointGroup { neck, torso, limb };

const char* to_string(JointGroup group);
JointGroup joint_group_from_string(const std::string& name);

struct JointSpec {
  int id = 0;
  std::string name;
  JointGroup group = JointGroup::limb;
  /// Position in the greedy inference order; 0 is visited first.
  int rank = 0;
  /// Joint whose label this one takes under horizontal mirroring.
  int mirror_id = 0;
};

/// Validated set of joint categories.
///
/// Ids form a permutation of 0..K-1, exactly one joint is the neck, ranks
/// form a permutation of 0..K-1 that visits the neck first, then all torso
/// joints, then all limb joints, and the mirror table is an involution.
class JointLayout {
 public:
  JointLayout() = default;
  /// Throws a config error if the invariants above do not hold.
  explicit JointLayout(std::vector<JointSpec> joints);

  int size() const { return static_cast<int>(joints_.size()); }
  const JointSpec& operator[](int id) const { return joints_[id]; }
  std::span<const JointSpec> joints() const { return joints_; }

  /// Joint ids sorted by rank.
  std::span<const int> inference_order() const { return order_; }
  int neck() const { return order_.front(); }
  int mirror(int id) const { return joints_[id].mirror_id; }
  /// Id of the joint called `name`, if any.
  std::optional<int> find(const std::string& name) const;

  friend bool operator==(const JointLayout& a, const JointLayout& b);

 private:
  std::vector<JointSpec> joints_;
  std::vector<int> order_;
};

/// The 16-joint MPII layout: ids follow the MPII annotation order, the
/// inference order is neck; thorax, pelvis, head top, hips, shoulders;
/// knees, ankles, elbows, wrists.
const JointLayout& mpii_layout();

struct PersonAnnotation {
  /// One slot per joint category; empty means absent.
  std::vector<std::optional<Point>> joints;
  /// Explicit centroid. When empty the centroid is the mean of present joints.
  std::optional<Point> centroid;
  /// Optional head bounding box {x1, y1, x2, y2}, used for PCKh head sizes.
  std::optional<std::array<double, 4>> head_box;
};

/// Annotated multi-person ground truth. Geometry only; no pixel content.
struct Scene {
  int height = 0;
  int width = 0;
  JointLayout layout;
  std::vector<PersonAnnotation> persons;
};

/// Mean of the present joints. Throws an annotation error if none is present.
Point derive_centroid(const PersonAnnotation& person);

/// Explicit centroid if set, otherwise `derive_centroid`.
Point resolved_centroid(const PersonAnnotation& person);

/// Throws an annotation error if the scene breaks its invariants (dims,
/// per-person slot count, at least one joint, joints inside the canvas).
void validate(const Scene& scene);

/// Moves centroids that sit closer than `min_sep` to an earlier person's
/// centroid. Each centroid tries, in order, staying put and then sixteen
/// fixed directions at distance `min_sep`; the first position clear of every
/// earlier centroid wins. Moved centroids become explicit and are clamped to
/// the canvas.
Scene perturb_overlapping_centroids(const Scene& scene, double min_sep);

struct AugmentParams {
  double rotation_deg = 0.0;
  double scale = 1.0;
  Point translate;
  bool mirror = false;
  /// Reject parameters outside the training ranges (rotation within +-40
  /// degrees, scale within [0.7, 1.3], translation within +-40 px).
  bool enforce_ranges = true;
};

/// Applies mirror (x -> W-1-x with label swap), then rotation and scaling
/// about the image center ((W-1)/2, (H-1)/2), then translation. Joints that
/// leave the canvas become absent; persons left with no joint are dropped.
Scene augment(const Scene& scene, const AugmentParams& params);

/// Transforms a single point by the similarity part of `params` (mirroring
/// included, label swap excluded).
Point transform_point(Point p, const AugmentParams& params, int height, int width);

/// Parameters undoing a non-mirroring transform. The result has range
/// enforcement disabled.
AugmentParams inverse(const AugmentParams& params);

}  // namespace posepart
