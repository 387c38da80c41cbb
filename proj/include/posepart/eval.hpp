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
#include <string>
#include <vector>

#include "posepart/inference.hpp"
#include "posepart/scene.hpp"

namespace posepart {

enum class HeadSizeSource { annotation_box, joint_distance };

const char* to_string(HeadSizeSource source);
HeadSizeSource head_size_source_from_string(const std::string& name);

struct MatchParams {
  double pckh_fraction = 0.5;
  HeadSizeSource head_size_source = HeadSizeSource::joint_distance;
  /// Threshold in pixels for persons without a usable head size. A value <= 0
  /// turns such persons into evaluation errors instead.
  double absolute_threshold = 5.0;
  std::string head_top_joint = "head_top";
  std::string neck_joint = "upper_neck";
};

void validate(const MatchParams& params);

/// One-to-one assignment between predicted poses and ground-truth persons of
/// a single scene.
struct SceneMatch {
  std::vector<std::optional<std::size_t>> pred_to_gt;
  std::vector<std::optional<std::size_t>> gt_to_pred;
  /// Correctness radius per ground-truth person; empty for persons whose
  /// head size could not be determined.
  std::vector<std::optional<double>> thresholds;
  std::vector<std::string> errors;

  std::size_t matched() const;
  std::size_t false_positives() const;
};

/// Radius within which a prediction of this person's joints counts as
/// correct: pckh_fraction times the head size, or the absolute fallback.
std::optional<double> correctness_threshold(const PersonAnnotation& person,
                                            const JointLayout& layout, const MatchParams& params);

/// Greedy matching on the number of joints within the correctness radius:
/// the pair with the most correct joints is matched first (ties go to the
/// lower prediction index, then the lower ground-truth index); pairs with no
/// correct joint are never matched.
SceneMatch match_poses(std::span<const PersonPose> pred, const Scene& gt, const MatchParams& params);

/// A scored prediction and whether it is a true positive.
struct ScoredHit {
  double score = 0.0;
  bool true_positive = false;
};

/// Area under the interpolated precision/recall curve, in percent. Hits are
/// ranked by descending score (stable). Returns nullopt without positives.
std::optional<double> average_precision(std::span<const ScoredHit> hits, std::size_t positives);

struct CorpusItem {
  std::vector<PersonPose> poses;
  Scene scene;
  /// Person count reported by the decoder (partitions); defaults to the pose
  /// count when unset.
  std::optional<int> predicted_count;
};

/// Per-joint hits over a matched corpus, in corpus order.
std::vector<ScoredHit> joint_hits(std::span<const CorpusItem> corpus, std::span<const SceneMatch> matches,
                                  int joint, std::size_t* positives);

struct CountMetrics {
  /// confusion[gt][pred]
  std::vector<std::vector<int>> confusion;
  double mse = 0.0;
};

/// Throws on length mismatch or negative counts.
CountMetrics count_metrics(std::span<const int> predicted, std::span<const int> ground_truth);

struct EvalReport {
  std::vector<std::string> joint_names;
  std::vector<std::optional<double>> per_joint_ap;
  double total_ap = 0.0;
  std::vector<std::vector<int>> count_confusion;
  double count_mse = 0.0;
  std::size_t num_scenes = 0;
  std::size_t matched_persons = 0;
  std::size_t gt_persons = 0;
  std::size_t false_positive_poses = 0;
  std::vector<std::string> errors;
};

/// Throws if the corpus is empty or the scenes disagree on the joint layout.
EvalReport evaluate(std::span<const CorpusItem> corpus, const MatchParams& params);

/// Table layout: Head, Sho., Elb., Wri., Hip, Knee, Ank., Total.
std::string report_csv(const EvalReport& report);

}  // namespace posepart
