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

#include "posepart/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "posepart/error.hpp"

namespace posepart {

const char* to_string(HeadSizeSource source) {
  return source == HeadSizeSource::annotation_box ? "annotation_box" : "joint_distance";
}

HeadSizeSource head_size_source_from_string(const std::string& name) {
  if (name == "annotation_box") return HeadSizeSource::annotation_box;
  if (name == "joint_distance") return HeadSizeSource::joint_distance;
  throw config_error("unknown head size source '" + name + "'");
}

void validate(const MatchParams& params) {
  if (!(params.pckh_fraction > 0.0)) throw config_error("pckh_fraction must be positive");
  if (!std::isfinite(params.absolute_threshold))
    throw config_error("absolute_threshold must be finite");
}

std::size_t SceneMatch::matched() const {
  return static_cast<std::size_t>(
      std::count_if(pred_to_gt.begin(), pred_to_gt.end(), [](const auto& m) { return m.has_value(); }));
}

std::size_t SceneMatch::false_positives() const { return pred_to_gt.size() - matched(); }

std::optional<double> correctness_threshold(const PersonAnnotation& person, const JointLayout& layout,
                                            const MatchParams& params) {
  std::optional<double> head;
  if (params.head_size_source == HeadSizeSource::annotation_box) {
    if (person.head_box) {
      // MPII convention: 0.6 times the head box diagonal.
      const auto& b = *person.head_box;
      head = 0.6 * std::hypot(b[2] - b[0], b[3] - b[1]);
    }
  } else {
    const auto top = layout.find(params.head_top_joint);
    const auto neck = layout.find(params.neck_joint);
    if (top && neck && person.joints[*top] && person.joints[*neck])
      head = distance(*person.joints[*top], *person.joints[*neck]);
  }
  if (head && *head > 0.0) return params.pckh_fraction * *head;
  if (params.absolute_threshold > 0.0) return params.absolute_threshold;
  return std::nullopt;
}

namespace {

bool joint_correct(const PersonPose& pose, const PersonAnnotation& person, std::size_t j, double radius) {
  if (j >= pose.joints.size() || !pose.joints[j] || !person.joints[j]) return false;
  return distance(pose.joints[j]->position.to_point(), *person.joints[j]) <= radius;
}

}  // namespace

SceneMatch match_poses(std::span<const PersonPose> pred, const Scene& gt, const MatchParams& params) {
  validate(params);
  const std::size_t np = pred.size();
  const std::size_t ng = gt.persons.size();
  const auto k = static_cast<std::size_t>(gt.layout.size());

  SceneMatch out;
  out.pred_to_gt.assign(np, std::nullopt);
  out.gt_to_pred.assign(ng, std::nullopt);
  out.thresholds.resize(ng);
  for (std::size_t g = 0; g < ng; ++g) {
    out.thresholds[g] = correctness_threshold(gt.persons[g], gt.layout, params);
    if (!out.thresholds[g])
      out.errors.push_back("person " + std::to_string(g) + " has no head size for PCKh");
  }

  std::vector<int> correct(np * ng, 0);
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t g = 0; g < ng; ++g) {
      if (!out.thresholds[g]) continue;
      int n = 0;
      for (std::size_t j = 0; j < k; ++j) n += joint_correct(pred[p], gt.persons[g], j, *out.thresholds[g]);
      correct[p * ng + g] = n;
    }
  }

  for (;;) {
    int best = 0;
    std::size_t bp = 0;
    std::size_t bg = 0;
    for (std::size_t p = 0; p < np; ++p) {
      if (out.pred_to_gt[p]) continue;
      for (std::size_t g = 0; g < ng; ++g) {
        if (out.gt_to_pred[g]) continue;
        if (correct[p * ng + g] > best) {
          best = correct[p * ng + g];
          bp = p;
          bg = g;
        }
      }
    }
    if (best == 0) break;
    out.pred_to_gt[bp] = bg;
    out.gt_to_pred[bg] = bp;
  }
  return out;
}

std::optional<double> average_precision(std::span<const ScoredHit> hits, std::size_t positives) {
  if (positives == 0) return std::nullopt;
  std::vector<std::size_t> order(hits.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return hits[a].score > hits[b].score; });

  const std::size_t n = hits.size();
  std::vector<double> precision(n);
  std::size_t tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    tp += hits[order[i]].true_positive;
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
  }
  // precision envelope, right to left
  for (std::size_t i = n; i-- > 1;) precision[i - 1] = std::max(precision[i - 1], precision[i]);

  // Each true positive raises recall by exactly 1/positives, so the area is
  // the envelope summed at true positives.
  double area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (hits[order[i]].true_positive) area += precision[i];
  }
  return 100.0 * area / static_cast<double>(positives);
}

std::vector<ScoredHit> joint_hits(std::span<const CorpusItem> corpus, std::span<const SceneMatch> matches,
                                  int joint, std::size_t* positives) {
  if (corpus.size() != matches.size()) throw Error(ErrorCode::invalid_argument, "corpus/match size mismatch");
  std::vector<ScoredHit> hits;
  std::size_t pos = 0;
  const auto j = static_cast<std::size_t>(joint);
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const auto& item = corpus[s];
    const auto& match = matches[s];
    for (const auto& person : item.scene.persons) pos += person.joints[j].has_value();
    for (std::size_t p = 0; p < item.poses.size(); ++p) {
      const auto& pose = item.poses[p];
      if (j >= pose.joints.size() || !pose.joints[j]) continue;
      bool tp = false;
      if (const auto g = match.pred_to_gt[p]) {
        tp = match.thresholds[*g] && joint_correct(pose, item.scene.persons[*g], j, *match.thresholds[*g]);
      }
      hits.push_back({pose.joints[j]->score, tp});
    }
  }
  if (positives) *positives = pos;
  return hits;
}

CountMetrics count_metrics(std::span<const int> predicted, std::span<const int> ground_truth) {
  if (predicted.size() != ground_truth.size())
    throw Error(ErrorCode::invalid_argument, "predicted and ground-truth count lists differ in length");
  CountMetrics out;
  int top = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] < 0 || ground_truth[i] < 0)
      throw Error(ErrorCode::invalid_argument, "person counts must be non-negative");
    top = std::max({top, predicted[i], ground_truth[i]});
  }
  out.confusion.assign(static_cast<std::size_t>(top) + 1, std::vector<int>(static_cast<std::size_t>(top) + 1, 0));
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    ++out.confusion[static_cast<std::size_t>(ground_truth[i])][static_cast<std::size_t>(predicted[i])];
    const double d = predicted[i] - ground_truth[i];
    sum += d * d;
  }
  out.mse = predicted.empty() ? 0.0 : sum / static_cast<double>(predicted.size());
  return out;
}

EvalReport evaluate(std::span<const CorpusItem> corpus, const MatchParams& params) {
  validate(params);
  if (corpus.empty()) throw Error(ErrorCode::evaluation, "evaluation corpus is empty");
  const JointLayout& layout = corpus.front().scene.layout;
  for (const auto& item : corpus) {
    if (!(item.scene.layout == layout))
      throw Error(ErrorCode::evaluation, "scenes in the corpus use different joint layouts");
  }

  EvalReport report;
  report.num_scenes = corpus.size();
  std::vector<SceneMatch> matches;
  matches.reserve(corpus.size());
  std::vector<int> pred_counts;
  std::vector<int> gt_counts;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const auto& item = corpus[s];
    for (const auto& pose : item.poses) {
      if (pose.joints.size() != static_cast<std::size_t>(layout.size()))
        throw Error(ErrorCode::evaluation, "pose joint count does not match the scene layout");
    }
    matches.push_back(match_poses(item.poses, item.scene, params));
    for (const auto& e : matches.back().errors) report.errors.push_back("scene " + std::to_string(s) + ": " + e);
    report.matched_persons += matches.back().matched();
    report.false_positive_poses += matches.back().false_positives();
    report.gt_persons += item.scene.persons.size();
    pred_counts.push_back(item.predicted_count ? *item.predicted_count : static_cast<int>(item.poses.size()));
    gt_counts.push_back(static_cast<int>(item.scene.persons.size()));
  }

  double sum = 0.0;
  int evaluated = 0;
  for (int j = 0; j < layout.size(); ++j) {
    report.joint_names.push_back(layout[j].name);
    std::size_t positives = 0;
    const auto hits = joint_hits(corpus, matches, j, &positives);
    const auto ap = average_precision(hits, positives);
    report.per_joint_ap.push_back(ap);
    if (ap) {
      sum += *ap;
      ++evaluated;
    }
  }
  report.total_ap = evaluated > 0 ? sum / evaluated : 0.0;

  const auto counts = count_metrics(pred_counts, gt_counts);
  report.count_confusion = counts.confusion;
  report.count_mse = counts.mse;
  return report;
}

std::string report_csv(const EvalReport& report) {
  struct Column {
    const char* title;
    const char* joints[2];
  };
  static constexpr Column kColumns[] = {
      {"Head", {"head_top", "upper_neck"}}, {"Sho.", {"r_shoulder", "l_shoulder"}},
      {"Elb.", {"r_elbow", "l_elbow"}},     {"Wri.", {"r_wrist", "l_wrist"}},
      {"Hip", {"r_hip", "l_hip"}},          {"Knee", {"r_knee", "l_knee"}},
      {"Ank.", {"r_ankle", "l_ankle"}},
  };

  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return std::string(buf);
  };

  std::ostringstream header;
  std::ostringstream row;
  for (const auto& col : kColumns) {
    header << col.title << ',';
    double sum = 0.0;
    int n = 0;
    for (const char* name : col.joints) {
      for (std::size_t j = 0; j < report.joint_names.size(); ++j) {
        if (report.joint_names[j] == name && report.per_joint_ap[j]) {
          sum += *report.per_joint_ap[j];
          ++n;
        }
      }
    }
    if (n > 0) row << fmt(sum / n);
    row << ',';
  }
  header << "Total\n";
  row << fmt(report.total_ap) << '\n';
  return header.str() + row.str();
}

}  // namespace posepart
