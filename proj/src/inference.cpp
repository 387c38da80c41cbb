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

#include "posepart/inference.hpp"

#include <cmath>

#include "posepart/error.hpp"

namespace posepart {

int PersonPose::joint_count() const {
  int n = 0;
  for (const auto& j : joints) n += j.has_value();
  return n;
}

double unary(const JointCandidate& candidate, const ConfidenceMapSet& conf) {
  const auto& dims = conf.dims();
  if (candidate.joint < 0 || candidate.joint >= dims.joints || !dims.contains(candidate.position))
    throw parameter_error("candidate outside the confidence map grid");
  return conf.at(candidate.joint, candidate.position);
}

namespace {

double proximity(double score_a, Point vote_a, double score_b, Point vote_b, double tau) {
  if (score_a < tau || score_b < tau) return 0.0;
  return std::exp(-squared_distance(vote_a, vote_b));
}

}  // namespace

double pairwise(const JointCandidate& a, const JointCandidate& b, const RegressionMapSet& reg,
                double tau) {
  const Point ha = embed_point(reg, a.joint, a.position);
  const Point hb = embed_point(reg, b.joint, b.position);
  return proximity(a.score, ha, b.score, hb, tau);
}

ProximityReport proximity_report(const Partition& partition, const ConfidenceMapSet& conf,
                                 const RegressionMapSet& reg, double tau) {
  ProximityReport report;
  const std::size_t n = partition.members.size();
  report.size = n;
  report.pairwise.assign(n * n, 0.0);
  report.unary.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    report.unary[v] = unary(partition.members[v].source, conf);
    for (std::size_t w = v; w < n; ++w) {
      const double b = pairwise(partition.members[v].source, partition.members[w].source, reg, tau);
      report.pairwise[v * n + w] = b;
      report.pairwise[w * n + v] = b;
    }
  }
  return report;
}

namespace {

struct PoolEntry {
  JointCandidate candidate;
  std::size_t index = 0;
  double confidence = 0.0;
  Point vote;
  bool used = false;
};

// Higher confidence first, then row-major first.
bool preferred(const PoolEntry& a, const PoolEntry& b) {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  return row_major_less(a.candidate.position, b.candidate.position);
}

}  // namespace

std::vector<PersonPose> greedy_infer(const Partition& partition, const ConfidenceMapSet& conf,
                                     const RegressionMapSet& reg, const JointLayout& layout,
                                     double tau, std::vector<EnergyStep>* trace,
                                     double energy_start, std::size_t partition_index,
                                     std::size_t first_pose_index) {
  const int k = layout.size();
  if (conf.dims().joints != k || reg.dims().joints != k)
    throw dimension_error("map joint count does not match the joint layout");

  std::vector<PoolEntry> pool;
  pool.reserve(partition.members.size());
  for (const auto& m : partition.members) {
    PoolEntry e;
    e.candidate = m.source;
    e.index = m.index;
    e.confidence = unary(m.source, conf);
    if (e.confidence < tau)
      throw parameter_error("partition member below the detection threshold");
    e.vote = embed_point(reg, m.source.joint, m.source.position);
    pool.push_back(e);
  }

  std::vector<std::vector<std::size_t>> by_joint(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < pool.size(); ++i)
    by_joint[static_cast<std::size_t>(pool[i].candidate.joint)].push_back(i);

  std::vector<PersonPose> poses;
  std::size_t remaining = pool.size();
  double running = energy_start;

  while (remaining > 0) {
    PersonPose pose;
    pose.joints.assign(static_cast<std::size_t>(k), std::nullopt);
    pose.partition = partition_index;
    std::vector<std::size_t> accepted;
    Point vote_sum;

    auto accept = [&](std::size_t i, int joint) {
      PoolEntry& e = pool[i];
      double delta = -e.confidence;
      for (const std::size_t a : accepted)
        delta -= proximity(e.confidence, e.vote, pool[a].confidence, pool[a].vote, tau);
      running += delta;
      e.used = true;
      --remaining;
      accepted.push_back(i);
      vote_sum = vote_sum + e.vote;
      pose.final_centroid = vote_sum / static_cast<double>(accepted.size());
      pose.joints[static_cast<std::size_t>(joint)] =
          PoseJoint{e.index, e.candidate.position, static_cast<float>(e.confidence), e.vote};
      if (trace)
        trace->push_back({partition_index, first_pose_index + poses.size(), joint, e.index, running});
    };

    int root_rank = -1;
    for (int r = 0; r < k && root_rank < 0; ++r) {
      const int joint = layout.inference_order()[r];
      std::size_t best = pool.size();
      for (const std::size_t i : by_joint[static_cast<std::size_t>(joint)]) {
        if (pool[i].used) continue;
        if (best == pool.size() || preferred(pool[i], pool[best])) best = i;
      }
      if (best == pool.size()) continue;
      root_rank = r;
      pose.root_joint = joint;
      accept(best, joint);
    }

    for (int r = root_rank + 1; r < k; ++r) {
      const int joint = layout.inference_order()[r];
      const Point c = pose.final_centroid;
      std::size_t best = pool.size();
      double best_d2 = 0.0;
      for (const std::size_t i : by_joint[static_cast<std::size_t>(joint)]) {
        if (pool[i].used) continue;
        const double d2 = squared_distance(pool[i].vote, c);
        if (best == pool.size() || d2 < best_d2 || (d2 == best_d2 && preferred(pool[i], pool[best]))) {
          best = i;
          best_d2 = d2;
        }
      }
      if (best != pool.size()) accept(best, joint);
    }
    poses.push_back(std::move(pose));
  }
  return poses;
}

PoseSet infer_all(std::span<const Partition> partitions, const ConfidenceMapSet& conf,
                  const RegressionMapSet& reg, const JointLayout& layout, double tau) {
  PoseSet out;
  out.num_partitions = partitions.size();
  double running = -partition_score(partitions);
  out.trace.push_back({0, 0, -1, 0, running});
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    auto poses = greedy_infer(partitions[i], conf, reg, layout, tau, &out.trace, running, i,
                              out.poses.size());
    running = out.trace.back().energy;
    for (auto& p : poses) out.poses.push_back(std::move(p));
  }
  return out;
}

double energy(std::span<const PersonPose> poses, std::span<const Partition> partitions,
              const ConfidenceMapSet& conf, const RegressionMapSet& reg, double tau) {
  double e = -partition_score(partitions);
  for (const auto& pose : poses) {
    std::vector<JointCandidate> assigned;
    for (std::size_t j = 0; j < pose.joints.size(); ++j) {
      if (!pose.joints[j]) continue;
      JointCandidate c{pose.joints[j]->position, static_cast<int>(j), 0.0f};
      c.score = static_cast<float>(unary(c, conf));
      assigned.push_back(c);
    }
    for (std::size_t v = 0; v < assigned.size(); ++v) {
      e -= unary(assigned[v], conf);
      for (std::size_t w = v + 1; w < assigned.size(); ++w) e -= pairwise(assigned[v], assigned[w], reg, tau);
    }
  }
  return e;
}

}  // namespace posepart
