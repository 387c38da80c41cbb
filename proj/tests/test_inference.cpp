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

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "posepart/error.hpp"
#include "posepart/inference.hpp"
#include "posepart/pipeline.hpp"
#include "test_support.hpp"

using namespace posepart;
using testing::jid;

namespace {

void check_pose_matches(const PersonPose& pose, const PersonAnnotation& gt) {
  for (std::size_t j = 0; j < gt.joints.size(); ++j) {
    REQUIRE(pose.joints[j].has_value() == gt.joints[j].has_value());
    if (!gt.joints[j]) continue;
    CHECK(pose.joints[j]->position.x == static_cast<int>(gt.joints[j]->x));
    CHECK(pose.joints[j]->position.y == static_cast<int>(gt.joints[j]->y));
  }
}

void check_trace(const PoseSet& set, std::span<const Partition> parts, const MapPair& maps, double tau) {
  REQUIRE(!set.trace.empty());
  CHECK(set.trace.front().joint == -1);
  CHECK(set.trace.front().energy == doctest::Approx(-partition_score(parts)));
  for (std::size_t i = 1; i < set.trace.size(); ++i) CHECK(set.trace[i].energy < set.trace[i - 1].energy);
  const double e = energy(set.poses, parts, maps.conf, maps.reg, tau);
  CHECK(std::abs(set.trace.back().energy - e) <= 1e-9 * std::max(1.0, std::abs(e)));
}

}  // namespace

TEST_CASE("a single person decodes to its annotation") {
  const auto s = testing::scene(128, 128, {testing::skeleton({64, 64})});
  PipelineConfig cfg;
  const auto maps = synthesize(s, cfg);
  const auto out = decode(maps.conf, maps.reg, cfg);
  CHECK(out.candidates.size() == 16);
  REQUIRE(out.partitions.size() == 1);
  REQUIRE(out.poses.poses.size() == 1);
  const auto& pose = out.poses.poses[0];
  CHECK(pose.root_joint == jid("upper_neck"));
  check_pose_matches(pose, s.persons[0]);
  CHECK(distance(pose.final_centroid, resolved_centroid(s.persons[0])) < 1e-4);
  CHECK(out.poses.trace.size() == 17);
  check_trace(out.poses, out.partitions, maps, cfg.tau);
}

TEST_CASE("greedy inference separates two persons sharing one partition") {
  const auto s = testing::scene(160, 200, {testing::skeleton({60, 80}), testing::skeleton({140, 80})});
  PipelineConfig cfg;
  cfg.link_threshold = 1000.0;  // force a single partition
  const auto maps = synthesize(s, cfg);
  const auto out = decode(maps.conf, maps.reg, cfg);
  REQUIRE(out.partitions.size() == 1);
  REQUIRE(out.poses.poses.size() == 2);
  // equal roots: row-major first, i.e. the left person
  check_pose_matches(out.poses.poses[0], s.persons[0]);
  check_pose_matches(out.poses.poses[1], s.persons[1]);
  CHECK(out.poses.poses[1].partition == 0);
  check_trace(out.poses, out.partitions, maps, cfg.tau);
}

TEST_CASE("the root falls back to the lowest-ranked category present") {
  auto limbs = testing::person({{"r_wrist", {30, 30}}, {"l_wrist", {40, 30}}, {"r_knee", {35, 50}}});
  const auto s = testing::scene(80, 80, {limbs});
  PipelineConfig cfg;
  const auto maps = synthesize(s, cfg);
  const auto out = decode(maps.conf, maps.reg, cfg);
  REQUIRE(out.poses.poses.size() == 1);
  CHECK(out.poses.poses[0].root_joint == jid("r_knee"));  // knees rank before wrists
  check_pose_matches(out.poses.poses[0], s.persons[0]);

  auto torso = testing::person({{"thorax", {30, 30}}, {"r_wrist", {40, 30}}});
  const auto s2 = testing::scene(80, 80, {torso});
  const auto maps2 = synthesize(s2, cfg);
  CHECK(decode(maps2.conf, maps2.reg, cfg).poses.poses[0].root_joint == jid("thorax"));
}

TEST_CASE("ties in vote distance go to the higher confidence") {
  // one partition holding a neck and two equidistant thorax candidates
  const MapDims d{16, 20, 20};
  ConfidenceMapSet conf(d);
  RegressionMapSet reg(d);
  const int neck = jid("upper_neck"), thorax = jid("thorax");
  conf.at(neck, 10, 10) = 0.9f;
  conf.at(thorax, 10, 7) = 0.4f;
  conf.at(thorax, 10, 13) = 0.6f;
  const std::vector<JointCandidate> cands = {
      {{10, 10}, neck, 0.9f}, {{7, 10}, thorax, 0.4f}, {{13, 10}, thorax, 0.6f}};
  ClusterParams p;
  p.link_threshold = 100.0;
  const auto parts = cluster_votes(embed(cands, reg), p);
  REQUIRE(parts.size() == 1);
  const auto poses = greedy_infer(parts[0], conf, reg, mpii_layout(), 0.1);
  REQUIRE(poses.size() == 2);
  CHECK(poses[0].joints[thorax]->position == GridPoint{13, 10});
  CHECK(poses[1].root_joint == thorax);
  CHECK(poses[1].joints[thorax]->position == GridPoint{7, 10});
}

TEST_CASE("a member below the threshold is a parameter error") {
  const MapDims d{16, 10, 10};
  ConfidenceMapSet conf(d);
  RegressionMapSet reg(d);
  conf.at(0, 5, 5) = 0.05f;
  Partition part;
  part.members.push_back({{{5, 5}, 0, 0.05f}, 0, {5, 5}});
  try {
    greedy_infer(part, conf, reg, mpii_layout(), 0.1);
    FAIL("expected a parameter error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parameter);
  }
}

TEST_CASE("pairwise matches the oracle and gates on tau") {
  SplitMix64 rng(8);
  const MapDims d{3, 6, 7};
  for (int trial = 0; trial < 200; ++trial) {
    RegressionMapSet reg(d);
    for (auto& v : reg.values()) v = static_cast<float>(rng.uniform(-0.05, 0.05));
    const JointCandidate a{{rng.uniform_int(0, 6), rng.uniform_int(0, 5)}, rng.uniform_int(0, 2),
                           static_cast<float>(rng.uniform())};
    const JointCandidate b{{rng.uniform_int(0, 6), rng.uniform_int(0, 5)}, rng.uniform_int(0, 2),
                           static_cast<float>(rng.uniform())};
    const double tau = rng.uniform(0.0, 0.5);
    CHECK(std::abs(pairwise(a, b, reg, tau) - oracle::pairwise(a, b, reg, tau)) <= 1e-9);
  }
  RegressionMapSet zero(d);
  const JointCandidate lo{{0, 0}, 0, 0.05f}, hi{{0, 0}, 1, 0.9f};
  CHECK(pairwise(lo, hi, zero, 0.1) == 0.0);
  CHECK(pairwise(hi, hi, zero, 0.1) == 1.0);
  const JointCandidate one_px{{1, 0}, 1, 0.9f};
  CHECK(pairwise(hi, one_px, zero, 0.1) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("proximity report is symmetric") {
  const auto s = testing::scene(96, 96, {testing::skeleton({48, 48})});
  PipelineConfig cfg;
  const auto maps = synthesize(s, cfg);
  const auto out = decode(maps.conf, maps.reg, cfg);
  const auto rep = proximity_report(out.partitions[0], maps.conf, maps.reg, cfg.tau);
  REQUIRE(rep.size == 16);
  for (std::size_t v = 0; v < rep.size; ++v) {
    CHECK(rep.unary[v] == doctest::Approx(1.0));
    CHECK(rep.at(v, v) == 1.0);
    for (std::size_t w = 0; w < rep.size; ++w) CHECK(rep.at(v, w) == rep.at(w, v));
  }
}
