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

// JSON and CSV codecs for scenes, candidates, partitions, poses, reports and
// configuration. Parse failures raise ErrorCode::schema errors that name the
// source and either the byte offset (syntax) or the JSON pointer (schema).

#include <span>
#include <string>
#include <vector>

#include "posepart/config.hpp"
#include "posepart/detector.hpp"
#include "posepart/eval.hpp"
#include "posepart/inference.hpp"
#include "posepart/partition.hpp"
#include "posepart/scene.hpp"

namespace posepart::io {

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// {"height","width","joint_spec":[{"id","name","group","rank","mirror_id"}],
//  "persons":[{"joints":[[x,y]|null,...],"centroid":[x,y]|null}]}
// joint_spec defaults to the MPII layout when omitted.
Scene parse_scene(const std::string& text, const std::string& source = "<scene>");
std::string dump_scene(const Scene& scene);
Scene load_scene(const std::string& path);
void save_scene(const Scene& scene, const std::string& path);

// [{"joint":j,"x":..,"y":..,"score":..}]
std::vector<JointCandidate> parse_candidates(const std::string& text, const std::string& source = "<candidates>");
std::string dump_candidates(std::span<const JointCandidate> candidates);
std::vector<JointCandidate> load_candidates(const std::string& path);
void save_candidates(std::span<const JointCandidate> candidates, const std::string& path);

// {"link_threshold":..,"partition_score":..,"partitions":[{"members":[i..],
//  "centroid":[x,y],"score":..}]}; members are candidate indices.
std::string dump_partitions(std::span<const Partition> partitions, double link_threshold);

/// Poses as stored on disk: the scene person format plus per-joint scores.
struct PoseFile {
  int height = 0;
  int width = 0;
  std::size_t num_partitions = 0;
  std::vector<PersonPose> poses;
};

std::string dump_poses(const PoseSet& poses, int height, int width);
PoseFile parse_poses(const std::string& text, int num_joints, const std::string& source = "<poses>");
PoseFile load_poses(const std::string& path, int num_joints);

/// step,partition,pose,joint,candidate,energy
std::string dump_trace(std::span<const EnergyStep> trace);

std::string dump_config(const PipelineConfig& config);
/// Missing keys keep their defaults; unknown keys are config errors.
PipelineConfig parse_config(const std::string& text, const std::string& source = "<config>");
PipelineConfig load_config(const std::string& path);

std::string dump_report(const EvalReport& report);

}  // namespace posepart::io
