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
#include <span>
#include <utility>
#include <vector>

#include "posepart/inference.hpp"
#include "posepart/scene.hpp"

namespace posepart {

/// Limb pairs of the layout's stick figure. Uses the MPII limb list for the
/// names it knows and links every other joint to the neck.
std::vector<std::pair<int, int>> skeleton_edges(const JointLayout& layout);

/// Binary PPM (P6) of a black canvas with the ground-truth skeletons in gray
/// (when `gt` is given) and each pose in its own color.
std::vector<std::uint8_t> render_overlay(std::span<const PersonPose> poses, const Scene* gt,
                                         const JointLayout& layout, int height, int width);

}  // namespace posepart
