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

#include "posepart/render.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

#include "posepart/error.hpp"

namespace posepart {

std::vector<std::pair<int, int>> skeleton_edges(const JointLayout& layout) {
  static constexpr const char* kLimbs[][2] = {
      {"head_top", "upper_neck"}, {"upper_neck", "thorax"},  {"thorax", "pelvis"},
      {"pelvis", "r_hip"},        {"pelvis", "l_hip"},        {"r_hip", "r_knee"},
      {"r_knee", "r_ankle"},      {"l_hip", "l_knee"},        {"l_knee", "l_ankle"},
      {"thorax", "r_shoulder"},   {"r_shoulder", "r_elbow"},  {"r_elbow", "r_wrist"},
      {"thorax", "l_shoulder"},   {"l_shoulder", "l_elbow"},  {"l_elbow", "l_wrist"},
  };
  std::vector<std::pair<int, int>> edges;
  std::vector<bool> linked(static_cast<std::size_t>(layout.size()), false);
  for (const auto& limb : kLimbs) {
    const auto a = layout.find(limb[0]);
    const auto b = layout.find(limb[1]);
    if (!a || !b) continue;
    edges.emplace_back(*a, *b);
    linked[*a] = linked[*b] = true;
  }
  const int neck = layout.neck();
  for (int j = 0; j < layout.size(); ++j) {
    if (!linked[j] && j != neck) edges.emplace_back(neck, j);
  }
  return edges;
}

namespace {

using Rgb = std::array<std::uint8_t, 3>;

class Canvas {
 public:
  Canvas(int height, int width) : h_(height), w_(width), pixels_(static_cast<std::size_t>(height) * width) {}

  void plot(int x, int y, Rgb c) {
    if (x < 0 || y < 0 || x >= w_ || y >= h_) return;
    pixels_[static_cast<std::size_t>(y) * w_ + x] = c;
  }

  void dot(Point p, Rgb c) {
    const int cx = static_cast<int>(std::lround(p.x));
    const int cy = static_cast<int>(std::lround(p.y));
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) plot(cx + dx, cy + dy, c);
  }

  // Bresenham
  void line(Point a, Point b, Rgb c) {
    int x0 = static_cast<int>(std::lround(a.x));
    int y0 = static_cast<int>(std::lround(a.y));
    const int x1 = static_cast<int>(std::lround(b.x));
    const int y1 = static_cast<int>(std::lround(b.y));
    const int dx = std::abs(x1 - x0);
    const int dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1;
    const int sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    for (;;) {
      plot(x0, y0, c);
      if (x0 == x1 && y0 == y1) break;
      const int e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  }

  std::vector<std::uint8_t> ppm() const {
    const std::string header = "P6\n" + std::to_string(w_) + " " + std::to_string(h_) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + pixels_.size() * 3);
    for (const auto& px : pixels_) out.insert(out.end(), px.begin(), px.end());
    return out;
  }

 private:
  int h_;
  int w_;
  std::vector<Rgb> pixels_;
};

constexpr Rgb kPalette[] = {
    {230, 25, 75}, {60, 180, 75},  {255, 225, 25}, {0, 130, 200}, {245, 130, 48},
    {145, 30, 180}, {70, 240, 240}, {240, 50, 230}, {210, 245, 60}, {250, 190, 212},
};
constexpr Rgb kGray = {110, 110, 110};

}  // namespace

std::vector<std::uint8_t> render_overlay(std::span<const PersonPose> poses, const Scene* gt,
                                         const JointLayout& layout, int height, int width) {
  if (height < 1 || width < 1) throw dimension_error("render canvas must be at least 1x1");
  Canvas canvas(height, width);
  const auto edges = skeleton_edges(layout);
  const auto k = static_cast<std::size_t>(layout.size());

  if (gt) {
    for (const auto& person : gt->persons) {
      for (const auto& [a, b] : edges) {
        if (person.joints[a] && person.joints[b]) canvas.line(*person.joints[a], *person.joints[b], kGray);
      }
    }
  }
  for (std::size_t i = 0; i < poses.size(); ++i) {
    const Rgb color = kPalette[i % std::size(kPalette)];
    const auto& pose = poses[i];
    if (pose.joints.size() != k) throw dimension_error("pose joint count does not match the layout");
    for (const auto& [a, b] : edges) {
      if (pose.joints[a] && pose.joints[b])
        canvas.line(pose.joints[a]->position.to_point(), pose.joints[b]->position.to_point(), color);
    }
    for (const auto& j : pose.joints) {
      if (j) canvas.dot(j->position.to_point(), color);
    }
  }
  return canvas.ppm();
}

}  // namespace posepart
