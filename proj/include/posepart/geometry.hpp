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

#include <cmath>

namespace posepart {

/// Image-plane point or offset. x grows rightward, y downward, origin at the
/// center of the top-left pixel.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend constexpr Point operator/(Point p, double s) { return {p.x / s, p.y / s}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

inline double squared_norm(Point p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point p) { return std::sqrt(squared_norm(p)); }
inline double squared_distance(Point a, Point b) { return squared_norm(a - b); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// Integer pixel position on a map grid.
struct GridPoint {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(GridPoint a, GridPoint b) = default;
  Point to_point() const { return {static_cast<double>(x), static_cast<double>(y)}; }
};

/// Row-major ordering: y first, then x.
constexpr bool row_major_less(GridPoint a, GridPoint b) {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

}  // namespace posepart
