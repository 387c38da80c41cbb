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
#include <cstddef>
#include <span>
#include <vector>

#include "posepart/geometry.hpp"
#include "posepart/scene.hpp"

namespace posepart {

struct MapDims {
  int joints = 0;
  int height = 0;
  int width = 0;

  std::size_t cells() const {
    return static_cast<std::size_t>(joints) * height * width;
  }
  bool contains(GridPoint p) const {
    return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height;
  }
  friend bool operator==(const MapDims&, const MapDims&) = default;
};

/// Per-joint scalar confidence grids, stored [joint][row][col].
class ConfidenceMapSet {
 public:
  ConfidenceMapSet() = default;
  explicit ConfidenceMapSet(MapDims dims);
  /// Throws a dimension error if `values` has the wrong size.
  ConfidenceMapSet(MapDims dims, std::vector<float> values);

  const MapDims& dims() const { return dims_; }
  float at(int joint, int y, int x) const { return values_[index(joint, y, x)]; }
  float& at(int joint, int y, int x) { return values_[index(joint, y, x)]; }
  float at(int joint, GridPoint p) const { return at(joint, p.y, p.x); }

  std::span<const float> plane(int joint) const {
    const std::size_t n = static_cast<std::size_t>(dims_.height) * dims_.width;
    return {values_.data() + joint * n, n};
  }
  std::span<const float> values() const { return values_; }
  std::span<float> values() { return values_; }

 private:
  std::size_t index(int joint, int y, int x) const {
    return (static_cast<std::size_t>(joint) * dims_.height + y) * dims_.width + x;
  }

  MapDims dims_;
  std::vector<float> values_;
};

/// Per-joint 2-vector grids of normalized joint-to-centroid offsets, stored
/// [joint][row][col][component] with component 0 = x.
class RegressionMapSet {
 public:
  RegressionMapSet() = default;
  explicit RegressionMapSet(MapDims dims);
  RegressionMapSet(MapDims dims, std::vector<float> values);

  const MapDims& dims() const { return dims_; }
  /// Z = sqrt(H^2 + W^2).
  double norm_factor() const {
    return std::sqrt(static_cast<double>(dims_.height) * dims_.height +
                     static_cast<double>(dims_.width) * dims_.width);
  }

  Point at(int joint, int y, int x) const {
    const std::size_t i = index(joint, y, x);
    return {values_[i], values_[i + 1]};
  }
  Point at(int joint, GridPoint p) const { return at(joint, p.y, p.x); }
  void set(int joint, int y, int x, float dx, float dy) {
    const std::size_t i = index(joint, y, x);
    values_[i] = dx;
    values_[i + 1] = dy;
  }

  std::span<const float> values() const { return values_; }
  std::span<float> values() { return values_; }

 private:
  std::size_t index(int joint, int y, int x) const {
    return ((static_cast<std::size_t>(joint) * dims_.height + y) * dims_.width + x) * 2;
  }

  MapDims dims_;
  std::vector<float> values_;
};

struct ForwardParams {
  /// Gaussian width in exp(-d^2 / sigma^2). Note: no factor of two.
  double sigma = 7.0;
  /// Radius of the regression neighborhood around each joint.
  double radius = 7.0;
  double tau = 0.1;
};

void validate(const ForwardParams& params);

/// C_j(p) = max_i exp(-|p - p_j^i|^2 / sigma^2) over persons having joint j,
/// evaluated at integer pixel centers. The Gaussian has full support: cells
/// are only skipped where the value rounds to 0.0f anyway.
ConfidenceMapSet build_confidence_maps(const Scene& scene, const ForwardParams& params);

/// Within radius r of person i's joint j the target is (c_i - p) / Z; cells
/// covered by several persons hold the mean over the non-zero contributions.
RegressionMapSet build_regression_maps(const Scene& scene, const ForwardParams& params);

struct MapLoss {
  double joint = 0.0;
  double regression = 0.0;
  double total = 0.0;
};

/// Sum of squared differences, accumulated row-major. Throws a dimension
/// error on shape mismatch.
double squared_error(const ConfidenceMapSet& pred, const ConfidenceMapSet& target);
double squared_error(const RegressionMapSet& pred, const RegressionMapSet& target);

/// Single-stage l2 training loss: joint + alpha * regression.
MapLoss map_loss(const ConfidenceMapSet& conf_pred, const ConfidenceMapSet& conf_target,
                 const RegressionMapSet& reg_pred, const RegressionMapSet& reg_target,
                 double alpha = 1.0);

}  // namespace posepart
