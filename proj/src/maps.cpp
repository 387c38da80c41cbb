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

#include "posepart/maps.hpp"

#include <algorithm>

#include "posepart/error.hpp"
#include "posepart/parallel.hpp"

namespace posepart {

namespace {

void check_dims(const MapDims& dims) {
  if (dims.joints < 1 || dims.height < 1 || dims.width < 1)
    throw dimension_error("map dimensions must be positive");
}

std::string describe(const MapDims& d) {
  return std::to_string(d.joints) + "x" + std::to_string(d.height) + "x" + std::to_string(d.width);
}

// exp(-x) for x above this is below half the smallest float subnormal, so the
// cell would round to 0.0f. Skipping those cells keeps results bit-identical
// to the untruncated Gaussian.
constexpr double kUnderflowExponent = 110.0;

}  // namespace

ConfidenceMapSet::ConfidenceMapSet(MapDims dims) : dims_(dims) {
  check_dims(dims);
  values_.assign(dims.cells(), 0.0f);
}

ConfidenceMapSet::ConfidenceMapSet(MapDims dims, std::vector<float> values)
    : dims_(dims), values_(std::move(values)) {
  check_dims(dims);
  if (values_.size() != dims.cells())
    throw dimension_error("confidence values do not match " + describe(dims));
}

RegressionMapSet::RegressionMapSet(MapDims dims) : dims_(dims) {
  check_dims(dims);
  values_.assign(dims.cells() * 2, 0.0f);
}

RegressionMapSet::RegressionMapSet(MapDims dims, std::vector<float> values)
    : dims_(dims), values_(std::move(values)) {
  check_dims(dims);
  if (values_.size() != dims.cells() * 2)
    throw dimension_error("regression values do not match " + describe(dims));
}

void validate(const ForwardParams& params) {
  if (!(params.sigma > 0.0)) throw config_error("sigma must be positive");
  if (!(params.radius >= 0.0)) throw config_error("radius must be non-negative");
  if (!(params.tau > 0.0 && params.tau < 1.0)) throw config_error("tau must lie in (0, 1)");
}

ConfidenceMapSet build_confidence_maps(const Scene& scene, const ForwardParams& params) {
  validate(scene);
  validate(params);
  const int k = scene.layout.size();
  ConfidenceMapSet maps({k, scene.height, scene.width});
  const double sigma2 = params.sigma * params.sigma;
  const double reach = std::sqrt(kUnderflowExponent * sigma2);

  parallel_for(static_cast<std::size_t>(k), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (const auto& person : scene.persons) {
      const auto& joint = person.joints[j];
      if (!joint) continue;
      const int y0 = std::max(0, static_cast<int>(std::floor(joint->y - reach)));
      const int y1 = std::min(scene.height - 1, static_cast<int>(std::ceil(joint->y + reach)));
      const int x0 = std::max(0, static_cast<int>(std::floor(joint->x - reach)));
      const int x1 = std::min(scene.width - 1, static_cast<int>(std::ceil(joint->x + reach)));
      for (int y = y0; y <= y1; ++y) {
        const double dy = y - joint->y;
        for (int x = x0; x <= x1; ++x) {
          const double dx = x - joint->x;
          const double e = (dx * dx + dy * dy) / sigma2;
          if (e > kUnderflowExponent) continue;
          const float value = static_cast<float>(std::exp(-e));
          float& cell = maps.at(j, y, x);
          cell = std::max(cell, value);
        }
      }
    }
  });
  return maps;
}

RegressionMapSet build_regression_maps(const Scene& scene, const ForwardParams& params) {
  validate(scene);
  validate(params);
  const int k = scene.layout.size();
  const MapDims dims{k, scene.height, scene.width};
  RegressionMapSet maps(dims);
  const double z = maps.norm_factor();
  const double r2 = params.radius * params.radius;

  std::vector<Point> centroids;
  centroids.reserve(scene.persons.size());
  for (const auto& person : scene.persons) centroids.push_back(resolved_centroid(person));

  parallel_for(static_cast<std::size_t>(k), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    const std::size_t plane = static_cast<std::size_t>(scene.height) * scene.width;
    std::vector<Point> sum(plane);
    std::vector<int> count(plane, 0);
    for (std::size_t i = 0; i < scene.persons.size(); ++i) {
      const auto& joint = scene.persons[i].joints[j];
      if (!joint) continue;
      const int y0 = std::max(0, static_cast<int>(std::ceil(joint->y - params.radius)));
      const int y1 = std::min(scene.height - 1, static_cast<int>(std::floor(joint->y + params.radius)));
      const int x0 = std::max(0, static_cast<int>(std::ceil(joint->x - params.radius)));
      const int x1 = std::min(scene.width - 1, static_cast<int>(std::floor(joint->x + params.radius)));
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          const Point p{static_cast<double>(x), static_cast<double>(y)};
          if (squared_distance(p, *joint) > r2) continue;
          const Point offset = (centroids[i] - p) / z;
          if (offset.x == 0.0 && offset.y == 0.0) continue;
          const std::size_t cell = static_cast<std::size_t>(y) * scene.width + x;
          sum[cell] = sum[cell] + offset;
          ++count[cell];
        }
      }
    }
    for (int y = 0; y < scene.height; ++y) {
      for (int x = 0; x < scene.width; ++x) {
        const std::size_t cell = static_cast<std::size_t>(y) * scene.width + x;
        if (count[cell] == 0) continue;
        const Point mean = sum[cell] / static_cast<double>(count[cell]);
        maps.set(j, y, x, static_cast<float>(mean.x), static_cast<float>(mean.y));
      }
    }
  });
  return maps;
}

namespace {

double sum_squared(std::span<const float> a, std::span<const float> b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    total += d * d;
  }
  return total;
}

}  // namespace

double squared_error(const ConfidenceMapSet& pred, const ConfidenceMapSet& target) {
  if (!(pred.dims() == target.dims()))
    throw dimension_error("confidence map shapes differ: " + describe(pred.dims()) + " vs " +
                          describe(target.dims()));
  return sum_squared(pred.values(), target.values());
}

double squared_error(const RegressionMapSet& pred, const RegressionMapSet& target) {
  if (!(pred.dims() == target.dims()))
    throw dimension_error("regression map shapes differ: " + describe(pred.dims()) + " vs " +
                          describe(target.dims()));
  return sum_squared(pred.values(), target.values());
}

MapLoss map_loss(const ConfidenceMapSet& conf_pred, const ConfidenceMapSet& conf_target,
                 const RegressionMapSet& reg_pred, const RegressionMapSet& reg_target,
                 double alpha) {
  MapLoss loss;
  loss.joint = squared_error(conf_pred, conf_target);
  loss.regression = squared_error(reg_pred, reg_target);
  loss.total = loss.joint + alpha * loss.regression;
  return loss;
}

}  // namespace posepart
