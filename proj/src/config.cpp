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

#include "posepart/config.hpp"

#include <cmath>

#include "posepart/error.hpp"

namespace posepart {

ClusterParams PipelineConfig::cluster(double norm_factor) const {
  ClusterParams params;
  params.link_threshold = link_threshold ? *link_threshold : link_fraction * norm_factor;
  params.weights = weights;
  return params;
}

void validate(const PipelineConfig& config) {
  validate(config.forward());
  validate(config.detector());
  if (config.link_threshold && !(*config.link_threshold > 0.0))
    throw config_error("link_threshold must be positive or \"auto\"");
  if (!(config.link_fraction > 0.0)) throw config_error("link_fraction must be positive");
  if (!config.weights.empty() && config.weights.size() != static_cast<std::size_t>(config.layout.size()))
    throw config_error("weights must have one entry per joint");
  bool any_positive = config.weights.empty();
  for (const double w : config.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw config_error("vote weights must be non-negative");
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw config_error("at least one vote weight must be positive");
  if (!(config.alpha >= 0.0) || !std::isfinite(config.alpha)) throw config_error("alpha must be non-negative");
  if (config.layout.size() == 0) throw config_error("joint layout is empty");
  validate(config.match);
  validate(config.corpus);
}

}  // namespace posepart
