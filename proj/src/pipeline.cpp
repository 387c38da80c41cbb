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

#include "posepart/pipeline.hpp"

#include "posepart/error.hpp"

namespace posepart {

MapPair synthesize(const Scene& scene, const PipelineConfig& config) {
  validate(config);
  if (!(scene.layout == config.layout))
    throw config_error("scene joint layout differs from the configured one");
  return {build_confidence_maps(scene, config.forward()), build_regression_maps(scene, config.forward())};
}

void check_compatible(const ConfidenceMapSet& conf, const RegressionMapSet& reg, const JointLayout& layout) {
  const auto& c = conf.dims();
  const auto& r = reg.dims();
  if (!(c == r))
    throw dimension_error("confidence maps are " + std::to_string(c.joints) + "x" + std::to_string(c.height) + "x" +
                          std::to_string(c.width) + " but regression maps are " + std::to_string(r.joints) + "x" +
                          std::to_string(r.height) + "x" + std::to_string(r.width));
  if (c.joints != layout.size())
    throw dimension_error("maps have " + std::to_string(c.joints) + " joints, layout has " +
                          std::to_string(layout.size()));
}

std::vector<Partition> partition_candidates(std::span<const JointCandidate> candidates,
                                            const RegressionMapSet& reg, const PipelineConfig& config,
                                            double* link_threshold) {
  validate(config);
  const ClusterParams params = config.cluster(reg.norm_factor());
  if (link_threshold) *link_threshold = params.link_threshold;
  const auto votes = embed(candidates, reg);
  return cluster_votes(votes, params);
}

DecodeResult decode(const ConfidenceMapSet& conf, const RegressionMapSet& reg, const PipelineConfig& config) {
  validate(config);
  check_compatible(conf, reg, config.layout);
  DecodeResult out;
  out.candidates = detect_candidates(conf, config.detector());
  out.partitions = partition_candidates(out.candidates, reg, config, &out.link_threshold);
  out.poses = infer_all(out.partitions, conf, reg, config.layout, config.tau);
  return out;
}

}  // namespace posepart
