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

#include "posepart/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "posepart/error.hpp"

namespace posepart {

void validate(const ClusterParams& params) {
  if (!(params.link_threshold > 0.0) || !std::isfinite(params.link_threshold))
    throw config_error("link_threshold must be positive");
  for (const double w : params.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw config_error("vote weights must be non-negative");
  }
}

Point embed_point(const RegressionMapSet& reg, int joint, GridPoint p) {
  const auto& dims = reg.dims();
  if (joint < 0 || joint >= dims.joints)
    throw parameter_error("joint id " + std::to_string(joint) + " outside the regression maps");
  if (!dims.contains(p))
    throw parameter_error("position (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                          ") outside the map grid");
  return p.to_point() + reg.norm_factor() * reg.at(joint, p);
}

std::vector<Vote> embed(std::span<const JointCandidate> candidates, const RegressionMapSet& reg) {
  std::vector<Vote> votes;
  votes.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    votes.push_back({c, i, embed_point(reg, c.joint, c.position)});
  }
  return votes;
}

double vote_density(Point h, std::span<const Vote> votes, const ClusterParams& params) {
  double total = 0.0;
  for (const auto& v : votes) total += params.weight(v.source.joint) * std::exp(-squared_distance(v.point, h));
  return total;
}

double log_vote_density(Point h, std::span<const Vote> votes, const ClusterParams& params) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& v : votes) {
    const double w = params.weight(v.source.joint);
    if (w > 0.0) top = std::max(top, std::log(w) - squared_distance(v.point, h));
  }
  if (top == -std::numeric_limits<double>::infinity()) return top;
  double sum = 0.0;
  for (const auto& v : votes) {
    const double w = params.weight(v.source.joint);
    if (w > 0.0) sum += std::exp(std::log(w) - squared_distance(v.point, h) - top);
  }
  return top + std::log(sum);
}

std::vector<Partition> cluster_votes(std::span<const Vote> votes, const ClusterParams& params) {
  validate(params);
  const std::size_t n = votes.size();
  if (n == 0) return {};
  if (!params.weights.empty()) {
    for (const auto& v : votes) {
      if (v.source.joint < 0 || static_cast<std::size_t>(v.source.joint) >= params.weights.size())
        throw config_error("vote weights do not cover joint " + std::to_string(v.source.joint));
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& va = votes[a];
    const auto& vb = votes[b];
    if (canonical_less(va.source, vb.source)) return true;
    if (canonical_less(vb.source, va.source)) return false;
    if (va.point.x != vb.point.x) return va.point.x < vb.point.x;
    if (va.point.y != vb.point.y) return va.point.y < vb.point.y;
    return va.index < vb.index;
  });

  // link[a][b]: sum of pairwise distances between clusters a and b, indexed by
  // cluster id (canonical position of the first member).
  std::vector<double> link(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d = distance(votes[order[a]].point, votes[order[b]].point);
      link[a * n + b] = d;
      link[b * n + a] = d;
    }
  }
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t a = 0; a < n; ++a) members[a] = {a};
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});

  while (active.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_a = 0;
    std::size_t best_b = 0;
    for (std::size_t ia = 0; ia < active.size(); ++ia) {
      const std::size_t a = active[ia];
      for (std::size_t ib = ia + 1; ib < active.size(); ++ib) {
        const std::size_t b = active[ib];
        const double avg = link[a * n + b] /
                           (static_cast<double>(members[a].size()) * static_cast<double>(members[b].size()));
        const double tol = kLinkageTieTolerance * std::max(1.0, std::abs(best));
        if (best == std::numeric_limits<double>::infinity() || avg < best - tol) {
          best = avg;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (best > params.link_threshold) break;

    for (const std::size_t c : active) {
      if (c == best_a || c == best_b) continue;
      link[best_a * n + c] += link[best_b * n + c];
      link[c * n + best_a] = link[best_a * n + c];
    }
    auto& into = members[best_a];
    into.insert(into.end(), members[best_b].begin(), members[best_b].end());
    std::sort(into.begin(), into.end());
    members[best_b].clear();
    active.erase(std::find(active.begin(), active.end(), best_b));
  }

  std::vector<Partition> partitions;
  partitions.reserve(active.size());
  for (const std::size_t id : active) {
    Partition part;
    Point sum;
    for (const std::size_t pos : members[id]) {
      part.members.push_back(votes[order[pos]]);
      sum = sum + votes[order[pos]].point;
    }
    part.centroid = sum / static_cast<double>(part.members.size());
    part.score = log_vote_density(part.centroid, votes, params);
    partitions.push_back(std::move(part));
  }
  return partitions;
}

double partition_score(std::span<const Partition> partitions) {
  double total = 0.0;
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    if (!std::isfinite(partitions[i].score))
      throw Error(ErrorCode::invalid_argument,
                  "partition " + std::to_string(i) + " has zero vote density");
    total += partitions[i].score;
  }
  return total;
}

}  // namespace posepart
