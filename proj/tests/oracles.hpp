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

// Slow reference implementations used by the unit and acceptance tests.
// Written from the definitions, without sharing code with the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <set>
#include <tuple>
#include <vector>

#include "posepart/detector.hpp"
#include "posepart/eval.hpp"
#include "posepart/maps.hpp"
#include "posepart/partition.hpp"

namespace oracle {

using posepart::ConfidenceMapSet;
using posepart::JointCandidate;
using posepart::RegressionMapSet;
using posepart::Vote;

// ---- detection ------------------------------------------------------------

// Plateau-aware peak test written as max/min over the neighbour list.
inline bool is_peak(const ConfidenceMapSet& conf, int j, int y, int x, double tau) {
  const auto& d = conf.dims();
  const float v = conf.at(j, y, x);
  if (static_cast<double>(v) < tau) return false;
  std::vector<float> nb;
  for (int ny = y - 1; ny <= y + 1; ++ny)
    for (int nx = x - 1; nx <= x + 1; ++nx)
      if ((ny != y || nx != x) && ny >= 0 && nx >= 0 && ny < d.height && nx < d.width) nb.push_back(conf.at(j, ny, nx));
  if (nb.empty()) return false;
  return *std::max_element(nb.begin(), nb.end()) <= v && *std::min_element(nb.begin(), nb.end()) < v;
}

// O((HW)^2) per joint: repeatedly scan the whole grid for the best live peak,
// keep it, then scan the grid again to kill peaks in its window.
inline std::vector<JointCandidate> nms(const ConfidenceMapSet& conf, double tau, int radius) {
  const auto& d = conf.dims();
  std::vector<JointCandidate> out;
  for (int j = 0; j < d.joints; ++j) {
    std::vector<char> live(static_cast<std::size_t>(d.height) * d.width, 0);
    for (int y = 0; y < d.height; ++y)
      for (int x = 0; x < d.width; ++x) live[static_cast<std::size_t>(y) * d.width + x] = is_peak(conf, j, y, x, tau);
    for (;;) {
      int by = -1, bx = -1;
      float bv = 0.0f;
      for (int y = 0; y < d.height; ++y)
        for (int x = 0; x < d.width; ++x) {
          if (!live[static_cast<std::size_t>(y) * d.width + x]) continue;
          const float v = conf.at(j, y, x);
          if (by < 0 || v > bv) {  // strict: first in row-major order wins ties
            by = y;
            bx = x;
            bv = v;
          }
        }
      if (by < 0) break;
      out.push_back({{bx, by}, j, bv});
      for (int y = 0; y < d.height; ++y)
        for (int x = 0; x < d.width; ++x)
          if (std::max(std::abs(y - by), std::abs(x - bx)) <= radius) live[static_cast<std::size_t>(y) * d.width + x] = 0;
    }
  }
  return out;
}

// ---- clustering -----------------------------------------------------------

inline bool candidate_before(const JointCandidate& a, const JointCandidate& b) {
  return std::make_tuple(a.joint, -a.score, a.position.y, a.position.x) <
         std::make_tuple(b.joint, -b.score, b.position.y, b.position.x);
}

// Agglomerative clustering that recomputes every average linkage from the raw
// points at every step. Returns clusters as sets of Vote::index.
inline std::vector<std::set<std::size_t>> cluster(std::vector<Vote> votes, double threshold, double tie_tol) {
  std::stable_sort(votes.begin(), votes.end(), [](const Vote& a, const Vote& b) {
    if (candidate_before(a.source, b.source)) return true;
    if (candidate_before(b.source, a.source)) return false;
    return std::make_tuple(a.point.x, a.point.y, a.index) < std::make_tuple(b.point.x, b.point.y, b.index);
  });
  // each cluster: list of canonical positions; id = its smallest position
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < votes.size(); ++i) clusters.push_back({i});

  auto linkage = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    double s = 0.0;
    for (auto i : a)
      for (auto k : b) s += std::hypot(votes[i].point.x - votes[k].point.x, votes[i].point.y - votes[k].point.y);
    return s / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
  };

  while (clusters.size() > 1) {
    // clusters are kept sorted by id, so (a, b) enumeration is lexicographic
    std::vector<std::tuple<double, std::size_t, std::size_t>> all;
    for (std::size_t a = 0; a < clusters.size(); ++a)
      for (std::size_t b = a + 1; b < clusters.size(); ++b) all.emplace_back(linkage(clusters[a], clusters[b]), a, b);
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& t : all) lo = std::min(lo, std::get<0>(t));
    if (lo > threshold) break;
    // first pair whose linkage is within tolerance of the minimum
    std::size_t ma = 0, mb = 0;
    for (const auto& [v, a, b] : all) {
      if (v <= lo + tie_tol * std::max(1.0, lo)) {
        ma = a;
        mb = b;
        break;
      }
    }
    clusters[ma].insert(clusters[ma].end(), clusters[mb].begin(), clusters[mb].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(mb));
  }
  std::vector<std::set<std::size_t>> out;
  for (const auto& c : clusters) {
    std::set<std::size_t> s;
    for (auto i : c) s.insert(votes[i].index);
    out.push_back(s);
  }
  return out;
}

// ---- metrics --------------------------------------------------------------

inline double map_loss(const ConfidenceMapSet& cp, const ConfidenceMapSet& ct, const RegressionMapSet& rp,
                       const RegressionMapSet& rt, double alpha) {
  const auto& d = cp.dims();
  double joint = 0.0, reg = 0.0;
  for (int j = 0; j < d.joints; ++j)
    for (int y = 0; y < d.height; ++y)
      for (int x = 0; x < d.width; ++x) {
        const double e = static_cast<double>(cp.at(j, y, x)) - static_cast<double>(ct.at(j, y, x));
        joint += e * e;
        const auto a = rp.at(j, y, x);
        const auto b = rt.at(j, y, x);
        reg += (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
      }
  return joint + alpha * reg;
}

inline double pairwise(const JointCandidate& a, const JointCandidate& b, const RegressionMapSet& reg, double tau) {
  if (a.score < tau || b.score < tau) return 0.0;
  const auto& d = reg.dims();
  const double z = std::sqrt(static_cast<double>(d.height) * d.height + static_cast<double>(d.width) * d.width);
  const auto ta = reg.at(a.joint, a.position);
  const auto tb = reg.at(b.joint, b.position);
  const double ax = a.position.x + z * ta.x, ay = a.position.y + z * ta.y;
  const double bx = b.position.x + z * tb.x, by = b.position.y + z * tb.y;
  return std::exp(-((ax - bx) * (ax - bx) + (ay - by) * (ay - by)));
}

inline double vote_density(double hx, double hy, const std::vector<Vote>& votes, const std::vector<double>& weights) {
  double s = 0.0;
  for (const auto& v : votes) {
    const double w = weights.empty() ? 1.0 : weights[static_cast<std::size_t>(v.source.joint)];
    s += w * std::exp(-((v.point.x - hx) * (v.point.x - hx) + (v.point.y - hy) * (v.point.y - hy)));
  }
  return s;
}

// All-point interpolated AP: for every recall level reached by a true
// positive, the best precision at that recall or beyond, weighted by the
// recall step. Percent.
inline double average_precision(const std::vector<posepart::ScoredHit>& hits, std::size_t positives) {
  std::vector<posepart::ScoredHit> ranked = hits;
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.score > b.score; });
  std::vector<double> prec, rec;
  std::size_t tp = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    tp += ranked[i].true_positive ? 1 : 0;
    prec.push_back(static_cast<double>(tp) / static_cast<double>(i + 1));
    rec.push_back(static_cast<double>(tp) / static_cast<double>(positives));
  }
  double ap = 0.0, prev = 0.0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (!ranked[i].true_positive) continue;
    double best = 0.0;
    for (std::size_t k = 0; k < ranked.size(); ++k)
      if (rec[k] >= rec[i]) best = std::max(best, prec[k]);
    ap += (rec[i] - prev) * best;
    prev = rec[i];
  }
  return 100.0 * ap;
}

}  // namespace oracle
