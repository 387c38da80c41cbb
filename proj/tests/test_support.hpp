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

#include <string>
#include <utility>
#include <vector>

#include "posepart/corpus.hpp"
#include "posepart/scene.hpp"

namespace testing {

using posepart::Point;

inline int jid(const std::string& name) { return *posepart::mpii_layout().find(name); }

// Person with only the named joints present.
inline posepart::PersonAnnotation person(const std::vector<std::pair<std::string, Point>>& joints) {
  posepart::PersonAnnotation p;
  p.joints.assign(static_cast<std::size_t>(posepart::mpii_layout().size()), std::nullopt);
  for (const auto& [name, at] : joints) p.joints[static_cast<std::size_t>(jid(name))] = at;
  return p;
}

// Full standing skeleton anchored at `anchor`, integer coordinates.
inline posepart::PersonAnnotation skeleton(Point anchor) {
  const auto tmpl = posepart::skeleton_template(posepart::mpii_layout());
  posepart::PersonAnnotation p;
  for (const auto& off : tmpl) p.joints.push_back(Point{anchor.x + off.x, anchor.y + off.y});
  return p;
}

inline posepart::Scene scene(int h, int w, std::vector<posepart::PersonAnnotation> persons) {
  posepart::Scene s;
  s.height = h;
  s.width = w;
  s.layout = posepart::mpii_layout();
  s.persons = std::move(persons);
  return s;
}

}  // namespace testing
