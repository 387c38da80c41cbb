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

#include <cmath>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "posepart/config.hpp"
#include "posepart/corpus.hpp"
#include "posepart/error.hpp"
#include "posepart/json_io.hpp"
#include "posepart/parallel.hpp"
#include "posepart/pipeline.hpp"
#include "test_support.hpp"

using namespace posepart;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::invalid_argument;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("corpus generation is deterministic and honours separation") {
  CorpusSpec spec;
  spec.num_scenes = 30;
  const auto a = generate_corpus(spec, 42);
  const auto b = generate_corpus(spec, 42);
  REQUIRE(a.size() == 30);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(io::dump_scene(a[i]) == io::dump_scene(b[i]));
  CHECK(io::dump_scene(generate_corpus(spec, 43)[0]) != io::dump_scene(a[0]));

  spec.num_scenes = 0;
  CHECK(generate_corpus(spec, 1).empty());

  spec.num_scenes = 50;
  spec.min_persons = spec.max_persons = 3;
  spec.min_separation = 40.0;
  for (const auto& s : generate_corpus(spec, 5)) {
    CHECK_NOTHROW(validate(s));
    REQUIRE(s.persons.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (const auto& j : s.persons[i].joints) {
        REQUIRE(j.has_value());
        CHECK(j->x == std::floor(j->x));
      }
      for (std::size_t k = i + 1; k < 3; ++k)
        CHECK(distance(resolved_centroid(s.persons[i]), resolved_centroid(s.persons[k])) >= 40.0);
    }
  }
}

TEST_CASE("impossible placement is a configuration error") {
  CorpusSpec spec;
  spec.num_scenes = 1;
  spec.min_persons = spec.max_persons = 5;
  spec.min_separation = 200.0;
  spec.max_attempts = 20;
  CHECK(code_of([&] { generate_corpus(spec, 1); }) == ErrorCode::config);
  spec.min_separation = -1.0;
  CHECK(code_of([&] { generate_corpus(spec, 1); }) == ErrorCode::config);
}

TEST_CASE("scene json round trip") {
  auto s = testing::scene(64, 80, {testing::person({{"pelvis", {10.5, 20}}, {"r_wrist", {3, 4}}})});
  s.persons[0].centroid = Point{11, 12};
  s.persons[0].head_box = std::array<double, 4>{1, 2, 3, 4};
  const auto text = io::dump_scene(s);
  const auto back = io::parse_scene(text);
  CHECK(io::dump_scene(back) == text);
  CHECK(back.layout == mpii_layout());
  CHECK(*back.persons[0].joints[testing::jid("pelvis")] == Point{10.5, 20});
  CHECK(*back.persons[0].centroid == Point{11, 12});
}

TEST_CASE("scene json diagnostics") {
  const auto syntax = message_of([] { io::parse_scene("{\"height\": 4,", "s.json"); });
  CHECK(syntax.find("s.json") != std::string::npos);
  CHECK(syntax.find("offset") != std::string::npos);

  const std::string nulls = "[null,null,null,null,null,null,null,null,null,null,null,null,null,null,null,null]";
  const auto missing = message_of([] { io::parse_scene("{\"width\": 4, \"persons\": []}", "s.json"); });
  CHECK(missing.find("height") != std::string::npos);

  CHECK(code_of([&] {
          io::parse_scene("{\"height\": 4, \"width\": 4, \"persons\": [{\"joints\": [[1,2]]}]}");
        }) == ErrorCode::schema);
  const auto bad_type =
      message_of([&] { io::parse_scene("{\"height\": \"4\", \"width\": 4, \"persons\": []}", "s.json"); });
  CHECK(bad_type.find("/height") != std::string::npos);

  CHECK(code_of([&] { io::parse_scene("{\"height\": 4, \"width\": 4, \"persons\": [], \"extra\": 1}"); }) ==
        ErrorCode::schema);

  // joint outside the canvas
  const std::string outside = "{\"height\": 4, \"width\": 4, \"persons\": [{\"joints\": [[9,1]" +
                              nulls.substr(5, nulls.size() - 5) + "}]}";
  CHECK(code_of([&] { io::parse_scene(outside); }) == ErrorCode::annotation);
}

TEST_CASE("candidates json round trip") {
  const std::vector<JointCandidate> c = {{{1, 2}, 0, 0.5f}, {{3, 4}, 2, 0.123456789f}};
  const auto back = io::parse_candidates(io::dump_candidates(c));
  CHECK(back == c);
  CHECK(code_of([] { io::parse_candidates("[{\"joint\": 0, \"x\": 1.5, \"y\": 0, \"score\": 1}]"); }) ==
        ErrorCode::schema);
}

TEST_CASE("poses json mirrors the scene format and round trips") {
  const auto s = testing::scene(96, 96, {testing::skeleton({48, 48})});
  PipelineConfig cfg;
  const auto maps = synthesize(s, cfg);
  const auto out = decode(maps.conf, maps.reg, cfg);
  const auto text = io::dump_poses(out.poses, 96, 96);
  CHECK(text.find("\"joints\"") != std::string::npos);
  CHECK(text.find("\"scores\"") != std::string::npos);
  const auto file = io::parse_poses(text, 16);
  CHECK(file.height == 96);
  CHECK(file.num_partitions == 1);
  REQUIRE(file.poses.size() == 1);
  for (int j = 0; j < 16; ++j) {
    CHECK(file.poses[0].joints[j]->position == out.poses.poses[0].joints[j]->position);
    CHECK(file.poses[0].joints[j]->score == out.poses.poses[0].joints[j]->score);
  }
  CHECK(code_of([&] { io::parse_poses(text, 14); }) == ErrorCode::schema);
}

TEST_CASE("trace csv") {
  std::vector<EnergyStep> t = {{0, 0, -1, 0, -2.5}, {0, 0, 8, 3, -3.5}};
  const auto csv = io::dump_trace(t);
  CHECK(csv.rfind("step,partition,pose,joint,candidate,energy\n0,0,0,-1,,", 0) == 0);
  CHECK(csv.find("\n1,0,0,8,3,-3.5") != std::string::npos);
}

TEST_CASE("config defaults, round trip and validation") {
  const PipelineConfig d;
  CHECK(d.sigma == 7.0);
  CHECK(d.radius == 7.0);
  CHECK(d.tau == 0.1);
  CHECK(d.alpha == 1.0);
  CHECK(d.link_fraction == 0.1);
  CHECK(!d.link_threshold.has_value());
  CHECK(d.cluster(100.0).link_threshold == doctest::Approx(10.0));

  const auto text = io::dump_config(d);
  CHECK(io::dump_config(io::parse_config(text)) == text);

  const auto partial = io::parse_config("{\"tau\": 0.2, \"cluster\": {\"link_threshold\": 12}}");
  CHECK(partial.tau == 0.2);
  CHECK(partial.detector().tau == 0.2);
  CHECK(partial.forward().tau == 0.2);
  CHECK(partial.cluster(1000.0).link_threshold == 12.0);
  CHECK(partial.sigma == 7.0);

  CHECK(code_of([] { io::parse_config("{\"tau\": 2}"); }) == ErrorCode::config);
  CHECK(code_of([] { io::parse_config("{\"forward\": {\"sigma\": 0}}"); }) == ErrorCode::config);
  CHECK(code_of([] { io::parse_config("{\"bogus\": 1}"); }) == ErrorCode::config);
  CHECK(code_of([] { io::parse_config("{\"cluster\": {\"weights\": [1, 2]}}"); }) == ErrorCode::config);
  CHECK(code_of([] { io::parse_config("not json"); }) == ErrorCode::config);
}

TEST_CASE("results do not depend on the worker count") {
  CorpusSpec spec;
  spec.num_scenes = 8;
  const auto scenes = generate_corpus(spec, 77);
  PipelineConfig cfg;
  std::vector<std::string> first;
  for (const char* threads : {"1", "3", "8"}) {
    setenv("PP_THREADS", threads, 1);
    CHECK(worker_count() == std::atoi(threads));
    std::vector<std::string> outs;
    for (const auto& s : scenes) {
      const auto maps = synthesize(s, cfg);
      const auto out = decode(maps.conf, maps.reg, cfg);
      outs.push_back(io::dump_poses(out.poses, s.height, s.width) + io::dump_trace(out.poses.trace));
    }
    if (first.empty())
      first = outs;
    else
      CHECK(outs == first);
  }
  unsetenv("PP_THREADS");
}
