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

#include "posepart/posepart.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <utility>

#include "posepart/config.hpp"
#include "posepart/corpus.hpp"
#include "posepart/error.hpp"
#include "posepart/eval.hpp"
#include "posepart/json_io.hpp"
#include "posepart/pipeline.hpp"
#include "posepart/pmap.hpp"
#include "posepart/render.hpp"

using namespace posepart;

struct pp_config {
  PipelineConfig value;
};
struct pp_scene {
  Scene value;
};
struct pp_conf_maps {
  ConfidenceMapSet value;
};
struct pp_reg_maps {
  RegressionMapSet value;
};
struct pp_candidates {
  std::vector<JointCandidate> value;
};
struct pp_partitions {
  std::vector<Partition> value;
  double link_threshold = 0.0;
};
struct pp_poses {
  PoseSet value;
  int height = 0;
  int width = 0;
};
struct pp_evaluator {
  MatchParams params;
  std::vector<CorpusItem> items;
};
struct pp_report {
  EvalReport value;
};
struct pp_corpus {
  std::vector<Scene> value;
};

namespace {

thread_local std::string g_last_error;

pp_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return PP_ERR_INVALID_ARGUMENT;
    case ErrorCode::io: return PP_ERR_IO;
    case ErrorCode::format: return PP_ERR_FORMAT;
    case ErrorCode::kind_mismatch: return PP_ERR_KIND_MISMATCH;
    case ErrorCode::dimension: return PP_ERR_DIMENSION;
    case ErrorCode::schema: return PP_ERR_SCHEMA;
    case ErrorCode::annotation: return PP_ERR_ANNOTATION;
    case ErrorCode::parameter: return PP_ERR_PARAMETER;
    case ErrorCode::config: return PP_ERR_CONFIG;
    case ErrorCode::evaluation: return PP_ERR_EVALUATION;
  }
  return PP_ERR_INTERNAL;
}

pp_status fail(pp_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <class F>
pp_status guard(F&& body) {
  try {
    body();
    return PP_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PP_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int to_int(double v, const char* key) {
  if (!std::isfinite(v) || v != std::floor(v) || std::fabs(v) > 1e9)
    throw config_error(std::string(key) + " must be an integer");
  return static_cast<int>(v);
}

// Pointer to a double-valued config field, or nullptr.
double* double_field(PipelineConfig& c, const std::string& key) {
  if (key == "sigma") return &c.sigma;
  if (key == "radius") return &c.radius;
  if (key == "tau") return &c.tau;
  if (key == "link_fraction") return &c.link_fraction;
  if (key == "alpha") return &c.alpha;
  if (key == "pckh_fraction") return &c.match.pckh_fraction;
  if (key == "absolute_threshold") return &c.match.absolute_threshold;
  if (key == "corpus.min_separation") return &c.corpus.min_separation;
  if (key == "corpus.jitter") return &c.corpus.jitter;
  return nullptr;
}

int* int_field(PipelineConfig& c, const std::string& key) {
  if (key == "nms_radius") return &c.nms_radius;
  if (key == "corpus.num_scenes") return &c.corpus.num_scenes;
  if (key == "corpus.min_persons") return &c.corpus.min_persons;
  if (key == "corpus.max_persons") return &c.corpus.max_persons;
  if (key == "corpus.height") return &c.corpus.height;
  if (key == "corpus.width") return &c.corpus.width;
  return nullptr;
}

}  // namespace

extern "C" {

const char* pp_version(void) { return "1.0.0"; }

const char* pp_status_string(pp_status status) {
  switch (status) {
    case PP_OK: return "ok";
    case PP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PP_ERR_IO: return "i/o error";
    case PP_ERR_FORMAT: return "format error";
    case PP_ERR_KIND_MISMATCH: return "map kind mismatch";
    case PP_ERR_DIMENSION: return "dimension mismatch";
    case PP_ERR_SCHEMA: return "schema error";
    case PP_ERR_ANNOTATION: return "annotation error";
    case PP_ERR_PARAMETER: return "parameter error";
    case PP_ERR_CONFIG: return "config error";
    case PP_ERR_EVALUATION: return "evaluation error";
    case PP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pp_last_error(void) { return g_last_error.c_str(); }

void pp_string_free(char* str) { std::free(str); }

/* ---- configuration ---- */

pp_status pp_config_create_default(pp_config** out) {
  return guard([&] {
    require(out, "out");
    *out = new pp_config{};
  });
}

pp_status pp_config_load(const char* path, pp_config** out) {
  return guard([&] {
    require(path && out, "path/out");
    *out = new pp_config{io::load_config(path)};
  });
}

pp_status pp_config_from_json(const char* json, pp_config** out) {
  return guard([&] {
    require(json && out, "json/out");
    *out = new pp_config{io::parse_config(json)};
  });
}

pp_status pp_config_to_json(const pp_config* config, char** out) {
  return guard([&] {
    require(config && out, "config/out");
    *out = dup_string(io::dump_config(config->value));
  });
}

pp_status pp_config_set_number(pp_config* config, const char* key, double value) {
  return guard([&] {
    require(config && key, "config/key");
    PipelineConfig next = config->value;
    const std::string k = key;
    if (auto* d = double_field(next, k)) {
      *d = value;
    } else if (auto* i = int_field(next, k)) {
      *i = to_int(value, key);
    } else if (k == "link_threshold") {
      if (value > 0)
        next.link_threshold = value;
      else
        next.link_threshold.reset();
    } else if (k == "seed") {
      if (!(value >= 0) || value != std::floor(value) || value > 9007199254740992.0)
        throw config_error("seed must be a non-negative integer");
      next.seed = static_cast<std::uint64_t>(value);
    } else {
      throw config_error("unknown config key '" + k + "'");
    }
    validate(next);
    config->value = std::move(next);
  });
}

pp_status pp_config_get_number(const pp_config* config, const char* key, double* value) {
  return guard([&] {
    require(config && key && value, "config/key/value");
    PipelineConfig c = config->value;
    const std::string k = key;
    if (auto* d = double_field(c, k))
      *value = *d;
    else if (auto* i = int_field(c, k))
      *value = *i;
    else if (k == "link_threshold")
      *value = c.link_threshold.value_or(0.0);
    else if (k == "seed")
      *value = static_cast<double>(c.seed);
    else
      throw config_error("unknown config key '" + k + "'");
  });
}

void pp_config_free(pp_config* config) { delete config; }

/* ---- scenes ---- */

pp_status pp_scene_load(const char* path, pp_scene** out) {
  return guard([&] {
    require(path && out, "path/out");
    *out = new pp_scene{io::load_scene(path)};
  });
}

pp_status pp_scene_from_json(const char* json, pp_scene** out) {
  return guard([&] {
    require(json && out, "json/out");
    *out = new pp_scene{io::parse_scene(json)};
  });
}

pp_status pp_scene_save(const pp_scene* scene, const char* path) {
  return guard([&] {
    require(scene && path, "scene/path");
    io::save_scene(scene->value, path);
  });
}

pp_status pp_scene_to_json(const pp_scene* scene, char** out) {
  return guard([&] {
    require(scene && out, "scene/out");
    *out = dup_string(io::dump_scene(scene->value));
  });
}

pp_status pp_scene_dims(const pp_scene* scene, int* height, int* width, int* num_joints, size_t* num_persons) {
  return guard([&] {
    require(scene, "scene");
    if (height) *height = scene->value.height;
    if (width) *width = scene->value.width;
    if (num_joints) *num_joints = scene->value.layout.size();
    if (num_persons) *num_persons = scene->value.persons.size();
  });
}

pp_status pp_scene_joint(const pp_scene* scene, size_t person, int joint, int* present, double* x, double* y) {
  return guard([&] {
    require(scene && present, "scene/present");
    const auto& s = scene->value;
    if (person >= s.persons.size() || joint < 0 || joint >= s.layout.size())
      throw Error(ErrorCode::invalid_argument, "person or joint index out of range");
    const auto& p = s.persons[person].joints[joint];
    *present = p.has_value() ? 1 : 0;
    if (p) {
      if (x) *x = p->x;
      if (y) *y = p->y;
    }
  });
}

pp_status pp_scene_centroid(const pp_scene* scene, size_t person, double* x, double* y) {
  return guard([&] {
    require(scene && x && y, "scene/x/y");
    if (person >= scene->value.persons.size()) throw Error(ErrorCode::invalid_argument, "person index out of range");
    const Point c = resolved_centroid(scene->value.persons[person]);
    *x = c.x;
    *y = c.y;
  });
}

pp_status pp_scene_augment(const pp_scene* scene, double rotation_deg, double scale, double tx, double ty,
                           int mirror, int enforce_ranges, pp_scene** out) {
  return guard([&] {
    require(scene && out, "scene/out");
    AugmentParams p;
    p.rotation_deg = rotation_deg;
    p.scale = scale;
    p.translate = {tx, ty};
    p.mirror = mirror != 0;
    p.enforce_ranges = enforce_ranges != 0;
    *out = new pp_scene{augment(scene->value, p)};
  });
}

pp_status pp_scene_perturb_centroids(const pp_scene* scene, double min_sep, pp_scene** out) {
  return guard([&] {
    require(scene && out, "scene/out");
    *out = new pp_scene{perturb_overlapping_centroids(scene->value, min_sep)};
  });
}

void pp_scene_free(pp_scene* scene) { delete scene; }

/* ---- maps ---- */

pp_status pp_synth(const pp_scene* scene, const pp_config* config, pp_conf_maps** conf, pp_reg_maps** reg) {
  return guard([&] {
    require(scene && config && conf && reg, "scene/config/conf/reg");
    auto maps = synthesize(scene->value, config->value);
    auto* c = new pp_conf_maps{std::move(maps.conf)};
    try {
      *reg = new pp_reg_maps{std::move(maps.reg)};
    } catch (...) {
      delete c;
      throw;
    }
    *conf = c;
  });
}

pp_status pp_conf_maps_create(int joints, int height, int width, const float* values, pp_conf_maps** out) {
  return guard([&] {
    require(out, "out");
    if (joints < 1 || height < 1 || width < 1) throw dimension_error("map dimensions must be positive");
    const MapDims dims{joints, height, width};
    if (!values) {
      *out = new pp_conf_maps{ConfidenceMapSet(dims)};
      return;
    }
    *out = new pp_conf_maps{ConfidenceMapSet(dims, std::vector<float>(values, values + dims.cells()))};
  });
}

pp_status pp_reg_maps_create(int joints, int height, int width, const float* values, pp_reg_maps** out) {
  return guard([&] {
    require(out, "out");
    if (joints < 1 || height < 1 || width < 1) throw dimension_error("map dimensions must be positive");
    const MapDims dims{joints, height, width};
    if (!values) {
      *out = new pp_reg_maps{RegressionMapSet(dims)};
      return;
    }
    *out = new pp_reg_maps{RegressionMapSet(dims, std::vector<float>(values, values + 2 * dims.cells()))};
  });
}

pp_status pp_conf_maps_load(const char* path, pp_conf_maps** out) {
  return guard([&] {
    require(path && out, "path/out");
    *out = new pp_conf_maps{pmap::load_confidence(path)};
  });
}

pp_status pp_reg_maps_load(const char* path, pp_reg_maps** out) {
  return guard([&] {
    require(path && out, "path/out");
    *out = new pp_reg_maps{pmap::load_regression(path)};
  });
}

pp_status pp_conf_maps_save(const pp_conf_maps* maps, const char* path) {
  return guard([&] {
    require(maps && path, "maps/path");
    pmap::save(maps->value, path);
  });
}

pp_status pp_reg_maps_save(const pp_reg_maps* maps, const char* path) {
  return guard([&] {
    require(maps && path, "maps/path");
    pmap::save(maps->value, path);
  });
}

pp_status pp_conf_maps_dims(const pp_conf_maps* maps, int* joints, int* height, int* width) {
  return guard([&] {
    require(maps, "maps");
    const auto& d = maps->value.dims();
    if (joints) *joints = d.joints;
    if (height) *height = d.height;
    if (width) *width = d.width;
  });
}

pp_status pp_reg_maps_dims(const pp_reg_maps* maps, int* joints, int* height, int* width) {
  return guard([&] {
    require(maps, "maps");
    const auto& d = maps->value.dims();
    if (joints) *joints = d.joints;
    if (height) *height = d.height;
    if (width) *width = d.width;
  });
}

pp_status pp_conf_maps_data(const pp_conf_maps* maps, const float** data, size_t* count) {
  return guard([&] {
    require(maps && data && count, "maps/data/count");
    *data = maps->value.values().data();
    *count = maps->value.values().size();
  });
}

pp_status pp_reg_maps_data(const pp_reg_maps* maps, const float** data, size_t* count) {
  return guard([&] {
    require(maps && data && count, "maps/data/count");
    *data = maps->value.values().data();
    *count = maps->value.values().size();
  });
}

pp_status pp_map_loss(const pp_conf_maps* conf_pred, const pp_conf_maps* conf_target, const pp_reg_maps* reg_pred,
                      const pp_reg_maps* reg_target, double alpha, double* joint_loss, double* regression_loss,
                      double* total_loss) {
  return guard([&] {
    require(conf_pred && conf_target && reg_pred && reg_target, "maps");
    const MapLoss l = map_loss(conf_pred->value, conf_target->value, reg_pred->value, reg_target->value, alpha);
    if (joint_loss) *joint_loss = l.joint;
    if (regression_loss) *regression_loss = l.regression;
    if (total_loss) *total_loss = l.total;
  });
}

void pp_conf_maps_free(pp_conf_maps* maps) { delete maps; }
void pp_reg_maps_free(pp_reg_maps* maps) { delete maps; }

/* ---- detection ---- */

pp_status pp_detect(const pp_conf_maps* conf, const pp_config* config, pp_candidates** out) {
  return guard([&] {
    require(conf && config && out, "conf/config/out");
    validate(config->value);
    *out = new pp_candidates{detect_candidates(conf->value, config->value.detector())};
  });
}

pp_status pp_candidates_load(const char* path, pp_candidates** out) {
  return guard([&] {
    require(path && out, "path/out");
    *out = new pp_candidates{io::load_candidates(path)};
  });
}

pp_status pp_candidates_save(const pp_candidates* candidates, const char* path) {
  return guard([&] {
    require(candidates && path, "candidates/path");
    io::save_candidates(candidates->value, path);
  });
}

size_t pp_candidates_count(const pp_candidates* candidates) { return candidates ? candidates->value.size() : 0; }

pp_status pp_candidates_get(const pp_candidates* candidates, size_t index, int* joint, int* x, int* y,
                            float* score) {
  return guard([&] {
    require(candidates, "candidates");
    if (index >= candidates->value.size()) throw Error(ErrorCode::invalid_argument, "candidate index out of range");
    const auto& c = candidates->value[index];
    if (joint) *joint = c.joint;
    if (x) *x = c.position.x;
    if (y) *y = c.position.y;
    if (score) *score = c.score;
  });
}

void pp_candidates_free(pp_candidates* candidates) { delete candidates; }

/* ---- partitions ---- */

pp_status pp_partition(const pp_candidates* candidates, const pp_reg_maps* reg, const pp_config* config,
                       pp_partitions** out) {
  return guard([&] {
    require(candidates && reg && config && out, "candidates/reg/config/out");
    if (reg->value.dims().joints != config->value.layout.size())
      throw dimension_error("regression maps have " + std::to_string(reg->value.dims().joints) +
                            " joints, layout has " + std::to_string(config->value.layout.size()));
    auto* p = new pp_partitions{};
    try {
      p->value = partition_candidates(candidates->value, reg->value, config->value, &p->link_threshold);
    } catch (...) {
      delete p;
      throw;
    }
    *out = p;
  });
}

size_t pp_partitions_count(const pp_partitions* partitions) { return partitions ? partitions->value.size() : 0; }

pp_status pp_partitions_get(const pp_partitions* partitions, size_t index, size_t* num_members, double* centroid_x,
                            double* centroid_y, double* score) {
  return guard([&] {
    require(partitions, "partitions");
    if (index >= partitions->value.size()) throw Error(ErrorCode::invalid_argument, "partition index out of range");
    const auto& p = partitions->value[index];
    if (num_members) *num_members = p.members.size();
    if (centroid_x) *centroid_x = p.centroid.x;
    if (centroid_y) *centroid_y = p.centroid.y;
    if (score) *score = p.score;
  });
}

pp_status pp_partitions_member(const pp_partitions* partitions, size_t index, size_t member, size_t* candidate) {
  return guard([&] {
    require(partitions && candidate, "partitions/candidate");
    if (index >= partitions->value.size() || member >= partitions->value[index].members.size())
      throw Error(ErrorCode::invalid_argument, "partition member out of range");
    *candidate = partitions->value[index].members[member].index;
  });
}

pp_status pp_partitions_total_score(const pp_partitions* partitions, double* score) {
  return guard([&] {
    require(partitions && score, "partitions/score");
    *score = partition_score(partitions->value);
  });
}

double pp_partitions_link_threshold(const pp_partitions* partitions) {
  return partitions ? partitions->link_threshold : 0.0;
}

pp_status pp_partitions_save(const pp_partitions* partitions, const char* path) {
  return guard([&] {
    require(partitions && path, "partitions/path");
    io::write_text(path, io::dump_partitions(partitions->value, partitions->link_threshold));
  });
}

void pp_partitions_free(pp_partitions* partitions) { delete partitions; }

/* ---- inference ---- */

pp_status pp_infer(const pp_partitions* partitions, const pp_conf_maps* conf, const pp_reg_maps* reg,
                   const pp_config* config, pp_poses** out) {
  return guard([&] {
    require(partitions && conf && reg && config && out, "partitions/conf/reg/config/out");
    validate(config->value);
    check_compatible(conf->value, reg->value, config->value.layout);
    const auto& d = conf->value.dims();
    *out = new pp_poses{infer_all(partitions->value, conf->value, reg->value, config->value.layout,
                                  config->value.tau),
                        d.height, d.width};
  });
}

pp_status pp_decode(const pp_conf_maps* conf, const pp_reg_maps* reg, const pp_config* config, pp_poses** out,
                    pp_candidates** candidates_out, pp_partitions** partitions_out) {
  return guard([&] {
    require(conf && reg && config && out, "conf/reg/config/out");
    auto result = decode(conf->value, reg->value, config->value);
    const auto& d = conf->value.dims();
    std::unique_ptr<pp_candidates> c;
    std::unique_ptr<pp_partitions> p;
    if (candidates_out) c.reset(new pp_candidates{std::move(result.candidates)});
    if (partitions_out) p.reset(new pp_partitions{std::move(result.partitions), result.link_threshold});
    *out = new pp_poses{std::move(result.poses), d.height, d.width};
    if (candidates_out) *candidates_out = c.release();
    if (partitions_out) *partitions_out = p.release();
  });
}

pp_status pp_poses_load(const char* path, const pp_config* config, pp_poses** out) {
  return guard([&] {
    require(path && config && out, "path/config/out");
    auto file = io::load_poses(path, config->value.layout.size());
    PoseSet set;
    set.poses = std::move(file.poses);
    set.num_partitions = file.num_partitions;
    *out = new pp_poses{std::move(set), file.height, file.width};
  });
}

pp_status pp_poses_save(const pp_poses* poses, const char* path) {
  return guard([&] {
    require(poses && path, "poses/path");
    io::write_text(path, io::dump_poses(poses->value, poses->height, poses->width));
  });
}

pp_status pp_poses_save_trace(const pp_poses* poses, const char* path) {
  return guard([&] {
    require(poses && path, "poses/path");
    io::write_text(path, io::dump_trace(poses->value.trace));
  });
}

size_t pp_poses_count(const pp_poses* poses) { return poses ? poses->value.poses.size() : 0; }

size_t pp_poses_partition_count(const pp_poses* poses) { return poses ? poses->value.num_partitions : 0; }

pp_status pp_poses_joint(const pp_poses* poses, size_t pose, int joint, int* present, int* x, int* y,
                         float* score) {
  return guard([&] {
    require(poses && present, "poses/present");
    const auto& all = poses->value.poses;
    if (pose >= all.size() || joint < 0 || static_cast<size_t>(joint) >= all[pose].joints.size())
      throw Error(ErrorCode::invalid_argument, "pose or joint index out of range");
    const auto& j = all[pose].joints[joint];
    *present = j.has_value() ? 1 : 0;
    if (j) {
      if (x) *x = j->position.x;
      if (y) *y = j->position.y;
      if (score) *score = j->score;
    }
  });
}

size_t pp_poses_trace_length(const pp_poses* poses) { return poses ? poses->value.trace.size() : 0; }

pp_status pp_poses_trace_energy(const pp_poses* poses, size_t step, double* energy) {
  return guard([&] {
    require(poses && energy, "poses/energy");
    if (step >= poses->value.trace.size()) throw Error(ErrorCode::invalid_argument, "trace step out of range");
    *energy = poses->value.trace[step].energy;
  });
}

void pp_poses_free(pp_poses* poses) { delete poses; }

pp_status pp_render(const pp_poses* poses, const pp_scene* scene, const pp_config* config, const char* path) {
  return guard([&] {
    require(poses && config && path, "poses/config/path");
    int h = poses->height;
    int w = poses->width;
    if (scene) {
      h = scene->value.height;
      w = scene->value.width;
    }
    const auto bytes = render_overlay(poses->value.poses, scene ? &scene->value : nullptr, config->value.layout, h, w);
    pmap::write_file(path, bytes);
  });
}

/* ---- evaluation ---- */

pp_status pp_evaluator_create(const pp_config* config, pp_evaluator** out) {
  return guard([&] {
    require(config && out, "config/out");
    validate(config->value.match);
    *out = new pp_evaluator{config->value.match, {}};
  });
}

pp_status pp_evaluator_add(pp_evaluator* evaluator, const pp_poses* poses, const pp_scene* scene) {
  return guard([&] {
    require(evaluator && scene, "evaluator/scene");
    CorpusItem item;
    item.scene = scene->value;
    if (poses) {
      item.poses = poses->value.poses;
      item.predicted_count = static_cast<int>(poses->value.num_partitions);
    } else {
      item.predicted_count = 0;
    }
    evaluator->items.push_back(std::move(item));
  });
}

pp_status pp_evaluator_finish(const pp_evaluator* evaluator, pp_report** out) {
  return guard([&] {
    require(evaluator && out, "evaluator/out");
    *out = new pp_report{evaluate(evaluator->items, evaluator->params)};
  });
}

void pp_evaluator_free(pp_evaluator* evaluator) { delete evaluator; }

double pp_report_total_ap(const pp_report* report) { return report ? report->value.total_ap : NAN; }

double pp_report_count_mse(const pp_report* report) { return report ? report->value.count_mse : NAN; }

pp_status pp_report_joint_ap(const pp_report* report, int joint, int* defined, double* ap) {
  return guard([&] {
    require(report && defined && ap, "report/defined/ap");
    const auto& v = report->value.per_joint_ap;
    if (joint < 0 || static_cast<size_t>(joint) >= v.size())
      throw Error(ErrorCode::invalid_argument, "joint index out of range");
    *defined = v[joint].has_value() ? 1 : 0;
    *ap = v[joint].value_or(NAN);
  });
}

pp_status pp_report_save_json(const pp_report* report, const char* path) {
  return guard([&] {
    require(report && path, "report/path");
    io::write_text(path, io::dump_report(report->value));
  });
}

pp_status pp_report_save_csv(const pp_report* report, const char* path) {
  return guard([&] {
    require(report && path, "report/path");
    io::write_text(path, report_csv(report->value));
  });
}

void pp_report_free(pp_report* report) { delete report; }

/* ---- corpus ---- */

pp_status pp_corpus_generate(const pp_config* config, uint64_t seed, int num_scenes, pp_corpus** out) {
  return guard([&] {
    require(config && out, "config/out");
    CorpusSpec spec = config->value.corpus;
    if (num_scenes >= 0) spec.num_scenes = num_scenes;
    *out = new pp_corpus{generate_corpus(spec, seed, config->value.layout)};
  });
}

size_t pp_corpus_count(const pp_corpus* corpus) { return corpus ? corpus->value.size() : 0; }

pp_status pp_corpus_scene(const pp_corpus* corpus, size_t index, pp_scene** out) {
  return guard([&] {
    require(corpus && out, "corpus/out");
    if (index >= corpus->value.size()) throw Error(ErrorCode::invalid_argument, "scene index out of range");
    *out = new pp_scene{corpus->value[index]};
  });
}

void pp_corpus_free(pp_corpus* corpus) { delete corpus; }

}  // extern "C"
