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

/*
 * C interface of the posepart shared library.
 *
 * Every object is an opaque handle created by a pp_*_create / load / compute
 * function and released with the matching pp_*_free (NULL is accepted).
 * Functions return a pp_status; on failure pp_last_error() describes the
 * problem (file name and byte offset or JSON pointer where applicable). The
 * message is thread-local and valid until the next failing call on the same
 * thread. Strings returned through char** must be released with
 * pp_string_free.
 */

#ifndef POSEPART_POSEPART_H
#define POSEPART_POSEPART_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(POSEPART_BUILDING)
#    define PP_API __declspec(dllexport)
#  else
#    define PP_API __declspec(dllimport)
#  endif
#else
#  define PP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pp_status {
  PP_OK = 0,
  PP_ERR_INVALID_ARGUMENT = 1,
  PP_ERR_IO = 2,
  PP_ERR_FORMAT = 3,
  PP_ERR_KIND_MISMATCH = 4,
  PP_ERR_DIMENSION = 5,
  PP_ERR_SCHEMA = 6,
  PP_ERR_ANNOTATION = 7,
  PP_ERR_PARAMETER = 8,
  PP_ERR_CONFIG = 9,
  PP_ERR_EVALUATION = 10,
  PP_ERR_INTERNAL = 99
} pp_status;

typedef struct pp_config pp_config;
typedef struct pp_scene pp_scene;
typedef struct pp_conf_maps pp_conf_maps;
typedef struct pp_reg_maps pp_reg_maps;
typedef struct pp_candidates pp_candidates;
typedef struct pp_partitions pp_partitions;
typedef struct pp_poses pp_poses;
typedef struct pp_evaluator pp_evaluator;
typedef struct pp_report pp_report;
typedef struct pp_corpus pp_corpus;

PP_API const char* pp_version(void);
PP_API const char* pp_status_string(pp_status status);
PP_API const char* pp_last_error(void);
PP_API void pp_string_free(char* str);

/* ---- configuration ---------------------------------------------------- */

PP_API pp_status pp_config_create_default(pp_config** out);
PP_API pp_status pp_config_load(const char* path, pp_config** out);
PP_API pp_status pp_config_from_json(const char* json, pp_config** out);
PP_API pp_status pp_config_to_json(const pp_config* config, char** out);
/* Keys: "sigma", "radius", "tau", "nms_radius", "link_threshold" (<= 0 means
 * automatic), "link_fraction", "alpha", "pckh_fraction",
 * "absolute_threshold", "seed", "corpus.num_scenes", "corpus.min_persons",
 * "corpus.max_persons", "corpus.min_separation", "corpus.height",
 * "corpus.width", "corpus.jitter". The updated config is revalidated. */
PP_API pp_status pp_config_set_number(pp_config* config, const char* key, double value);
PP_API pp_status pp_config_get_number(const pp_config* config, const char* key, double* value);
PP_API void pp_config_free(pp_config* config);

/* ---- scenes ------------------------------------------------------------ */

PP_API pp_status pp_scene_load(const char* path, pp_scene** out);
PP_API pp_status pp_scene_from_json(const char* json, pp_scene** out);
PP_API pp_status pp_scene_save(const pp_scene* scene, const char* path);
PP_API pp_status pp_scene_to_json(const pp_scene* scene, char** out);
PP_API pp_status pp_scene_dims(const pp_scene* scene, int* height, int* width, int* num_joints,
                               size_t* num_persons);
PP_API pp_status pp_scene_joint(const pp_scene* scene, size_t person, int joint, int* present, double* x,
                                double* y);
/* Explicit centroid, or the mean of the present joints. */
PP_API pp_status pp_scene_centroid(const pp_scene* scene, size_t person, double* x, double* y);
PP_API pp_status pp_scene_augment(const pp_scene* scene, double rotation_deg, double scale, double tx,
                                  double ty, int mirror, int enforce_ranges, pp_scene** out);
PP_API pp_status pp_scene_perturb_centroids(const pp_scene* scene, double min_sep, pp_scene** out);
PP_API void pp_scene_free(pp_scene* scene);

/* ---- maps -------------------------------------------------------------- */

PP_API pp_status pp_synth(const pp_scene* scene, const pp_config* config, pp_conf_maps** conf,
                          pp_reg_maps** reg);

/* values: K*H*W floats (confidence) or K*H*W*2 (regression); NULL for zeros. */
PP_API pp_status pp_conf_maps_create(int joints, int height, int width, const float* values,
                                     pp_conf_maps** out);
PP_API pp_status pp_reg_maps_create(int joints, int height, int width, const float* values,
                                    pp_reg_maps** out);
PP_API pp_status pp_conf_maps_load(const char* path, pp_conf_maps** out);
PP_API pp_status pp_reg_maps_load(const char* path, pp_reg_maps** out);
PP_API pp_status pp_conf_maps_save(const pp_conf_maps* maps, const char* path);
PP_API pp_status pp_reg_maps_save(const pp_reg_maps* maps, const char* path);
PP_API pp_status pp_conf_maps_dims(const pp_conf_maps* maps, int* joints, int* height, int* width);
PP_API pp_status pp_reg_maps_dims(const pp_reg_maps* maps, int* joints, int* height, int* width);
PP_API pp_status pp_conf_maps_data(const pp_conf_maps* maps, const float** data, size_t* count);
PP_API pp_status pp_reg_maps_data(const pp_reg_maps* maps, const float** data, size_t* count);
PP_API pp_status pp_map_loss(const pp_conf_maps* conf_pred, const pp_conf_maps* conf_target,
                             const pp_reg_maps* reg_pred, const pp_reg_maps* reg_target, double alpha,
                             double* joint_loss, double* regression_loss, double* total_loss);
PP_API void pp_conf_maps_free(pp_conf_maps* maps);
PP_API void pp_reg_maps_free(pp_reg_maps* maps);

/* ---- detection --------------------------------------------------------- */

PP_API pp_status pp_detect(const pp_conf_maps* conf, const pp_config* config, pp_candidates** out);
PP_API pp_status pp_candidates_load(const char* path, pp_candidates** out);
PP_API pp_status pp_candidates_save(const pp_candidates* candidates, const char* path);
PP_API size_t pp_candidates_count(const pp_candidates* candidates);
PP_API pp_status pp_candidates_get(const pp_candidates* candidates, size_t index, int* joint, int* x, int* y,
                                   float* score);
PP_API void pp_candidates_free(pp_candidates* candidates);

/* ---- partitions -------------------------------------------------------- */

PP_API pp_status pp_partition(const pp_candidates* candidates, const pp_reg_maps* reg,
                              const pp_config* config, pp_partitions** out);
PP_API size_t pp_partitions_count(const pp_partitions* partitions);
PP_API pp_status pp_partitions_get(const pp_partitions* partitions, size_t index, size_t* num_members,
                                   double* centroid_x, double* centroid_y, double* score);
/* Candidate index of the member-th member of a partition. */
PP_API pp_status pp_partitions_member(const pp_partitions* partitions, size_t index, size_t member,
                                      size_t* candidate);
PP_API pp_status pp_partitions_total_score(const pp_partitions* partitions, double* score);
PP_API double pp_partitions_link_threshold(const pp_partitions* partitions);
PP_API pp_status pp_partitions_save(const pp_partitions* partitions, const char* path);
PP_API void pp_partitions_free(pp_partitions* partitions);

/* ---- inference --------------------------------------------------------- */

PP_API pp_status pp_infer(const pp_partitions* partitions, const pp_conf_maps* conf, const pp_reg_maps* reg,
                          const pp_config* config, pp_poses** out);
/* detect + partition + infer. candidates_out and partitions_out may be NULL;
 * when given they receive the intermediate results. */
PP_API pp_status pp_decode(const pp_conf_maps* conf, const pp_reg_maps* reg, const pp_config* config,
                           pp_poses** out, pp_candidates** candidates_out, pp_partitions** partitions_out);
PP_API pp_status pp_poses_load(const char* path, const pp_config* config, pp_poses** out);
PP_API pp_status pp_poses_save(const pp_poses* poses, const char* path);
/* CSV energy trace: step,partition,pose,joint,candidate,energy */
PP_API pp_status pp_poses_save_trace(const pp_poses* poses, const char* path);
PP_API size_t pp_poses_count(const pp_poses* poses);
PP_API size_t pp_poses_partition_count(const pp_poses* poses);
PP_API pp_status pp_poses_joint(const pp_poses* poses, size_t pose, int joint, int* present, int* x, int* y,
                                float* score);
PP_API size_t pp_poses_trace_length(const pp_poses* poses);
PP_API pp_status pp_poses_trace_energy(const pp_poses* poses, size_t step, double* energy);
PP_API void pp_poses_free(pp_poses* poses);

/* Stick-figure overlay as binary PPM. scene may be NULL. */
PP_API pp_status pp_render(const pp_poses* poses, const pp_scene* scene, const pp_config* config,
                           const char* path);

/* ---- evaluation -------------------------------------------------------- */

PP_API pp_status pp_evaluator_create(const pp_config* config, pp_evaluator** out);
/* poses may be NULL for a scene without predictions. */
PP_API pp_status pp_evaluator_add(pp_evaluator* evaluator, const pp_poses* poses, const pp_scene* scene);
PP_API pp_status pp_evaluator_finish(const pp_evaluator* evaluator, pp_report** out);
PP_API void pp_evaluator_free(pp_evaluator* evaluator);

PP_API double pp_report_total_ap(const pp_report* report);
PP_API double pp_report_count_mse(const pp_report* report);
/* *defined is 0 when the joint has no ground truth in the corpus. */
PP_API pp_status pp_report_joint_ap(const pp_report* report, int joint, int* defined, double* ap);
PP_API pp_status pp_report_save_json(const pp_report* report, const char* path);
PP_API pp_status pp_report_save_csv(const pp_report* report, const char* path);
PP_API void pp_report_free(pp_report* report);

/* ---- synthetic corpus -------------------------------------------------- */

/* Uses the config's corpus section; num_scenes < 0 keeps its scene count. */
PP_API pp_status pp_corpus_generate(const pp_config* config, uint64_t seed, int num_scenes, pp_corpus** out);
PP_API size_t pp_corpus_count(const pp_corpus* corpus);
/* Returns a new scene handle owned by the caller. */
PP_API pp_status pp_corpus_scene(const pp_corpus* corpus, size_t index, pp_scene** out);
PP_API void pp_corpus_free(pp_corpus* corpus);

#ifdef __cplusplus
}
#endif

#endif /* POSEPART_POSEPART_H */
