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

// posepart command line front end. Talks to the library through the C API
// only.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "posepart/posepart.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

// Thrown to unwind to main with a status already reported.
struct Failure {
  int exit_code;
};

int exit_code_for(pp_status s) {
  switch (s) {
    case PP_OK: return kExitOk;
    case PP_ERR_CONFIG:
    case PP_ERR_PARAMETER: return kExitConfig;
    case PP_ERR_INTERNAL: return kExitInternal;
    default: return kExitInput;
  }
}

void check(pp_status s, const std::string& context = {}) {
  if (s == PP_OK) return;
  std::fprintf(stderr, "posepart: %s%s: %s\n", context.empty() ? "" : (context + ": ").c_str(),
               pp_status_string(s), pp_last_error());
  throw Failure{exit_code_for(s)};
}

[[noreturn]] void fail(int code, const std::string& msg) {
  std::fprintf(stderr, "posepart: %s\n", msg.c_str());
  throw Failure{code};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <class T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using Config = Handle<pp_config, pp_config_free>;
using SceneH = Handle<pp_scene, pp_scene_free>;
using Conf = Handle<pp_conf_maps, pp_conf_maps_free>;
using Reg = Handle<pp_reg_maps, pp_reg_maps_free>;
using Cands = Handle<pp_candidates, pp_candidates_free>;
using Parts = Handle<pp_partitions, pp_partitions_free>;
using Poses = Handle<pp_poses, pp_poses_free>;
using Evaluator = Handle<pp_evaluator, pp_evaluator_free>;
using Report = Handle<pp_report, pp_report_free>;
using Corpus = Handle<pp_corpus, pp_corpus_free>;

struct Overrides {
  std::optional<double> sigma, radius, tau, nms, seed;
  std::string link_threshold;
};

Config load_config(const std::string& path, const Overrides& o) {
  pp_config* raw = nullptr;
  check(path.empty() ? pp_config_create_default(&raw) : pp_config_load(path.c_str(), &raw));
  Config cfg(raw);
  auto set = [&](const char* key, const std::optional<double>& v) {
    if (v) check(pp_config_set_number(cfg.get(), key, *v), std::string("--") + key);
  };
  set("sigma", o.sigma);
  set("radius", o.radius);
  set("tau", o.tau);
  set("nms_radius", o.nms);
  set("seed", o.seed);
  if (!o.link_threshold.empty()) {
    double v = 0.0;
    if (o.link_threshold != "auto") {
      try {
        std::size_t used = 0;
        v = std::stod(o.link_threshold, &used);
        if (used != o.link_threshold.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        fail(kExitConfig, "--link-threshold must be 'auto' or a number, got '" + o.link_threshold + "'");
      }
      if (!(v > 0)) fail(kExitConfig, "--link-threshold must be positive");
    }
    check(pp_config_set_number(cfg.get(), "link_threshold", v), "--link-threshold");
  }
  return cfg;
}

SceneH load_scene(const std::string& path) {
  pp_scene* s = nullptr;
  check(pp_scene_load(path.c_str(), &s));
  return SceneH(s);
}

Conf load_conf(const std::string& path) {
  pp_conf_maps* m = nullptr;
  check(pp_conf_maps_load(path.c_str(), &m));
  return Conf(m);
}

Reg load_reg(const std::string& path) {
  pp_reg_maps* m = nullptr;
  check(pp_reg_maps_load(path.c_str(), &m));
  return Reg(m);
}

std::vector<fs::path> json_files(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) fail(kExitInput, dir + ": not a directory");
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  }
  if (ec) fail(kExitInput, dir + ": " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

void make_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(kExitInput, dir + ": " + ec.message());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"posepart: multi-person pose decoding from confidence and centroid-regression maps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pp_version()));

  std::string config_path;
  Overrides ov;
  app.add_option("--config", config_path, "JSON config file (see `config --print-defaults`)")
      ->check(CLI::ExistingFile);

  // synth
  auto* synth = app.add_subcommand("synth", "Ground-truth confidence and regression maps for a scene");
  std::string scene_path, out_conf, out_reg;
  synth->add_option("--scene", scene_path, "Scene JSON")->required();
  synth->add_option("--out-conf", out_conf, "Confidence maps (PMAP1)")->required();
  synth->add_option("--out-reg", out_reg, "Regression maps (PMAP1)")->required();
  synth->add_option("--sigma", ov.sigma, "Gaussian width");
  synth->add_option("--radius", ov.radius, "Regression neighbourhood radius");

  // detect
  auto* detect = app.add_subcommand("detect", "Joint candidates from confidence maps");
  std::string conf_path, out_path;
  detect->add_option("--conf", conf_path, "Confidence maps (PMAP1)")->required();
  detect->add_option("--tau", ov.tau, "Confidence threshold");
  detect->add_option("--nms", ov.nms, "Suppression radius (Chebyshev, px)");
  detect->add_option("--out", out_path, "Candidates JSON")->required();

  // partition
  auto* partition = app.add_subcommand("partition", "Cluster candidate votes into joint partitions");
  std::string cand_path, reg_path;
  partition->add_option("--candidates", cand_path, "Candidates JSON")->required();
  partition->add_option("--reg", reg_path, "Regression maps (PMAP1)")->required();
  partition->add_option("--link-threshold", ov.link_threshold, "'auto' or a distance in px");
  partition->add_option("--out", out_path, "Partitions JSON")->required();

  // decode
  auto* dec = app.add_subcommand("decode", "detect, partition and greedy inference");
  std::string trace_path, out_cands, out_parts;
  dec->add_option("--conf", conf_path, "Confidence maps (PMAP1)")->required();
  dec->add_option("--reg", reg_path, "Regression maps (PMAP1)")->required();
  dec->add_option("--tau", ov.tau, "Confidence threshold");
  dec->add_option("--nms", ov.nms, "Suppression radius (Chebyshev, px)");
  dec->add_option("--link-threshold", ov.link_threshold, "'auto' or a distance in px");
  dec->add_option("--out", out_path, "Poses JSON")->required();
  dec->add_option("--trace", trace_path, "Energy trace CSV");
  dec->add_option("--out-candidates", out_cands, "Also write the candidates JSON");
  dec->add_option("--out-partitions", out_parts, "Also write the partitions JSON");

  // eval
  auto* ev = app.add_subcommand("eval", "PCKh-matched AP and person-count metrics over a corpus");
  std::string poses_dir, scenes_dir, csv_path;
  ev->add_option("--poses-dir", poses_dir, "Directory of poses JSON, named like the scenes")->required();
  ev->add_option("--scenes-dir", scenes_dir, "Directory of scene JSON")->required();
  ev->add_option("--out", out_path, "Report JSON")->required();
  ev->add_option("--csv", csv_path, "Per-joint-group AP table");

  // render
  auto* render = app.add_subcommand("render", "Stick-figure overlay (PPM)");
  std::string poses_path;
  render->add_option("--poses", poses_path, "Poses JSON")->required();
  render->add_option("--scene", scene_path, "Ground-truth scene drawn in gray");
  render->add_option("--out", out_path, "Output PPM")->required();

  // corpus
  auto* corpus = app.add_subcommand("corpus", "Generate a synthetic scene corpus");
  std::string out_dir;
  std::optional<int> num_scenes;
  bool with_maps = false;
  corpus->add_option("--out-dir", out_dir, "Output directory")->required();
  corpus->add_option("--num-scenes", num_scenes, "Number of scenes (default from config)");
  corpus->add_option("--seed", ov.seed, "Generator seed (default from config)");
  corpus->add_flag("--with-maps", with_maps, "Also write <name>.conf.pmap and <name>.reg.pmap");

  // config
  auto* cfg_cmd = app.add_subcommand("config", "Print the effective configuration");
  bool print_defaults = false;
  cfg_cmd->add_flag("--print-defaults", print_defaults, "Print the built-in defaults, ignoring --config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*cfg_cmd) {
      Config cfg = load_config(print_defaults ? std::string() : config_path, {});
      char* text = nullptr;
      check(pp_config_to_json(cfg.get(), &text));
      std::fputs(text, stdout);
      pp_string_free(text);
      return kExitOk;
    }

    const Config cfg = load_config(config_path, ov);

    if (*synth) {
      const SceneH scene = load_scene(scene_path);
      pp_conf_maps* c = nullptr;
      pp_reg_maps* r = nullptr;
      check(pp_synth(scene.get(), cfg.get(), &c, &r), scene_path);
      const Conf conf(c);
      const Reg reg(r);
      check(pp_conf_maps_save(conf.get(), out_conf.c_str()));
      check(pp_reg_maps_save(reg.get(), out_reg.c_str()));
    } else if (*detect) {
      const Conf conf = load_conf(conf_path);
      pp_candidates* raw = nullptr;
      check(pp_detect(conf.get(), cfg.get(), &raw));
      const Cands cands(raw);
      check(pp_candidates_save(cands.get(), out_path.c_str()));
    } else if (*partition) {
      pp_candidates* rc = nullptr;
      check(pp_candidates_load(cand_path.c_str(), &rc));
      const Cands cands(rc);
      const Reg reg = load_reg(reg_path);
      pp_partitions* rp = nullptr;
      check(pp_partition(cands.get(), reg.get(), cfg.get(), &rp));
      const Parts parts(rp);
      check(pp_partitions_save(parts.get(), out_path.c_str()));
    } else if (*dec) {
      const Conf conf = load_conf(conf_path);
      const Reg reg = load_reg(reg_path);
      pp_poses* rp = nullptr;
      pp_candidates* rc = nullptr;
      pp_partitions* rg = nullptr;
      check(pp_decode(conf.get(), reg.get(), cfg.get(), &rp, out_cands.empty() ? nullptr : &rc,
                      out_parts.empty() ? nullptr : &rg));
      const Poses poses(rp);
      const Cands cands(rc);
      const Parts parts(rg);
      check(pp_poses_save(poses.get(), out_path.c_str()));
      if (!trace_path.empty()) check(pp_poses_save_trace(poses.get(), trace_path.c_str()));
      if (cands) check(pp_candidates_save(cands.get(), out_cands.c_str()));
      if (parts) check(pp_partitions_save(parts.get(), out_parts.c_str()));
    } else if (*ev) {
      pp_evaluator* re = nullptr;
      check(pp_evaluator_create(cfg.get(), &re));
      const Evaluator eval(re);
      const auto scenes = json_files(scenes_dir);
      if (scenes.empty()) fail(kExitInput, scenes_dir + ": no scene files");
      for (const auto& sp : scenes) {
        const fs::path pp = fs::path(poses_dir) / sp.filename();
        if (!fs::exists(pp)) fail(kExitInput, pp.string() + ": missing poses for scene " + sp.string());
        const SceneH scene = load_scene(sp.string());
        pp_poses* raw = nullptr;
        check(pp_poses_load(pp.string().c_str(), cfg.get(), &raw));
        const Poses poses(raw);
        check(pp_evaluator_add(eval.get(), poses.get(), scene.get()), sp.string());
      }
      pp_report* rr = nullptr;
      check(pp_evaluator_finish(eval.get(), &rr));
      const Report report(rr);
      check(pp_report_save_json(report.get(), out_path.c_str()));
      if (!csv_path.empty()) check(pp_report_save_csv(report.get(), csv_path.c_str()));
      std::printf("total AP %.1f  count mse %.4f  scenes %zu\n", pp_report_total_ap(report.get()),
                  pp_report_count_mse(report.get()), scenes.size());
    } else if (*render) {
      pp_poses* raw = nullptr;
      check(pp_poses_load(poses_path.c_str(), cfg.get(), &raw));
      const Poses poses(raw);
      SceneH scene;
      if (!scene_path.empty()) scene = load_scene(scene_path);
      check(pp_render(poses.get(), scene.get(), cfg.get(), out_path.c_str()));
    } else if (*corpus) {
      double seed = 0.0;
      check(pp_config_get_number(cfg.get(), "seed", &seed));
      pp_corpus* raw = nullptr;
      check(pp_corpus_generate(cfg.get(), static_cast<uint64_t>(seed), num_scenes.value_or(-1), &raw));
      const Corpus scenes(raw);
      make_dir(out_dir);
      const std::size_t n = pp_corpus_count(scenes.get());
      for (std::size_t i = 0; i < n; ++i) {
        pp_scene* rs = nullptr;
        check(pp_corpus_scene(scenes.get(), i, &rs));
        const SceneH scene(rs);
        char name[32];
        std::snprintf(name, sizeof name, "scene_%05zu", i);
        const fs::path base = fs::path(out_dir) / name;
        check(pp_scene_save(scene.get(), (base.string() + ".json").c_str()));
        if (with_maps) {
          pp_conf_maps* c = nullptr;
          pp_reg_maps* r = nullptr;
          check(pp_synth(scene.get(), cfg.get(), &c, &r));
          const Conf conf(c);
          const Reg reg(r);
          check(pp_conf_maps_save(conf.get(), (base.string() + ".conf.pmap").c_str()));
          check(pp_reg_maps_save(reg.get(), (base.string() + ".reg.pmap").c_str()));
        }
      }
    }
  } catch (const Failure& f) {
    return f.exit_code;
  }
  return kExitOk;
}
