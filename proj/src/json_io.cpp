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

#include "posepart/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "posepart/error.hpp"

namespace posepart::io {

using nlohmann::json;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw io_error("write to '" + path + "' failed");
}

namespace {

// Schema walker: carries the source name, JSON pointer and the error code to
// raise.
class Reader {
 public:
  Reader(const json& node, std::string source, std::string path, ErrorCode code)
      : node_(node), source_(std::move(source)), path_(std::move(path)), code_(code) {}

  static json parse(const std::string& text, const std::string& source, ErrorCode code) {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(code, source + ": offset " + std::to_string(e.byte) + ": invalid JSON");
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(code_, source_ + ": " + (path_.empty() ? "/" : path_) + ": " + msg);
  }

  const json& node() const { return node_; }
  bool is_null() const { return node_.is_null(); }

  Reader at(const std::string& key) const {
    if (!node_.is_object()) fail("expected an object");
    const auto it = node_.find(key);
    if (it == node_.end()) Reader(node_, source_, path_ + "/" + key, code_).fail("missing field");
    return {*it, source_, path_ + "/" + key, code_};
  }
  bool has(const std::string& key) const { return node_.is_object() && node_.contains(key); }
  Reader at(std::size_t i) const { return {node_[i], source_, path_ + "/" + std::to_string(i), code_}; }

  void only_keys(std::initializer_list<const char*> keys) const {
    if (!node_.is_object()) fail("expected an object");
    for (const auto& item : node_.items()) {
      bool known = false;
      for (const char* k : keys) known = known || item.key() == k;
      if (!known) Reader(item.value(), source_, path_ + "/" + item.key(), code_).fail("unknown field");
    }
  }

  std::size_t array_size() const {
    if (!node_.is_array()) fail("expected an array");
    return node_.size();
  }

  double number() const {
    if (!node_.is_number()) fail("expected a number");
    const double v = node_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  long long integer() const {
    if (node_.is_number_integer()) return node_.get<long long>();
    if (node_.is_number_float()) {
      const double v = node_.get<double>();
      if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) return static_cast<long long>(v);
    }
    fail("expected an integer");
  }

  int int32() const {
    const long long v = integer();
    if (v < INT32_MIN || v > INT32_MAX) fail("integer out of range");
    return static_cast<int>(v);
  }

  bool boolean() const {
    if (!node_.is_boolean()) fail("expected a boolean");
    return node_.get<bool>();
  }

  std::string string() const {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
  }

  Point point() const {
    if (!node_.is_array() || node_.size() != 2) fail("expected [x, y]");
    return {at(std::size_t{0}).number(), at(std::size_t{1}).number()};
  }

 private:
  const json& node_;
  std::string source_;
  std::string path_;
  ErrorCode code_;
};

json point_json(Point p) { return json::array({p.x, p.y}); }

json layout_json(const JointLayout& layout) {
  json out = json::array();
  for (const auto& s : layout.joints()) {
    out.push_back({{"id", s.id}, {"name", s.name}, {"group", to_string(s.group)}, {"rank", s.rank},
                   {"mirror_id", s.mirror_id}});
  }
  return out;
}

JointLayout parse_layout(const Reader& r) {
  std::vector<JointSpec> joints;
  const std::size_t n = r.array_size();
  for (std::size_t i = 0; i < n; ++i) {
    const Reader e = r.at(i);
    e.only_keys({"id", "name", "group", "rank", "mirror_id"});
    JointSpec spec;
    spec.id = e.at("id").int32();
    spec.name = e.at("name").string();
    const std::string group = e.at("group").string();
    if (group == "neck") spec.group = JointGroup::neck;
    else if (group == "torso") spec.group = JointGroup::torso;
    else if (group == "limb") spec.group = JointGroup::limb;
    else e.at("group").fail("expected one of neck, torso, limb");
    spec.rank = e.at("rank").int32();
    spec.mirror_id = e.has("mirror_id") ? e.at("mirror_id").int32() : spec.id;
    joints.push_back(std::move(spec));
  }
  try {
    return JointLayout(std::move(joints));
  } catch (const Error& err) {
    r.fail(err.what());
  }
}

}  // namespace

Scene parse_scene(const std::string& text, const std::string& source) {
  const json doc = Reader::parse(text, source, ErrorCode::schema);
  const Reader root(doc, source, "", ErrorCode::schema);
  root.only_keys({"height", "width", "joint_spec", "persons"});

  Scene scene;
  scene.height = root.at("height").int32();
  scene.width = root.at("width").int32();
  scene.layout = root.has("joint_spec") ? parse_layout(root.at("joint_spec")) : mpii_layout();
  const auto k = static_cast<std::size_t>(scene.layout.size());

  const Reader persons = root.at("persons");
  for (std::size_t i = 0; i < persons.array_size(); ++i) {
    const Reader pr = persons.at(i);
    pr.only_keys({"joints", "centroid", "head_box"});
    PersonAnnotation person;
    const Reader joints = pr.at("joints");
    if (joints.array_size() != k)
      joints.fail("expected " + std::to_string(k) + " joint entries, got " + std::to_string(joints.array_size()));
    for (std::size_t j = 0; j < k; ++j) {
      const Reader e = joints.at(j);
      person.joints.push_back(e.is_null() ? std::nullopt : std::optional<Point>(e.point()));
    }
    if (pr.has("centroid") && !pr.at("centroid").is_null()) person.centroid = pr.at("centroid").point();
    if (pr.has("head_box") && !pr.at("head_box").is_null()) {
      const Reader b = pr.at("head_box");
      if (b.array_size() != 4) b.fail("expected [x1, y1, x2, y2]");
      person.head_box = std::array<double, 4>{b.at(std::size_t{0}).number(), b.at(std::size_t{1}).number(),
                                              b.at(std::size_t{2}).number(), b.at(std::size_t{3}).number()};
    }
    scene.persons.push_back(std::move(person));
  }
  try {
    validate(scene);
  } catch (const Error& err) {
    throw Error(ErrorCode::annotation, source + ": " + err.what());
  }
  return scene;
}

std::string dump_scene(const Scene& scene) {
  json persons = json::array();
  for (const auto& p : scene.persons) {
    json joints = json::array();
    for (const auto& j : p.joints) joints.push_back(j ? point_json(*j) : json(nullptr));
    json person = {{"joints", joints}, {"centroid", p.centroid ? point_json(*p.centroid) : json(nullptr)}};
    if (p.head_box) person["head_box"] = json::array({(*p.head_box)[0], (*p.head_box)[1], (*p.head_box)[2], (*p.head_box)[3]});
    persons.push_back(std::move(person));
  }
  json doc = {{"height", scene.height},
              {"width", scene.width},
              {"joint_spec", layout_json(scene.layout)},
              {"persons", persons}};
  return doc.dump(2) + "\n";
}

Scene load_scene(const std::string& path) { return parse_scene(read_text(path), path); }
void save_scene(const Scene& scene, const std::string& path) { write_text(path, dump_scene(scene)); }

std::vector<JointCandidate> parse_candidates(const std::string& text, const std::string& source) {
  const json doc = Reader::parse(text, source, ErrorCode::schema);
  const Reader root(doc, source, "", ErrorCode::schema);
  std::vector<JointCandidate> out;
  for (std::size_t i = 0; i < root.array_size(); ++i) {
    const Reader e = root.at(i);
    e.only_keys({"joint", "x", "y", "score"});
    JointCandidate c;
    c.joint = e.at("joint").int32();
    c.position = {e.at("x").int32(), e.at("y").int32()};
    const double score = e.at("score").number();
    if (score < 0.0 || score > 1.0) e.at("score").fail("score outside [0, 1]");
    c.score = static_cast<float>(score);
    if (c.joint < 0) e.at("joint").fail("negative joint id");
    out.push_back(c);
  }
  return out;
}

std::string dump_candidates(std::span<const JointCandidate> candidates) {
  json doc = json::array();
  for (const auto& c : candidates) {
    doc.push_back({{"joint", c.joint}, {"x", c.position.x}, {"y", c.position.y}, {"score", static_cast<double>(c.score)}});
  }
  return doc.dump(2) + "\n";
}

std::vector<JointCandidate> load_candidates(const std::string& path) {
  return parse_candidates(read_text(path), path);
}

void save_candidates(std::span<const JointCandidate> candidates, const std::string& path) {
  write_text(path, dump_candidates(candidates));
}

std::string dump_partitions(std::span<const Partition> partitions, double link_threshold) {
  json list = json::array();
  double total = 0.0;
  for (const auto& p : partitions) {
    json members = json::array();
    for (const auto& m : p.members) members.push_back(m.index);
    list.push_back({{"members", members}, {"centroid", point_json(p.centroid)}, {"score", p.score}});
    total += p.score;
  }
  json doc = {{"link_threshold", link_threshold}, {"partition_score", total}, {"partitions", list}};
  return doc.dump(2) + "\n";
}

std::string dump_poses(const PoseSet& poses, int height, int width) {
  json persons = json::array();
  for (const auto& pose : poses.poses) {
    json joints = json::array();
    json scores = json::array();
    json candidates = json::array();
    for (const auto& j : pose.joints) {
      if (j) {
        joints.push_back(json::array({j->position.x, j->position.y}));
        scores.push_back(static_cast<double>(j->score));
        candidates.push_back(j->candidate);
      } else {
        joints.push_back(nullptr);
        scores.push_back(nullptr);
        candidates.push_back(nullptr);
      }
    }
    persons.push_back({{"joints", joints},
                       {"scores", scores},
                       {"candidates", candidates},
                       {"centroid", point_json(pose.final_centroid)},
                       {"partition", pose.partition},
                       {"root_joint", pose.root_joint}});
  }
  json doc = {{"height", height}, {"width", width}, {"num_partitions", poses.num_partitions}, {"persons", persons}};
  return doc.dump(2) + "\n";
}

PoseFile parse_poses(const std::string& text, int num_joints, const std::string& source) {
  const json doc = Reader::parse(text, source, ErrorCode::schema);
  const Reader root(doc, source, "", ErrorCode::schema);
  root.only_keys({"height", "width", "num_partitions", "persons"});
  PoseFile out;
  out.height = root.at("height").int32();
  out.width = root.at("width").int32();
  const Reader persons = root.at("persons");
  const std::size_t n = persons.array_size();
  if (root.has("num_partitions")) {
    const long long m = root.at("num_partitions").integer();
    if (m < 0) root.at("num_partitions").fail("must be non-negative");
    out.num_partitions = static_cast<std::size_t>(m);
  } else {
    out.num_partitions = n;
  }
  const auto k = static_cast<std::size_t>(num_joints);
  for (std::size_t i = 0; i < n; ++i) {
    const Reader pr = persons.at(i);
    pr.only_keys({"joints", "scores", "candidates", "centroid", "partition", "root_joint"});
    const Reader joints = pr.at("joints");
    if (joints.array_size() != k)
      joints.fail("expected " + std::to_string(k) + " joint entries, got " + std::to_string(joints.array_size()));
    const bool has_scores = pr.has("scores");
    if (has_scores && pr.at("scores").array_size() != k) pr.at("scores").fail("expected one score per joint");
    PersonPose pose;
    pose.joints.assign(k, std::nullopt);
    for (std::size_t j = 0; j < k; ++j) {
      const Reader e = joints.at(j);
      if (e.is_null()) continue;
      const Point p = e.point();
      PoseJoint pj;
      pj.position = {static_cast<int>(std::lround(p.x)), static_cast<int>(std::lround(p.y))};
      pj.score = 1.0f;
      if (has_scores) {
        const Reader s = pr.at("scores").at(j);
        if (!s.is_null()) pj.score = static_cast<float>(s.number());
      }
      pose.joints[j] = pj;
    }
    if (pr.has("centroid") && !pr.at("centroid").is_null()) pose.final_centroid = pr.at("centroid").point();
    if (pr.has("partition")) pose.partition = static_cast<std::size_t>(std::max(0LL, pr.at("partition").integer()));
    if (pr.has("root_joint")) pose.root_joint = pr.at("root_joint").int32();
    out.poses.push_back(std::move(pose));
  }
  return out;
}

PoseFile load_poses(const std::string& path, int num_joints) {
  return parse_poses(read_text(path), num_joints, path);
}

std::string dump_trace(std::span<const EnergyStep> trace) {
  std::ostringstream out;
  out << "step,partition,pose,joint,candidate,energy\n";
  char buf[64];
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& s = trace[i];
    std::snprintf(buf, sizeof buf, "%.17g", s.energy);
    out << i << ',' << s.partition << ',' << s.pose << ',' << s.joint << ',';
    if (s.joint >= 0) out << s.candidate;
    out << ',' << buf << '\n';
  }
  return out.str();
}

std::string dump_config(const PipelineConfig& c) {
  json weights = json::array();
  if (c.weights.empty()) {
    for (int j = 0; j < c.layout.size(); ++j) weights.push_back(1.0);
  } else {
    for (const double w : c.weights) weights.push_back(w);
  }
  json doc = {
      {"tau", c.tau},
      {"forward", {{"sigma", c.sigma}, {"radius", c.radius}}},
      {"detector", {{"nms_radius", c.nms_radius}}},
      {"cluster",
       {{"link_threshold", c.link_threshold ? json(*c.link_threshold) : json("auto")},
        {"link_fraction", c.link_fraction},
        {"weights", weights}}},
      {"loss", {{"alpha", c.alpha}}},
      {"joint_spec", layout_json(c.layout)},
      {"eval",
       {{"pckh_fraction", c.match.pckh_fraction},
        {"head_size_source", to_string(c.match.head_size_source)},
        {"absolute_threshold", c.match.absolute_threshold},
        {"head_top_joint", c.match.head_top_joint},
        {"neck_joint", c.match.neck_joint}}},
      {"corpus",
       {{"num_scenes", c.corpus.num_scenes},
        {"min_persons", c.corpus.min_persons},
        {"max_persons", c.corpus.max_persons},
        {"min_separation", c.corpus.min_separation},
        {"height", c.corpus.height},
        {"width", c.corpus.width},
        {"jitter", c.corpus.jitter},
        {"min_scale", c.corpus.min_scale},
        {"max_scale", c.corpus.max_scale},
        {"integer_coords", c.corpus.integer_coords},
        {"max_attempts", c.corpus.max_attempts}}},
      {"seed", c.seed},
  };
  return doc.dump(2) + "\n";
}

PipelineConfig parse_config(const std::string& text, const std::string& source) {
  const json doc = Reader::parse(text, source, ErrorCode::config);
  const Reader root(doc, source, "", ErrorCode::config);
  root.only_keys({"tau", "forward", "detector", "cluster", "loss", "joint_spec", "eval", "corpus", "seed"});
  PipelineConfig c;
  if (root.has("tau")) c.tau = root.at("tau").number();
  if (root.has("forward")) {
    const Reader f = root.at("forward");
    f.only_keys({"sigma", "radius"});
    if (f.has("sigma")) c.sigma = f.at("sigma").number();
    if (f.has("radius")) c.radius = f.at("radius").number();
  }
  if (root.has("detector")) {
    const Reader d = root.at("detector");
    d.only_keys({"nms_radius"});
    if (d.has("nms_radius")) c.nms_radius = d.at("nms_radius").int32();
  }
  if (root.has("joint_spec")) c.layout = parse_layout(root.at("joint_spec"));
  if (root.has("cluster")) {
    const Reader cl = root.at("cluster");
    cl.only_keys({"link_threshold", "link_fraction", "weights"});
    if (cl.has("link_threshold")) {
      const Reader lt = cl.at("link_threshold");
      if (lt.node().is_string()) {
        if (lt.string() != "auto") lt.fail("expected a number or \"auto\"");
        c.link_threshold.reset();
      } else {
        c.link_threshold = lt.number();
      }
    }
    if (cl.has("link_fraction")) c.link_fraction = cl.at("link_fraction").number();
    if (cl.has("weights")) {
      const Reader w = cl.at("weights");
      c.weights.clear();
      for (std::size_t i = 0; i < w.array_size(); ++i) c.weights.push_back(w.at(i).number());
    }
  }
  if (root.has("loss")) {
    const Reader l = root.at("loss");
    l.only_keys({"alpha"});
    if (l.has("alpha")) c.alpha = l.at("alpha").number();
  }
  if (root.has("eval")) {
    const Reader e = root.at("eval");
    e.only_keys({"pckh_fraction", "head_size_source", "absolute_threshold", "head_top_joint", "neck_joint"});
    if (e.has("pckh_fraction")) c.match.pckh_fraction = e.at("pckh_fraction").number();
    if (e.has("head_size_source")) {
      const std::string s = e.at("head_size_source").string();
      if (s == "annotation_box") c.match.head_size_source = HeadSizeSource::annotation_box;
      else if (s == "joint_distance") c.match.head_size_source = HeadSizeSource::joint_distance;
      else e.at("head_size_source").fail("expected annotation_box or joint_distance");
    }
    if (e.has("absolute_threshold")) c.match.absolute_threshold = e.at("absolute_threshold").number();
    if (e.has("head_top_joint")) c.match.head_top_joint = e.at("head_top_joint").string();
    if (e.has("neck_joint")) c.match.neck_joint = e.at("neck_joint").string();
  }
  if (root.has("corpus")) {
    const Reader s = root.at("corpus");
    s.only_keys({"num_scenes", "min_persons", "max_persons", "min_separation", "height", "width", "jitter",
                 "min_scale", "max_scale", "integer_coords", "max_attempts"});
    auto& cs = c.corpus;
    if (s.has("num_scenes")) cs.num_scenes = s.at("num_scenes").int32();
    if (s.has("min_persons")) cs.min_persons = s.at("min_persons").int32();
    if (s.has("max_persons")) cs.max_persons = s.at("max_persons").int32();
    if (s.has("min_separation")) cs.min_separation = s.at("min_separation").number();
    if (s.has("height")) cs.height = s.at("height").int32();
    if (s.has("width")) cs.width = s.at("width").int32();
    if (s.has("jitter")) cs.jitter = s.at("jitter").number();
    if (s.has("min_scale")) cs.min_scale = s.at("min_scale").number();
    if (s.has("max_scale")) cs.max_scale = s.at("max_scale").number();
    if (s.has("integer_coords")) cs.integer_coords = s.at("integer_coords").boolean();
    if (s.has("max_attempts")) cs.max_attempts = s.at("max_attempts").int32();
  }
  if (root.has("seed")) {
    const long long seed = root.at("seed").integer();
    if (seed < 0) root.at("seed").fail("seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(seed);
  }
  try {
    validate(c);
  } catch (const Error& err) {
    throw config_error(source + ": " + err.what());
  }
  return c;
}

PipelineConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const Error& err) {
    throw config_error(err.what());
  }
  return parse_config(text, path);
}

std::string dump_report(const EvalReport& r) {
  json per_joint = json::object();
  for (std::size_t j = 0; j < r.joint_names.size(); ++j)
    per_joint[r.joint_names[j]] = r.per_joint_ap[j] ? json(*r.per_joint_ap[j]) : json(nullptr);
  json doc = {{"num_scenes", r.num_scenes},
              {"per_joint_ap", per_joint},
              {"total_ap", r.total_ap},
              {"count_confusion", r.count_confusion},
              {"count_mse", r.count_mse},
              {"gt_persons", r.gt_persons},
              {"matched_persons", r.matched_persons},
              {"false_positive_poses", r.false_positive_poses},
              {"errors", r.errors}};
  return doc.dump(2) + "\n";
}

}  // namespace posepart::io
