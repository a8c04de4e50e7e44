// Copyright 2026 The netexp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "netexp/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "netexp/errors.h"

namespace netexp {
namespace {

using nlohmann::json;

void RequireObject(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void RejectUnknownKeys(const json& j, const std::string& where,
                       std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!keys.count(item.key())) {
      throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
  }
}

const json& Required(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  return j.at(key);
}

double Number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + ": value must be finite");
  return v;
}

int Integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<int>();
}

std::string String(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + ": expected a string");
  return j.get<std::string>();
}

bool Boolean(const json& j, const std::string& where) {
  if (!j.is_boolean()) throw ConfigError(where + ": expected true or false");
  return j.get<bool>();
}

// A number or a non-empty list of numbers.
std::vector<double> NumberList(const json& j, const std::string& where) {
  std::vector<double> out;
  if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) {
      out.push_back(Number(j[i], where + "[" + std::to_string(i) + "]"));
    }
  } else {
    out.push_back(Number(j, where));
  }
  if (out.empty()) throw ConfigError(where + ": list must not be empty");
  return out;
}

bool ParsePolicy(const json& j, const std::string& where) {
  const std::string policy = String(j, where);
  if (policy == "fixed") return true;
  if (policy == "per_replication") return false;
  throw ConfigError(where + ": expected 'fixed' or 'per_replication'");
}

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

GraphConfig ParseGraph(const json& j, const std::filesystem::path& base) {
  const std::string where = "graph";
  RequireObject(j, where);
  GraphConfig g;
  const std::string kind = String(Required(j, where, "kind"), where + ".kind");
  if (kind == "small_world") {
    RejectUnknownKeys(j, where, {"kind", "n", "k", "p_rw", "policy"});
    g.kind = GraphKind::kSmallWorld;
    g.n = Integer(Required(j, where, "n"), "graph.n");
    g.k = Integer(Required(j, where, "k"), "graph.k");
    g.p_rw = NumberList(Required(j, where, "p_rw"), "graph.p_rw");
    if (g.k <= 0 || g.k % 2 != 0 || g.k >= g.n) {
      throw ConfigError("graph: small world needs even k with 0 < k < n");
    }
    for (double p : g.p_rw) {
      if (p < 0.0 || p > 1.0) throw ConfigError("graph.p_rw: values must lie in [0, 1]");
    }
  } else if (kind == "dcbm") {
    RejectUnknownKeys(j, where, {"kind", "n", "n_comm", "p_comm", "degree_mean",
                                 "degree_variance", "policy"});
    g.kind = GraphKind::kDcbm;
    g.n = Integer(Required(j, where, "n"), "graph.n");
    g.n_comm = Integer(Required(j, where, "n_comm"), "graph.n_comm");
    g.p_comm = NumberList(Required(j, where, "p_comm"), "graph.p_comm");
    g.degree_mean = Number(Required(j, where, "degree_mean"), "graph.degree_mean");
    g.degree_variance = Number(Required(j, where, "degree_variance"), "graph.degree_variance");
    if (g.n < 2) throw ConfigError("graph.n: need at least 2 vertices");
    if (g.n_comm < 1) throw ConfigError("graph.n_comm: must be at least 1");
    for (double p : g.p_comm) {
      if (!(p > 0.0 && p <= 1.0)) throw ConfigError("graph.p_comm: values must lie in (0, 1]");
    }
    if (!(g.degree_mean > 0.0)) throw ConfigError("graph.degree_mean: must be positive");
    if (g.degree_mean > g.n - 1) throw ConfigError("graph.degree_mean: exceeds n - 1");
    if (g.degree_variance < 0.0) throw ConfigError("graph.degree_variance: must be >= 0");
  } else if (kind == "edge_list") {
    RejectUnknownKeys(j, where, {"kind", "path", "policy"});
    g.kind = GraphKind::kEdgeList;
    g.path = Resolve(base, String(Required(j, where, "path"), "graph.path"));
    g.fixed = true;
  } else {
    throw ConfigError("graph.kind: expected small_world, dcbm or edge_list");
  }
  if (j.contains("policy")) {
    const bool fixed = ParsePolicy(j.at("policy"), "graph.policy");
    if (g.kind == GraphKind::kEdgeList && !fixed) {
      throw ConfigError("graph.policy: an edge list graph is always fixed");
    }
    g.fixed = fixed;
  }
  if (g.kind != GraphKind::kEdgeList && g.n < 2) {
    throw ConfigError("graph.n: need at least 2 vertices");
  }
  return g;
}

ClusteringConfig ParseClustering(const json& j, const std::filesystem::path& base) {
  const std::string where = "clustering";
  RequireObject(j, where);
  RejectUnknownKeys(j, where, {"kind", "epsilon", "path", "policy"});
  ClusteringConfig c;
  const std::string kind = String(Required(j, where, "kind"), "clustering.kind");
  if (kind == "epsilon_net") {
    c.kind = ClusteringKind::kEpsilonNet;
    c.epsilon = Integer(Required(j, where, "epsilon"), "clustering.epsilon");
    if (c.epsilon < 1) throw ConfigError("clustering.epsilon: must be at least 1");
  } else if (kind == "singleton") {
    c.kind = ClusteringKind::kSingleton;
  } else if (kind == "file") {
    c.kind = ClusteringKind::kFile;
    c.path = Resolve(base, String(Required(j, where, "path"), "clustering.path"));
    c.fixed = true;
  } else {
    throw ConfigError("clustering.kind: expected epsilon_net, singleton or file");
  }
  if (c.kind != ClusteringKind::kEpsilonNet && j.contains("epsilon")) {
    throw ConfigError("clustering.epsilon: only valid for epsilon_net");
  }
  if (c.kind != ClusteringKind::kFile && j.contains("path")) {
    throw ConfigError("clustering.path: only valid for kind 'file'");
  }
  if (j.contains("policy")) c.fixed = ParsePolicy(j.at("policy"), "clustering.policy") ||
                                      c.kind == ClusteringKind::kFile;
  return c;
}

DesignConfig ParseDesign(const json& j, const std::string& where) {
  RequireObject(j, where);
  RejectUnknownKeys(j, where, {"name", "kind", "q", "eta", "cluster_q"});
  DesignConfig d;
  const std::string kind = String(Required(j, where, "kind"), where + ".kind");
  d.name = j.contains("name") ? String(j.at("name"), where + ".name") : kind;
  if (d.name.empty() || d.name.find_first_of(",\n\"") != std::string::npos) {
    throw ConfigError(where + ".name: must be non-empty without commas or quotes");
  }
  if (kind == "independent") {
    d.kind = DesignKind::kIndependent;
  } else if (kind == "graph_cluster") {
    d.kind = DesignKind::kGraphCluster;
  } else if (kind == "balanced_graph_cluster") {
    d.kind = DesignKind::kBalancedGraphCluster;
  } else if (kind == "hole_punched") {
    d.kind = DesignKind::kHolePunched;
  } else {
    throw ConfigError(where + ".kind: expected independent, graph_cluster, "
                      "balanced_graph_cluster or hole_punched");
  }
  if (j.contains("q")) {
    if (d.kind == DesignKind::kBalancedGraphCluster) {
      throw ConfigError(where + ".q: balanced design always treats half the clusters");
    }
    d.q = Number(j.at("q"), where + ".q");
  }
  if (!(d.q > 0.0 && d.q < 1.0)) throw ConfigError(where + ".q: must lie in (0, 1)");
  if (j.contains("eta") || j.contains("cluster_q")) {
    if (d.kind != DesignKind::kHolePunched) {
      throw ConfigError(where + ": eta and cluster_q apply to hole_punched designs only");
    }
  }
  if (d.kind == DesignKind::kHolePunched) {
    d.eta = Number(Required(j, where, "eta"), where + ".eta");
    if (d.eta < 0.0 || d.eta > 1.0) throw ConfigError(where + ".eta: must lie in [0, 1]");
    if (j.contains("cluster_q")) {
      d.cluster_q = NumberList(j.at("cluster_q"), where + ".cluster_q");
      for (double p : d.cluster_q) {
        if (!(p > 0.0 && p < 1.0)) throw ConfigError(where + ".cluster_q: values in (0, 1)");
      }
    }
  }
  return d;
}

ResponseConfig ParseResponse(const json& j) {
  const std::string where = "response";
  RequireObject(j, where);
  RejectUnknownKeys(j, where, {"alpha", "beta", "gamma", "steps", "link", "identity_noise"});
  ResponseConfig r;
  r.alpha = Number(Required(j, where, "alpha"), "response.alpha");
  r.beta = NumberList(Required(j, where, "beta"), "response.beta");
  r.gamma = NumberList(Required(j, where, "gamma"), "response.gamma");
  r.steps = Integer(Required(j, where, "steps"), "response.steps");
  if (r.steps < 1) throw ConfigError("response.steps: must be at least 1");
  if (j.contains("link")) {
    const std::string link = String(j.at("link"), "response.link");
    if (link == "probit") {
      r.link = Link::kProbit;
    } else if (link == "identity") {
      r.link = Link::kIdentity;
    } else {
      throw ConfigError("response.link: expected probit or identity");
    }
  }
  if (j.contains("identity_noise")) {
    if (r.link != Link::kIdentity) {
      throw ConfigError("response.identity_noise: only valid with the identity link");
    }
    r.identity_noise = Boolean(j.at("identity_noise"), "response.identity_noise");
  }
  return r;
}

ExposureSpec ParseExposure(const json& j, const std::string& where) {
  RequireObject(j, where);
  RejectUnknownKeys(j, where, {"kind", "lambda"});
  const std::string kind = String(Required(j, where, "kind"), where + ".kind");
  auto lambda = [&] {
    const double l = Number(Required(j, where, "lambda"), where + ".lambda");
    if (l < 0.0 || l > 1.0) throw ConfigError(where + ".lambda: must lie in [0, 1]");
    return l;
  };
  if (kind == "itr" || kind == "ntr") {
    if (j.contains("lambda")) throw ConfigError(where + ".lambda: not used by " + kind);
    return kind == "itr" ? ExposureSpec::Itr() : ExposureSpec::Ntr();
  }
  if (kind == "fntr") return ExposureSpec::Fntr(lambda());
  if (kind == "cluster_fntr") return ExposureSpec::ClusterFntr(lambda());
  throw ConfigError(where + ".kind: expected itr, fntr, ntr or cluster_fntr");
}

EstimatorKind ParseEstimatorKind(const json& j, const std::string& where) {
  const std::string name = String(j, where);
  if (name == "diff_in_means") return EstimatorKind::kDiffInMeans;
  if (name == "exposure_diff_in_means") return EstimatorKind::kExposureDiffInMeans;
  if (name == "hajek") return EstimatorKind::kHajek;
  if (name == "horvitz_thompson") return EstimatorKind::kHorvitzThompson;
  throw ConfigError(where + ": expected diff_in_means, exposure_diff_in_means, hajek or "
                    "horvitz_thompson");
}

const char* EstimatorKindName(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kDiffInMeans:
      return "diff_in_means";
    case EstimatorKind::kExposureDiffInMeans:
      return "exposure_diff_in_means";
    case EstimatorKind::kHajek:
      return "hajek";
    case EstimatorKind::kHorvitzThompson:
      return "horvitz_thompson";
  }
  return "";
}

void CrossValidate(const ExperimentConfig& cfg) {
  if (cfg.clustering.fixed && !cfg.graph.fixed) {
    throw ConfigError("clustering: a fixed or file clustering needs a fixed graph");
  }
  bool weighted = false;
  bool exposure_based = false;
  for (auto kind : cfg.estimator_kinds) {
    if (kind != EstimatorKind::kDiffInMeans) exposure_based = true;
    if (kind == EstimatorKind::kHajek || kind == EstimatorKind::kHorvitzThompson) weighted = true;
  }
  if (exposure_based && cfg.exposures.empty()) {
    throw ConfigError("exposures: exposure-based estimators need at least one exposure");
  }
  if (weighted && cfg.graph.kind != GraphKind::kEdgeList) {
    // Designs without a closed form fall back to enumeration, which needs a
    // tiny population.
    for (const auto& d : cfg.designs) {
      bool closed_form = d.kind == DesignKind::kGraphCluster;
      if (d.kind == DesignKind::kIndependent) {
        closed_form = true;
        for (const auto& e : cfg.exposures) closed_form &= e.vertex_level();
      }
      const int64_t bits = d.kind == DesignKind::kHolePunched ? 2 * int64_t{cfg.graph.n}
                                                               : cfg.graph.n;
      if (!closed_form && bits > 20) {
        throw ConfigError("design '" + d.name +
                          "': weighted estimators need exact exposure probabilities, which "
                          "this design only provides by enumeration for tiny graphs");
      }
    }
  }
  bool found_design = false;
  for (const auto& d : cfg.designs) found_design |= d.name == cfg.baseline_design;
  if (!found_design) throw ConfigError("baseline.design: no design named " + cfg.baseline_design);
  bool found_estimator = false;
  for (const auto& e : cfg.Estimators()) found_estimator |= e.Label() == cfg.baseline_estimator;
  if (!found_estimator) {
    throw ConfigError("baseline.estimator: no estimator column named " + cfg.baseline_estimator);
  }
}

}  // namespace

std::string GraphConfig::KindName() const {
  switch (kind) {
    case GraphKind::kSmallWorld:
      return "small_world";
    case GraphKind::kDcbm:
      return "dcbm";
    case GraphKind::kEdgeList:
      return "edge_list";
  }
  return "";
}

std::string GraphConfig::ParamName() const {
  switch (kind) {
    case GraphKind::kSmallWorld:
      return "p_rw";
    case GraphKind::kDcbm:
      return "p_comm";
    case GraphKind::kEdgeList:
      return "none";
  }
  return "";
}

std::vector<double> GraphConfig::ParamValues() const {
  switch (kind) {
    case GraphKind::kSmallWorld:
      return p_rw;
    case GraphKind::kDcbm:
      return p_comm;
    case GraphKind::kEdgeList:
      return {0.0};
  }
  return {};
}

std::string EstimatorSpec::Label() const {
  if (kind == EstimatorKind::kDiffInMeans) return EstimatorKindName(kind);
  return std::string(EstimatorKindName(kind)) + "[" + exposure.Label() + "]";
}

std::vector<EstimatorSpec> ExperimentConfig::Estimators() const {
  std::vector<EstimatorSpec> out;
  for (auto kind : estimator_kinds) {
    if (kind == EstimatorKind::kDiffInMeans) out.push_back({kind, ExposureSpec::Itr()});
  }
  for (auto kind : estimator_kinds) {
    if (kind == EstimatorKind::kDiffInMeans) continue;
    for (const auto& e : exposures) out.push_back({kind, e});
  }
  return out;
}

ExperimentConfig ParseConfig(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RequireObject(root, "config");
  RejectUnknownKeys(root, "config",
                    {"graph", "clustering", "designs", "response", "exposures", "estimators",
                     "replications", "seed", "undefined_policy", "max_rerandomize", "baseline",
                     "output_dir", "keep_trajectories"});
  ExperimentConfig cfg;
  cfg.source_text = text;
  cfg.graph = ParseGraph(Required(root, "config", "graph"), base_dir);
  cfg.clustering = ParseClustering(Required(root, "config", "clustering"), base_dir);

  const json& designs = Required(root, "config", "designs");
  if (!designs.is_array() || designs.empty()) {
    throw ConfigError("designs: expected a non-empty list");
  }
  std::set<std::string> names;
  for (size_t i = 0; i < designs.size(); ++i) {
    cfg.designs.push_back(ParseDesign(designs[i], "designs[" + std::to_string(i) + "]"));
    if (!names.insert(cfg.designs.back().name).second) {
      throw ConfigError("designs: duplicate name " + cfg.designs.back().name);
    }
  }
  cfg.response = ParseResponse(Required(root, "config", "response"));

  if (root.contains("exposures")) {
    const json& ex = root.at("exposures");
    if (!ex.is_array()) throw ConfigError("exposures: expected a list");
    for (size_t i = 0; i < ex.size(); ++i) {
      cfg.exposures.push_back(ParseExposure(ex[i], "exposures[" + std::to_string(i) + "]"));
    }
  }
  const json& est = Required(root, "config", "estimators");
  if (!est.is_array() || est.empty()) throw ConfigError("estimators: expected a non-empty list");
  for (size_t i = 0; i < est.size(); ++i) {
    const auto kind = ParseEstimatorKind(est[i], "estimators[" + std::to_string(i) + "]");
    for (auto seen : cfg.estimator_kinds) {
      if (seen == kind) throw ConfigError("estimators: duplicate entry");
    }
    cfg.estimator_kinds.push_back(kind);
  }

  cfg.replications = Integer(Required(root, "config", "replications"), "replications");
  if (cfg.replications < 1) throw ConfigError("replications: must be at least 1");
  const json& seed = Required(root, "config", "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<int64_t>() >= 0)) {
    throw ConfigError("seed: expected a non-negative integer");
  }
  cfg.seed = seed.get<uint64_t>();

  if (root.contains("undefined_policy")) {
    const std::string p = String(root.at("undefined_policy"), "undefined_policy");
    if (p == "exclude") {
      cfg.undefined_policy = UndefinedPolicy::kExclude;
    } else if (p == "rerandomize") {
      cfg.undefined_policy = UndefinedPolicy::kRerandomize;
    } else {
      throw ConfigError("undefined_policy: expected exclude or rerandomize");
    }
  }
  if (root.contains("max_rerandomize")) {
    cfg.max_rerandomize = Integer(root.at("max_rerandomize"), "max_rerandomize");
    if (cfg.max_rerandomize < 1) throw ConfigError("max_rerandomize: must be at least 1");
  }

  cfg.baseline_design.clear();
  for (const auto& d : cfg.designs) {
    if (d.kind == DesignKind::kIndependent) {
      cfg.baseline_design = d.name;
      break;
    }
  }
  if (cfg.baseline_design.empty()) cfg.baseline_design = cfg.designs.front().name;
  cfg.baseline_estimator = cfg.Estimators().front().Label();
  if (root.contains("baseline")) {
    const json& b = root.at("baseline");
    RequireObject(b, "baseline");
    RejectUnknownKeys(b, "baseline", {"design", "estimator"});
    if (b.contains("design")) cfg.baseline_design = String(b.at("design"), "baseline.design");
    if (b.contains("estimator")) {
      cfg.baseline_estimator = String(b.at("estimator"), "baseline.estimator");
    }
  }
  if (root.contains("output_dir")) {
    cfg.output_dir = String(root.at("output_dir"), "output_dir");
  }
  if (root.contains("keep_trajectories")) {
    cfg.keep_trajectories = Boolean(root.at("keep_trajectories"), "keep_trajectories");
  }
  CrossValidate(cfg);
  return cfg;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str(), path.parent_path());
}

}  // namespace netexp
