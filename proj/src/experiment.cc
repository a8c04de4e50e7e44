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

#include "netexp/experiment.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "netexp/clustering.h"
#include "netexp/csv.h"
#include "netexp/design.h"
#include "netexp/errors.h"
#include "netexp/estimators.h"
#include "netexp/exposure.h"
#include "netexp/graph.h"
#include "netexp/outcomes.h"
#include "netexp/rng.h"

namespace netexp {
namespace {

uint64_t HashString(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string GraphKey(const GraphConfig& g, double param) {
  std::string key = g.KindName();
  switch (g.kind) {
    case GraphKind::kSmallWorld:
      key += "|n=" + std::to_string(g.n) + "|k=" + std::to_string(g.k) +
             "|p_rw=" + FormatDouble(param);
      break;
    case GraphKind::kDcbm:
      key += "|n=" + std::to_string(g.n) + "|n_comm=" + std::to_string(g.n_comm) +
             "|p_comm=" + FormatDouble(param) + "|mean=" + FormatDouble(g.degree_mean) +
             "|var=" + FormatDouble(g.degree_variance);
      break;
    case GraphKind::kEdgeList:
      key += "|" + g.path.string();
      break;
  }
  return key;
}

Graph BuildGraph(const GraphConfig& g, double param, uint64_t seed) {
  CounterRng rng(seed);
  switch (g.kind) {
    case GraphKind::kSmallWorld:
      return GenerateSmallWorld({g.n, g.k, param}, rng);
    case GraphKind::kDcbm:
      return GenerateDcbm({g.n, g.n_comm, param, g.degree_mean, g.degree_variance}, rng).graph;
    case GraphKind::kEdgeList: {
      std::ifstream in(g.path);
      if (!in) throw ConfigError("cannot open edge list " + g.path.string());
      return ReadEdgeList(in);
    }
  }
  throw ConfigError("unknown graph kind");
}

Clustering BuildClustering(const ClusteringConfig& c, const Graph& g, uint64_t seed) {
  switch (c.kind) {
    case ClusteringKind::kEpsilonNet: {
      CounterRng rng(seed);
      return EpsilonNetClustering(g, c.epsilon, rng).clustering;
    }
    case ClusteringKind::kSingleton:
      return SingletonClustering(g.num_vertices());
    case ClusteringKind::kFile: {
      std::ifstream in(c.path);
      if (!in) throw ConfigError("cannot open clustering file " + c.path.string());
      auto clustering = ReadClustering(in);
      if (clustering.num_vertices() != g.num_vertices()) {
        throw ConfigError("clustering file covers " + std::to_string(clustering.num_vertices()) +
                          " vertices, graph has " + std::to_string(g.num_vertices()));
      }
      return clustering;
    }
  }
  throw ConfigError("unknown clustering kind");
}

Design BuildDesign(const DesignConfig& d, const Clustering& clustering, int n) {
  Design design;
  switch (d.kind) {
    case DesignKind::kIndependent:
      design = IndependentDesign{d.q};
      break;
    case DesignKind::kGraphCluster:
      design = GraphClusterDesign{clustering, d.q};
      break;
    case DesignKind::kBalancedGraphCluster:
      design = BalancedGraphClusterDesign{clustering};
      break;
    case DesignKind::kHolePunched:
      design = HolePunchedDesign{clustering, d.q, d.eta, d.cluster_q};
      break;
  }
  try {
    ValidateDesign(design, n);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("design '" + d.name + "': " + e.what());
  }
  return design;
}

bool BothNonEmpty(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
  return std::find(a.begin(), a.end(), 1) != a.end() &&
         std::find(b.begin(), b.end(), 1) != b.end();
}

bool HasBothArms(const std::vector<uint8_t>& z) {
  return std::find(z.begin(), z.end(), 0) != z.end() &&
         std::find(z.begin(), z.end(), 1) != z.end();
}

// Everything about one design in one replication that does not depend on
// the response parameters.
struct DesignState {
  Assignment assignment;
  std::vector<EffectiveSets> sets;             // per exposure spec
  std::vector<ExposureProbabilities> probs;    // per exposure spec, if weighted
};

struct TaskOutput {
  // Indexed by cell offset within the graph parameter block.
  std::vector<std::vector<ReplicationRecord>> records;
  std::vector<TruthRecord> truths;
};

class Runner {
 public:
  Runner(const ExperimentConfig& cfg, bool truth_only)
      : cfg_(cfg),
        truth_only_(truth_only),
        params_(cfg.graph.ParamValues()),
        estimators_(cfg.Estimators()) {
    for (double p : params_) {
      for (double b : cfg.response.beta) {
        for (double g : cfg.response.gamma) {
          cells_.push_back({cfg.graph.KindName(), cfg.graph.ParamName(), p, b, g});
        }
      }
    }
    cells_per_param_ = static_cast<int>(cfg.response.beta.size() * cfg.response.gamma.size());
    for (const auto& e : estimators_) {
      weighted_ |= e.kind == EstimatorKind::kHajek || e.kind == EstimatorKind::kHorvitzThompson;
    }
    for (const auto& e : cfg.exposures) {
      bool used = false;
      for (const auto& est : estimators_) used |= est.exposure.Label() == e.Label();
      if (used) exposures_.push_back(e);
    }
    if (cfg_.graph.fixed) {
      for (size_t gp = 0; gp < params_.size(); ++gp) {
        const std::string key = GraphKey(cfg_.graph, params_[gp]);
        fixed_graphs_.push_back(
            BuildGraph(cfg_.graph, params_[gp], DeriveSeed(cfg_.seed, key, 0, SeedRole::kGraph)));
        if (cfg_.clustering.fixed) {
          fixed_clusterings_.push_back(
              BuildClustering(cfg_.clustering, fixed_graphs_.back(),
                              DeriveSeed(cfg_.seed, key, 0, SeedRole::kClustering)));
        }
      }
    }
  }

  ExperimentResult Run(int workers) {
    const int reps = cfg_.replications;
    const int tasks = static_cast<int>(params_.size()) * reps;
    std::vector<TaskOutput> outputs(tasks);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
      for (;;) {
        {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (failure) return;
        }
        const int t = next.fetch_add(1);
        if (t >= tasks) return;
        try {
          outputs[t] = RunTask(t / reps, t % reps);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    workers = std::clamp(workers, 1, std::max(1, tasks));
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    ExperimentResult result;
    result.cells = cells_;
    for (size_t gp = 0; gp < params_.size(); ++gp) {
      for (int c = 0; c < cells_per_param_; ++c) {
        for (int r = 0; r < reps; ++r) {
          auto& out = outputs[gp * reps + r];
          result.truths.push_back(out.truths[c]);
          if (!truth_only_) {
            for (auto& rec : out.records[c]) result.records.push_back(std::move(rec));
          }
        }
      }
    }
    return result;
  }

 private:
  DesignState PrepareDesign(const DesignConfig& dc, const Design& design, const Graph& g,
                            const Clustering& clustering, const std::string& key, int r) const {
    const int n = g.num_vertices();
    std::vector<ExposureModel> models;
    for (const auto& e : exposures_) models.emplace_back(g, e, &clustering);
    const uint64_t seed = DeriveSeed(cfg_.seed, key + "/" + dc.name, r, SeedRole::kAssignment);
    const int attempts =
        cfg_.undefined_policy == UndefinedPolicy::kRerandomize ? cfg_.max_rerandomize : 1;
    DesignState state;
    for (int attempt = 0; attempt < attempts; ++attempt) {
      CounterRng rng(attempt == 0 ? seed : HashCombine(seed, attempt));
      state.assignment = DrawAssignment(design, n, rng);
      state.sets.clear();
      for (const auto& m : models) state.sets.push_back(m.Indicators(state.assignment.z));
      if (AllDefined(state)) break;
    }
    if (weighted_) {
      for (const auto& e : exposures_) state.probs.push_back(ExposureProbForDesign(g, design, e, &clustering));
    }
    return state;
  }

  bool AllDefined(const DesignState& state) const {
    for (const auto& est : estimators_) {
      switch (est.kind) {
        case EstimatorKind::kDiffInMeans:
          if (!HasBothArms(state.assignment.z)) return false;
          break;
        case EstimatorKind::kExposureDiffInMeans:
        case EstimatorKind::kHajek: {
          const auto& s = state.sets[ExposureIndex(est.exposure)];
          if (!BothNonEmpty(s.treated, s.control)) return false;
          break;
        }
        case EstimatorKind::kHorvitzThompson:
          break;
      }
    }
    return true;
  }

  size_t ExposureIndex(const ExposureSpec& spec) const {
    for (size_t i = 0; i < exposures_.size(); ++i) {
      if (exposures_[i].Label() == spec.Label()) return i;
    }
    return 0;
  }

  EstimatorResult Evaluate(const EstimatorSpec& est, const DesignState& state,
                           std::span<const double> y) const {
    switch (est.kind) {
      case EstimatorKind::kDiffInMeans:
        return DiffInMeans(y, state.assignment.z);
      case EstimatorKind::kExposureDiffInMeans: {
        const auto& s = state.sets[ExposureIndex(est.exposure)];
        return ExposureDiffInMeans(y, s.treated, s.control);
      }
      case EstimatorKind::kHajek: {
        const size_t i = ExposureIndex(est.exposure);
        return Hajek(y, state.sets[i].treated, state.sets[i].control, state.probs[i]);
      }
      case EstimatorKind::kHorvitzThompson: {
        const size_t i = ExposureIndex(est.exposure);
        return HorvitzThompson(y, state.sets[i].treated, state.sets[i].control, state.probs[i],
                               static_cast<int>(y.size()));
      }
    }
    return {};
  }

  // Graph, clustering, assignments and noise for one (parameter, replication).
  struct Setup {
    Graph graph;
    Clustering clustering;
    std::vector<DesignState> states;
    std::vector<double> noise;
    ResponseModel model;
  };

  Setup Prepare(int gp, int r) const {
    const std::string key = GraphKey(cfg_.graph, params_[gp]);
    Setup s;
    s.graph = cfg_.graph.fixed ? fixed_graphs_[gp]
                               : BuildGraph(cfg_.graph, params_[gp],
                                            DeriveSeed(cfg_.seed, key, r, SeedRole::kGraph));
    const Graph& g = s.graph;
    const int n = g.num_vertices();
    if (!truth_only_) {
      s.clustering = cfg_.clustering.fixed
                         ? fixed_clusterings_[gp]
                         : BuildClustering(cfg_.clustering, g,
                                           DeriveSeed(cfg_.seed, key, r, SeedRole::kClustering));
      for (const auto& dc : cfg_.designs) {
        const Design design = BuildDesign(dc, s.clustering, n);
        s.states.push_back(PrepareDesign(dc, design, g, s.clustering, key, r));
      }
    }
    s.model.alpha = cfg_.response.alpha;
    s.model.steps = cfg_.response.steps;
    s.model.link = cfg_.response.link;
    s.model.identity_noise = cfg_.response.identity_noise;
    if (s.model.has_noise()) {
      s.noise = OutcomeNoise(DeriveSeed(cfg_.seed, "", r, SeedRole::kOutcomeNoise), n,
                             s.model.steps);
    }
    return s;
  }

 public:
  void DumpTrajectories(int r, const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    for (size_t gp = 0; gp < params_.size(); ++gp) {
      Setup s = Prepare(static_cast<int>(gp), r);
      for (int c = 0; c < cells_per_param_; ++c) {
        const int cell_index = static_cast<int>(gp) * cells_per_param_ + c;
        s.model.beta = cells_[cell_index].beta;
        s.model.gamma = cells_[cell_index].gamma;
        for (size_t d = 0; d < cfg_.designs.size(); ++d) {
          const auto path = dir / ("cell" + std::to_string(cell_index) + "_" +
                                   cfg_.designs[d].name + ".csv");
          std::ofstream out(path);
          if (!out) throw ConfigError("cannot write " + path.string());
          WriteTrajectoryCsv(
              out, Simulate(s.graph, s.states[d].assignment.z, s.model, s.noise, true));
        }
      }
    }
  }

 private:
  TaskOutput RunTask(int gp, int r) const {
    Setup s = Prepare(gp, r);
    const Graph& g = s.graph;
    const int n = g.num_vertices();
    auto& model = s.model;
    const auto& noise = s.noise;
    const auto& states = s.states;
    const std::vector<uint8_t> all_treated(n, 1);
    const std::vector<uint8_t> all_control(n, 0);

    TaskOutput out;
    out.records.resize(cells_per_param_);
    out.truths.resize(cells_per_param_);
    for (int c = 0; c < cells_per_param_; ++c) {
      const CellKey& cell = cells_[gp * cells_per_param_ + c];
      model.beta = cell.beta;
      model.gamma = cell.gamma;
      const int cell_index = gp * cells_per_param_ + c;

      TruthRecord truth;
      truth.cell = cell_index;
      truth.replication = r;
      const auto y1 = Simulate(g, all_treated, model, noise);
      const auto y0 = Simulate(g, all_control, model, noise);
      for (int v = 0; v < n; ++v) {
        truth.mean_treated += y1.final()[v];
        truth.mean_control += y0.final()[v];
      }
      truth.mean_treated /= n;
      truth.mean_control /= n;
      out.truths[c] = truth;
      if (truth_only_) continue;

      for (size_t d = 0; d < cfg_.designs.size(); ++d) {
        const auto traj = Simulate(g, states[d].assignment.z, model, noise);
        const auto y = traj.final();
        for (const auto& est : estimators_) {
          const auto res = Evaluate(est, states[d], y);
          ReplicationRecord rec;
          rec.cell = cell_index;
          rec.replication = r;
          rec.design = cfg_.designs[d].name;
          rec.estimator = est.Label();
          rec.defined = res.defined();
          rec.estimate = res.estimate.value_or(0.0);
          out.records[c].push_back(std::move(rec));
        }
      }
    }
    return out;
  }

  const ExperimentConfig& cfg_;
  bool truth_only_;
  std::vector<double> params_;
  std::vector<EstimatorSpec> estimators_;
  std::vector<ExposureSpec> exposures_;
  std::vector<CellKey> cells_;
  int cells_per_param_ = 0;
  bool weighted_ = false;
  std::vector<Graph> fixed_graphs_;
  std::vector<Clustering> fixed_clusterings_;
};

}  // namespace

uint64_t DeriveSeed(uint64_t base_seed, std::string_view key, int replication, SeedRole role) {
  uint64_t h = HashCombine(base_seed, HashString(key));
  h = HashCombine(h, static_cast<uint64_t>(replication));
  return HashCombine(h, static_cast<uint64_t>(role));
}

int ResolveWorkers(std::optional<int> requested) {
  int workers = requested.value_or(static_cast<int>(std::thread::hardware_concurrency()));
  if (const char* cap = std::getenv("NETEXP_WORKERS"); cap != nullptr && *cap != '\0') {
    char* end = nullptr;
    const long value = std::strtol(cap, &end, 10);
    if (*end != '\0' || value < 1) {
      throw ConfigError("NETEXP_WORKERS must be a positive integer");
    }
    workers = std::min<long>(workers, value);
  }
  return std::max(1, workers);
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg, int workers) {
  return Runner(cfg, false).Run(workers);
}

ExperimentResult RunTruth(const ExperimentConfig& cfg, int workers) {
  return Runner(cfg, true).Run(workers);
}

void WriteTrajectories(const ExperimentConfig& cfg, int replication,
                       const std::filesystem::path& dir) {
  Runner(cfg, false).DumpTrajectories(replication, dir / "trajectories");
}

}  // namespace netexp
