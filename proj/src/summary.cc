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

#include "netexp/summary.h"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "netexp/csv.h"
#include "netexp/errors.h"
#include "netexp/rng.h"

namespace netexp {
namespace {

using nlohmann::json;

constexpr const char* kCellHeader = "graph_kind,graph_param_name,graph_param,beta,gamma";

void WriteCell(std::ostream& out, const CellKey& c) {
  out << c.graph_kind << ',' << c.graph_param_name << ',' << FormatDouble(c.graph_param) << ','
      << FormatDouble(c.beta) << ',' << FormatDouble(c.gamma);
}

std::string Optional(const std::optional<double>& v) { return v ? FormatDouble(*v) : ""; }

std::ofstream OpenOut(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw ConfigError("cannot write " + p.string());
  return out;
}

std::ifstream OpenIn(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot read " + p.string());
  return in;
}

struct CellTruth {
  double ate = 0.0;
  double se = 0.0;
};

std::vector<CellTruth> TruthByCell(const ExperimentResult& result) {
  std::vector<std::vector<double>> ates(result.cells.size());
  for (const auto& t : result.truths) ates.at(t.cell).push_back(t.ate());
  std::vector<CellTruth> out(result.cells.size());
  for (size_t c = 0; c < ates.size(); ++c) {
    const auto& a = ates[c];
    if (a.empty()) continue;
    double mean = 0.0;
    for (double x : a) mean += x;
    mean /= a.size();
    double ss = 0.0;
    for (double x : a) ss += (x - mean) * (x - mean);
    out[c].ate = mean;
    out[c].se = a.size() > 1 ? std::sqrt(ss / (a.size() - 1) / a.size()) : 0.0;
  }
  return out;
}

}  // namespace

std::vector<SummaryRow> Summarize(const ExperimentResult& result, const Baseline& baseline) {
  const auto truth = TruthByCell(result);
  // Group in first-appearance order within each cell.
  std::map<std::tuple<int, std::string, std::string>, size_t> index;
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> estimates;
  for (const auto& rec : result.records) {
    auto key = std::make_tuple(rec.cell, rec.design, rec.estimator);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, rows.size()).first;
      SummaryRow row;
      row.cell = result.cells.at(rec.cell);
      row.design = rec.design;
      row.estimator = rec.estimator;
      row.truth = truth[rec.cell].ate;
      row.truth_se = truth[rec.cell].se;
      rows.push_back(std::move(row));
      estimates.emplace_back();
    }
    if (rec.defined) {
      estimates[it->second].push_back(rec.estimate);
    } else {
      ++rows[it->second].n_undefined;
    }
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    auto& row = rows[i];
    const auto& e = estimates[i];
    row.n_defined = static_cast<int>(e.size());
    if (e.empty()) {
      row.missing = true;
      continue;
    }
    double mean = 0.0;
    for (double x : e) mean += x;
    mean /= e.size();
    double var = 0.0;
    for (double x : e) var += (x - mean) * (x - mean);
    var /= e.size();
    row.mean_estimate = mean;
    row.bias = mean - row.truth;
    row.variance = var;
    row.rmse = std::sqrt(row.bias * row.bias + var);
    if (row.truth != 0.0) row.relative_bias = row.bias / row.truth;
  }
  // Baseline comparisons within each cell.
  for (auto& row : rows) {
    if (row.missing) continue;
    int cell = -1;
    for (size_t c = 0; c < result.cells.size(); ++c) {
      if (result.cells[c] == row.cell) cell = static_cast<int>(c);
    }
    auto it = index.find({cell, baseline.design, baseline.estimator});
    if (it == index.end()) continue;
    const auto& base = rows[it->second];
    if (base.missing) continue;
    if (base.rmse > 0.0) row.pct_change_rmse = 100.0 * (row.rmse / base.rmse - 1.0);
    row.bias_change = std::abs(row.bias) - std::abs(base.bias);
  }
  return rows;
}

void WritePerReplicationCsv(std::ostream& out, const ExperimentResult& result) {
  out << kCellHeader << ",replication,design,estimator,estimate,defined\n";
  for (const auto& r : result.records) {
    WriteCell(out, result.cells.at(r.cell));
    out << ',' << r.replication << ',' << r.design << ',' << r.estimator << ','
        << (r.defined ? FormatDouble(r.estimate) : "") << ',' << (r.defined ? 1 : 0) << '\n';
  }
}

void WriteTruthCsv(std::ostream& out, const ExperimentResult& result) {
  out << kCellHeader << ",replication,mean_treated,mean_control,ate\n";
  for (const auto& t : result.truths) {
    WriteCell(out, result.cells.at(t.cell));
    out << ',' << t.replication << ',' << FormatDouble(t.mean_treated) << ','
        << FormatDouble(t.mean_control) << ',' << FormatDouble(t.ate()) << '\n';
  }
}

void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kCellHeader
      << ",design,estimator,truth,truth_se,n_defined,n_undefined,missing,mean_estimate,bias,"
         "relative_bias,variance,rmse,pct_change_rmse,bias_change\n";
  for (const auto& r : rows) {
    WriteCell(out, r.cell);
    out << ',' << r.design << ',' << r.estimator << ',' << FormatDouble(r.truth) << ','
        << FormatDouble(r.truth_se) << ',' << r.n_defined << ',' << r.n_undefined << ','
        << (r.missing ? 1 : 0) << ',';
    if (r.missing) {
      out << ",,,,,,\n";
      continue;
    }
    out << FormatDouble(r.mean_estimate) << ',' << FormatDouble(r.bias) << ','
        << Optional(r.relative_bias) << ',' << FormatDouble(r.variance) << ','
        << FormatDouble(r.rmse) << ',' << Optional(r.pct_change_rmse) << ','
        << Optional(r.bias_change) << '\n';
  }
}

void WritePlotDataCsv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kCellHeader << ",design,estimator,metric,value\n";
  for (const auto& r : rows) {
    if (r.missing) continue;
    auto emit = [&](const char* metric, const std::optional<double>& v) {
      if (!v) return;
      WriteCell(out, r.cell);
      out << ',' << r.design << ',' << r.estimator << ',' << metric << ',' << FormatDouble(*v)
          << '\n';
    };
    emit("bias", r.bias);
    emit("relative_bias", r.relative_bias);
    emit("rmse", r.rmse);
    emit("pct_change_rmse", r.pct_change_rmse);
    emit("bias_change_vs_baseline", r.bias_change);
  }
}

std::string MetadataJson(const ExperimentConfig& cfg) {
  json meta;
  meta["version"] = NETEXP_VERSION;
  meta["rng"] = kRngName;
  meta["seed"] = cfg.seed;
  meta["replications"] = cfg.replications;
  meta["baseline"] = {{"design", cfg.baseline_design}, {"estimator", cfg.baseline_estimator}};
  json echo = json::parse(cfg.source_text, nullptr, false);
  meta["config"] = echo.is_discarded() ? json(cfg.source_text) : echo;
  return meta.dump(2) + "\n";
}

void WriteRunOutputs(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                     const ExperimentResult& result) {
  std::filesystem::create_directories(dir);
  if (!result.records.empty()) {
    auto out = OpenOut(dir / "per_replication.csv");
    WritePerReplicationCsv(out, result);
  }
  {
    auto out = OpenOut(dir / "truth.csv");
    WriteTruthCsv(out, result);
  }
  {
    auto out = OpenOut(dir / "metadata.json");
    out << MetadataJson(cfg);
  }
  if (!result.records.empty()) {
    const auto rows = Summarize(result, {cfg.baseline_design, cfg.baseline_estimator});
    auto summary = OpenOut(dir / "summary.csv");
    WriteSummaryCsv(summary, rows);
    auto plot = OpenOut(dir / "plot_data.csv");
    WritePlotDataCsv(plot, rows);
  }
}

ExperimentResult ReadResults(const std::filesystem::path& dir) {
  ExperimentResult result;
  auto cell_of = [&](const CsvTable& t, const std::vector<std::string>& row,
                     const std::string& ctx) {
    CellKey key;
    key.graph_kind = row[t.Column("graph_kind")];
    key.graph_param_name = row[t.Column("graph_param_name")];
    key.graph_param = ParseDouble(row[t.Column("graph_param")], ctx);
    key.beta = ParseDouble(row[t.Column("beta")], ctx);
    key.gamma = ParseDouble(row[t.Column("gamma")], ctx);
    for (size_t c = 0; c < result.cells.size(); ++c) {
      if (result.cells[c] == key) return static_cast<int>(c);
    }
    result.cells.push_back(key);
    return static_cast<int>(result.cells.size() - 1);
  };

  const auto truth_path = dir / "truth.csv";
  auto truth_in = OpenIn(truth_path);
  const CsvTable truth = ReadCsv(truth_in, truth_path.string());
  for (size_t i = 0; i < truth.rows.size(); ++i) {
    const auto& row = truth.rows[i];
    const std::string ctx = truth_path.string() + " row " + std::to_string(i + 2);
    TruthRecord t;
    t.cell = cell_of(truth, row, ctx);
    t.replication = ParseInt(row[truth.Column("replication")], ctx);
    t.mean_treated = ParseDouble(row[truth.Column("mean_treated")], ctx);
    t.mean_control = ParseDouble(row[truth.Column("mean_control")], ctx);
    result.truths.push_back(t);
  }

  const auto rep_path = dir / "per_replication.csv";
  auto rep_in = OpenIn(rep_path);
  const CsvTable reps = ReadCsv(rep_in, rep_path.string());
  for (size_t i = 0; i < reps.rows.size(); ++i) {
    const auto& row = reps.rows[i];
    const std::string ctx = rep_path.string() + " row " + std::to_string(i + 2);
    ReplicationRecord r;
    r.cell = cell_of(reps, row, ctx);
    r.replication = ParseInt(row[reps.Column("replication")], ctx);
    r.design = row[reps.Column("design")];
    r.estimator = row[reps.Column("estimator")];
    r.defined = ParseInt(row[reps.Column("defined")], ctx) != 0;
    if (r.defined) r.estimate = ParseDouble(row[reps.Column("estimate")], ctx);
    result.records.push_back(std::move(r));
  }
  return result;
}

Baseline ReadBaseline(const std::filesystem::path& dir) {
  const auto path = dir / "metadata.json";
  auto in = OpenIn(path);
  try {
    const json meta = json::parse(in);
    return {meta.at("baseline").at("design").get<std::string>(),
            meta.at("baseline").at("estimator").get<std::string>()};
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace netexp
