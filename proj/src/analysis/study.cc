// Copyright 2026 The mlsmells Authors.
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

#include "mlsmells/analysis/study.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "fmt/core.h"
#include "mlsmells/analysis/prevalence.h"
#include "mlsmells/analysis/rationale.h"
#include "mlsmells/analysis/sampling.h"
#include "mlsmells/analysis/segmentation.h"
#include "mlsmells/detectors/catalog.h"
#include "mlsmells/lifecycle/survival.h"
#include "mlsmells/util/csv.h"
#include "mlsmells/util/errors.h"

namespace mlsmells {
namespace {

using nlohmann::json;

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

std::string Join(const std::vector<std::string>& v, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += sep;
    out += v[i];
  }
  return out;
}

json Optional(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

// Per-project normalized prevalence of one kind, or the total when `kind`
// is empty. Projects without LOC carry no normalized value.
std::optional<double> PerKloc(const Prevalence& p, const std::string& kind) {
  if (p.loc <= 0) return std::nullopt;
  if (!kind.empty()) return p.per_kind.at(kind).per_kloc;
  int total = 0;
  for (const auto& [k, c] : p.per_kind) total += c.count;
  return 1000.0 * total / static_cast<double>(p.loc);
}

}  // namespace

std::vector<ProjectArtifacts> LoadArtifacts(
    const std::filesystem::path& root,
    const std::vector<ProjectRecord>& catalog) {
  std::vector<ProjectArtifacts> out;
  for (const ProjectRecord& p : catalog) {
    for (const char* name : kProjectArtifacts) {
      const std::filesystem::path path = root / p.name / name;
      std::error_code ec;
      if (!std::filesystem::is_regular_file(path, ec)) {
        throw IoError("missing artifact " + path.string());
      }
    }
    ProjectArtifacts a;
    a.project = p;
    const std::filesystem::path dir = root / p.name;
    try {
      a.report = ReportFromJson(json::parse(Slurp(dir / "report.json")));
    } catch (const json::exception& e) {
      throw FormatError((dir / "report.json").string() + ": " + e.what());
    }
    a.commits = CommitsFromCsv(Slurp(dir / "commits.csv"));
    a.lifecycle = LifecycleFromCsv(Slurp(dir / "lifecycle.csv"));
    out.push_back(std::move(a));
  }
  return out;
}

json StatResultToJson(const StatResult& r) {
  json j = {{"test", r.test},
            {"statistic", r.statistic},
            {"p_value", r.p_value},
            {"alpha", r.alpha},
            {"significant", r.significant},
            {"method", r.method},
            {"n", r.n},
            {"degenerate", r.degenerate},
            {"effect_size", Optional(r.effect_size)},
            {"magnitude", r.effect_size ? json(CliffsMagnitude(*r.effect_size))
                                        : json(nullptr)},
            {"exact_p_value", Optional(r.exact_p_value)}};
  return j;
}

StudyOutputs RunStudy(std::vector<ProjectArtifacts> projects,
                      const StudyOptions& options) {
  std::sort(projects.begin(), projects.end(),
            [](const ProjectArtifacts& a, const ProjectArtifacts& b) {
              return a.project.name < b.project.name;
            });
  StudyOutputs out;
  json analysis;
  analysis["alpha"] = options.alpha;
  analysis["holm"] = options.holm;
  analysis["projects"] = projects.size();
  std::vector<std::string> kinds;
  for (const SmellKind& k : Catalog()) kinds.push_back(k.id);

  // Size groups.
  std::vector<ProjectRecord> records;
  for (const auto& p : projects) records.push_back(p.project);
  if (records.size() >= 3) {
    const SizeGrouping g = AssignSizeGroups(records);
    analysis["size_groups"] = {{"p30", g.p30}, {"p60", g.p60},
                               {"degenerate", g.degenerate},
                               {"small", g.small}, {"medium", g.medium},
                               {"large", g.large}};
  } else {
    analysis["size_groups"] = nullptr;
  }

  // RQ0 prevalence.
  std::vector<Prevalence> prevalence;
  json per_project = json::object();
  for (size_t i = 0; i < projects.size(); ++i) {
    prevalence.push_back(ComputePrevalence(projects[i].report, options.config));
    json kinds_json = json::object();
    for (const auto& [kind, c] : prevalence.back().per_kind) {
      kinds_json[kind] = {{"count", c.count}, {"per_kloc", Optional(c.per_kloc)}};
    }
    json stages_json = json::object();
    for (const auto& [stage, c] : prevalence.back().per_stage) {
      stages_json[stage] = {{"count", c.count},
                            {"per_kloc", Optional(c.per_kloc)}};
    }
    per_project[projects[i].project.name] = {
        {"loc", prevalence.back().loc},
        {"size_group", SizeGroupName(records[i].size_group)},
        {"ci", projects[i].project.has_ci},
        {"kinds", kinds_json},
        {"stages", stages_json}};
  }
  analysis["prevalence"] = per_project;

  // H0: pairwise signed-rank over projects with LOC.
  json h0 = json::array();
  std::vector<StatResult> h0_results;
  std::vector<std::pair<std::string, std::string>> h0_pairs;
  for (size_t a = 0; a < kinds.size(); ++a) {
    for (size_t b = a + 1; b < kinds.size(); ++b) {
      std::vector<double> x, y;
      for (const Prevalence& p : prevalence) {
        const auto va = PerKloc(p, kinds[a]);
        const auto vb = PerKloc(p, kinds[b]);
        if (va && vb) {
          x.push_back(*va);
          y.push_back(*vb);
        }
      }
      if (x.empty()) continue;
      h0_results.push_back(WilcoxonSignedRank(x, y, Alternative::kTwoSided,
                                              options.alpha));
      h0_pairs.emplace_back(kinds[a], kinds[b]);
    }
  }
  std::vector<double> adjusted;
  if (options.holm) {
    std::vector<double> p;
    for (const auto& r : h0_results) p.push_back(r.p_value);
    adjusted = HolmAdjust(p);
  }
  for (size_t i = 0; i < h0_results.size(); ++i) {
    json j = StatResultToJson(h0_results[i]);
    j["kind_a"] = h0_pairs[i].first;
    j["kind_b"] = h0_pairs[i].second;
    if (options.holm) {
      j["p_adjusted"] = adjusted[i];
      j["significant"] = adjusted[i] < options.alpha;
    }
    h0.push_back(j);
  }

  // H1: size groups.
  json h1 = nullptr;
  if (analysis["size_groups"].is_object()) {
    std::map<SizeGroup, std::vector<size_t>> members;
    for (size_t i = 0; i < records.size(); ++i) {
      if (prevalence[i].loc > 0) members[records[i].size_group].push_back(i);
    }
    const std::vector<SizeGroup> order = {SizeGroup::kSmall, SizeGroup::kMedium,
                                          SizeGroup::kLarge};
    const bool complete = std::all_of(order.begin(), order.end(), [&](SizeGroup g) {
      return !members[g].empty();
    });
    if (complete && options.kruskal_wallis) {
      std::vector<std::vector<double>> groups;
      for (SizeGroup g : order) {
        groups.emplace_back();
        for (size_t i : members[g]) groups.back().push_back(*PerKloc(prevalence[i], ""));
      }
      h1 = StatResultToJson(KruskalWallis(groups, options.alpha));
    } else if (complete) {
      // Blocks are kinds; each cell is the group's median prevalence.
      std::vector<std::vector<double>> blocks;
      for (const std::string& kind : kinds) {
        std::vector<double> row;
        for (SizeGroup g : order) {
          std::vector<double> v;
          for (size_t i : members[g]) v.push_back(*PerKloc(prevalence[i], kind));
          row.push_back(*Median(v));
        }
        blocks.push_back(row);
      }
      h1 = StatResultToJson(Friedman(blocks, options.alpha));
    }
  }

  // H2: CI vs non-CI, total and per kind.
  json h2 = nullptr;
  json h2_kinds = json::object();
  {
    auto split = [&](const std::string& kind) {
      std::pair<std::vector<double>, std::vector<double>> s;
      for (size_t i = 0; i < projects.size(); ++i) {
        const auto v = PerKloc(prevalence[i], kind);
        if (!v) continue;
        (projects[i].project.has_ci ? s.first : s.second).push_back(*v);
      }
      return s;
    };
    const auto [ci, no_ci] = split("");
    if (!ci.empty() && !no_ci.empty()) {
      h2 = StatResultToJson(
          WilcoxonRankSum(ci, no_ci, Alternative::kTwoSided, options.alpha));
      for (const std::string& kind : kinds) {
        const auto [a, b] = split(kind);
        h2_kinds[kind] = StatResultToJson(
            WilcoxonRankSum(a, b, Alternative::kTwoSided, options.alpha));
      }
    }
  }
  analysis["hypotheses"] = {{"H0", h0}, {"H1", h1}, {"H2", h2},
                            {"H2_per_kind", h2_kinds}};
  analysis["h1_test"] = options.kruskal_wallis ? "kruskal-wallis" : "friedman";

  // RQ1 segmentation, RQ2 rationale, RQ3 removal, RQ4 survival.
  std::string segments =
      CsvLine({"project", "sha", "ordinal", "development_time",
               "activity_level", "release_distance", "introduced", "removed"});
  std::string rationale = CsvLine(
      {"project", "sha", "tags", "matches", "introduced_kinds",
       "self_admitted_kinds"});
  std::vector<IntroducingCommit> introducing;
  std::vector<LifecycleRecord> all_records;
  std::map<std::string, int> removal_modes;
  for (const auto& p : projects) {
    std::map<std::string, int> introduced, removed;
    std::map<std::string, std::set<std::string>> kinds_by_commit;
    for (const LifecycleRecord& r : p.lifecycle) {
      ++introduced[r.introducing_sha];
      if (!r.removing_sha.empty()) ++removed[r.removing_sha];
      kinds_by_commit[r.introducing_sha].insert(r.kind);
      ++removal_modes[std::string(RemovalModeName(r.removal_mode))];
      all_records.push_back(r);
    }
    const std::vector<SegmentLabel> labels = SegmentHistory(p.commits);
    for (size_t i = 0; i < p.commits.size(); ++i) {
      const CommitRecord& c = p.commits[i];
      segments += CsvLine(
          {p.project.name, c.sha, std::to_string(c.ordinal),
           std::string(DevelopmentTimeName(labels[i].development_time)),
           std::string(ActivityLevelName(labels[i].activity_level)),
           std::string(ReleaseDistanceName(labels[i].release_distance)),
           std::to_string(introduced[c.sha]), std::to_string(removed[c.sha])});
      auto it = kinds_by_commit.find(c.sha);
      if (it == kinds_by_commit.end()) continue;
      const RationaleTag tag = TagRationale(c.message);
      std::vector<std::string> admitted;
      for (const std::string& kind : it->second) {
        const SmellKind* k = FindKind(kind);
        auto terms = options.config.terms.find(kind);
        if (k != nullptr &&
            DetectSelfAdmission(c.message, *k,
                                terms == options.config.terms.end()
                                    ? std::vector<std::string>{}
                                    : terms->second)) {
          admitted.push_back(kind);
        }
      }
      const std::vector<std::string> kinds_v(it->second.begin(),
                                             it->second.end());
      rationale += CsvLine({p.project.name, c.sha, Join(tag.tags, ";"),
                            Join(tag.matches, ";"), Join(kinds_v, ";"),
                            Join(admitted, ";")});
      introducing.push_back({tag.tags, kinds_v});
    }
  }
  const Cooccurrence co = ComputeCooccurrence(introducing);
  std::vector<std::string> header = {"tag"};
  header.insert(header.end(), co.kinds.begin(), co.kinds.end());
  header.push_back("commits");
  std::string cooccurrence = CsvLine(header);
  for (size_t t = 0; t < co.tags.size(); ++t) {
    std::vector<std::string> row = {co.tags[t]};
    for (int v : co.cells[t]) row.push_back(std::to_string(v));
    row.push_back(std::to_string(co.commits_per_tag[t]));
    cooccurrence += CsvLine(row);
  }
  analysis["removal_modes"] = removal_modes;
  analysis["smell_introducing_commits"] = co.commits;

  const auto survival = SurvivalStats(all_records);
  json survival_json = json::object();
  for (const auto& [kind, s] : survival) {
    survival_json[kind] = {{"records", s.records},
                           {"open", s.open},
                           {"closed", s.closed},
                           {"censored", s.censored},
                           {"mean_commits", Optional(s.mean_commits)},
                           {"median_commits", Optional(s.median_commits)},
                           {"mean_days", Optional(s.mean_days)},
                           {"median_days", Optional(s.median_days)}};
  }
  analysis["survival"] = survival_json;

  out.analysis = std::move(analysis);
  out.segments_csv = std::move(segments);
  out.rationale_csv = std::move(rationale);
  out.cooccurrence_csv = std::move(cooccurrence);
  out.survival_csv = SurvivalToCsv(survival);
  return out;
}

void WriteStudy(const StudyOutputs& outputs, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  WriteText(dir / "analysis.json", outputs.analysis.dump(2) + "\n");
  WriteText(dir / "segments.csv", outputs.segments_csv);
  WriteText(dir / "rationale.csv", outputs.rationale_csv);
  WriteText(dir / "cooccurrence.csv", outputs.cooccurrence_csv);
  WriteText(dir / "survival.csv", outputs.survival_csv);
}

}  // namespace mlsmells
