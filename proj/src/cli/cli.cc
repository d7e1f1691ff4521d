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

#include "mlsmells/cli/cli.h"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fmt/core.h"
#include "json.hpp"
#include "mlsmells/analysis/agreement.h"
#include "mlsmells/analysis/sampling.h"
#include "mlsmells/analysis/study.h"
#include "mlsmells/detectors/config.h"
#include "mlsmells/detectors/snapshot.h"
#include "mlsmells/histminer/history.h"
#include "mlsmells/histminer/niche.h"
#include "mlsmells/lifecycle/commit_detection.h"
#include "mlsmells/lifecycle/survival.h"
#include "mlsmells/lifecycle/tracker.h"
#include "mlsmells/pysource/source_file.h"
#include "mlsmells/util/csv.h"
#include "mlsmells/util/errors.h"

namespace mlsmells {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out.flush()) {
    throw IoError(fmt::format("cannot write {}", path.string()));
  }
}

std::string Dump(const json& doc) { return doc.dump(2) + "\n"; }

struct ManifestEntry {
  std::string name;
  fs::path path;
};

// CSV with `name` and `path` columns; relative paths resolve against the
// manifest's directory.
std::vector<ManifestEntry> LoadManifest(const fs::path& file) {
  const std::vector<CsvRow> rows = ParseCsv(ReadFile(file));
  if (rows.empty()) throw FormatError(fmt::format("{}: empty", file.string()));
  size_t name_col = SIZE_MAX, path_col = SIZE_MAX;
  for (size_t i = 0; i < rows[0].fields.size(); ++i) {
    std::string h = rows[0].fields[i];
    std::transform(h.begin(), h.end(), h.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (h == "name") name_col = i;
    if (h == "path") path_col = i;
  }
  if (name_col == SIZE_MAX || path_col == SIZE_MAX) {
    throw FormatError(
        fmt::format("{}: header needs name and path columns", file.string()));
  }
  std::vector<ManifestEntry> out;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    if (f.size() <= std::max(name_col, path_col) || f[name_col].empty()) {
      throw FormatError(fmt::format("{}:{}: malformed row", file.string(),
                                    rows[r].line));
    }
    fs::path p = f[path_col];
    if (p.is_relative()) p = file.parent_path() / p;
    out.push_back({f[name_col], p});
  }
  return out;
}

DetectorConfig LoadConfig(const std::string& path) {
  return path.empty() ? DetectorConfig::Defaults() : LoadDetectorConfig(path);
}

// ---- detect ----------------------------------------------------------------

struct DetectArgs {
  std::vector<std::string> paths;
  std::string output = ".";
  std::string config;
  std::string project;
  int workers = 0;
  bool fail_on_smell = false;
};

int Detect(const DetectArgs& a, std::ostream& out, std::ostream& err) {
  const DetectorConfig config = LoadConfig(a.config);
  for (const std::string& p : a.paths) {
    if (!fs::exists(p)) {
      err << "error: no such file or directory: " << p << "\n";
      return kExitError;
    }
  }
  std::vector<FileReport> files;
  std::vector<std::string> diagnostics;
  for (const std::string& p : a.paths) {
    if (fs::is_directory(p)) {
      DetectionReport r = DetectSnapshot(p, config, a.project, "", a.workers);
      const std::string prefix =
          a.paths.size() > 1 ? pysource::NormalizePath(p) + "/" : "";
      for (FileReport& f : r.files) {
        f.path = prefix + f.path;
        for (SmellInstance& i : f.instances) i.file = f.path;
        files.push_back(std::move(f));
      }
      diagnostics.insert(diagnostics.end(), r.diagnostics.begin(),
                         r.diagnostics.end());
    } else {
      const std::string path = pysource::NormalizePath(p);
      AnalyzedFile analyzed =
          AnalyzeSource(pysource::MakeSourceFile(path, ReadFile(p)), config);
      for (const std::string& d : analyzed.diagnostics) {
        diagnostics.push_back(fmt::format("{}: {}", path, d));
      }
      files.push_back(ToFileReport(std::move(analyzed), ""));
    }
  }
  const DetectionReport report =
      BuildReport(a.project, "", std::move(files), std::move(diagnostics));
  WriteFile(fs::path(a.output) / "report.json", Dump(ReportToJson(report)));
  for (const FileReport& f : report.files) {
    for (const SmellInstance& i : f.instances) {
      out << fmt::format("{}:{}: {}\n", i.file, i.line, i.kind);
    }
  }
  for (const std::string& d : report.diagnostics) {
    err << "warning: " << d << "\n";
  }
  out << fmt::format("{} smell instance(s) in {} ML file(s), {} LOC\n",
                     report.TotalInstances(), report.ml_files,
                     report.total_loc);
  if (a.fail_on_smell && report.TotalInstances() > 0) return kExitPolicy;
  return kExitOk;
}

// ---- mine / lifecycle ------------------------------------------------------

struct MiningArgs {
  std::string repo;
  std::string manifest;
  std::string output = ".";
  std::string project;
  std::string config;
  std::string release_pattern;
  int rename_threshold = HistoryOptions{}.rename_threshold;
  double similarity = MatchOptions{}.similarity_threshold;
  int workers = 0;
  bool force = false;
};

HistoryOptions ToHistoryOptions(const MiningArgs& a) {
  HistoryOptions o;
  o.rename_threshold = a.rename_threshold;
  o.release_tag_pattern = a.release_pattern;
  return o;
}

void MineOne(const MiningArgs& a, const fs::path& repo, const fs::path& dir) {
  const History h = WalkHistory(repo, ToHistoryOptions(a));
  WriteFile(dir / "commits.csv", CommitsToCsv(h.commits));
}

void LifecycleOne(const MiningArgs& a, const std::string& project,
                  const fs::path& repo, const fs::path& dir,
                  const DetectorConfig& config, DetectionCache& cache,
                  std::ostream& err) {
  const History h = WalkHistory(repo, ToHistoryOptions(a));
  CommitDetectionOptions opts;
  opts.workers = a.workers;
  opts.cache = &cache;
  const std::vector<CommitDetection> detections =
      DetectCommits(repo, h, config, opts);
  for (const CommitDetection& d : detections) {
    for (const std::string& diag : d.diagnostics) {
      err << "warning: " << project << ": " << diag << "\n";
    }
  }
  MatchOptions match;
  match.similarity_threshold = a.similarity;
  Lifecycle lc = FindTransitions(h, detections, match);
  const CensoringResult censored =
      ApplyCensoring(lc.records, h.commits.back().timestamp);
  for (const std::string& kind : censored.skipped_kinds) {
    err << "warning: " << project << ": " << kind
        << ": no closed record, censoring skipped\n";
  }
  const DetectionReport head =
      DetectCommitSnapshot(repo, h.commits.back().sha, config, project, opts);
  WriteFile(dir / "commits.csv", CommitsToCsv(h.commits));
  WriteFile(dir / "lifecycle.csv", LifecycleToCsv(censored.records));
  WriteFile(dir / "traces.json", Dump(TracesToJson(project, h, lc)));
  WriteFile(dir / "report.json", Dump(ReportToJson(head)));
}

// Runs `step` for one repository or every manifest entry. Manifest entries
// that fail are skipped with a warning; completed entries get `marker`.
template <typename Step>
int ForEachProject(const MiningArgs& a, const char* marker, Step step,
                   std::ostream& out, std::ostream& err) {
  if (a.manifest.empty()) {
    if (a.repo.empty()) {
      err << "error: give a repository or --manifest\n";
      return kExitError;
    }
    const std::string name =
        a.project.empty() ? fs::path(a.repo).filename().string() : a.project;
    step(name, fs::path(a.repo), fs::path(a.output));
    out << fmt::format("{}: done\n", name);
    return kExitOk;
  }
  int done = 0, skipped = 0, resumed = 0;
  for (const ManifestEntry& e : LoadManifest(a.manifest)) {
    const fs::path dir = fs::path(a.output) / e.name;
    if (!a.force && fs::exists(dir / marker)) {
      ++resumed;
      continue;
    }
    try {
      step(e.name, e.path, dir);
      WriteFile(dir / marker, "");
      ++done;
    } catch (const Error& ex) {
      err << fmt::format("warning: {}: skipped: {}\n", e.name, ex.what());
      ++skipped;
    }
  }
  out << fmt::format("{} project(s) done, {} already complete, {} skipped\n",
                     done, resumed, skipped);
  return kExitOk;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string artifacts;
  std::string catalog;
  std::string output = ".";
  std::string config;
  double alpha = kDefaultAlpha;
  bool holm = false;
  bool kruskal_wallis = false;
  std::optional<int64_t> sample;
};

int Analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  if (a.sample) {
    out << SampleSize(*a.sample) << "\n";
    return kExitOk;
  }
  if (a.artifacts.empty() || a.catalog.empty()) {
    err << "error: analyze needs an artifacts directory and a catalog\n";
    return kExitError;
  }
  if (!fs::exists(a.catalog)) {
    err << "error: missing artifact " << a.catalog << "\n";
    return kExitError;
  }
  const NicheCatalog catalog = LoadNicheCatalog(a.catalog);
  for (const std::string& d : catalog.diagnostics) {
    err << "warning: " << a.catalog << ": " << d << "\n";
  }
  StudyOptions opts;
  opts.alpha = a.alpha;
  opts.holm = a.holm;
  opts.kruskal_wallis = a.kruskal_wallis;
  opts.config = LoadConfig(a.config);
  const StudyOutputs outputs =
      RunStudy(LoadArtifacts(a.artifacts, catalog.projects), opts);
  WriteStudy(outputs, a.output);
  out << fmt::format("analyzed {} project(s) into {}\n",
                     catalog.projects.size(), a.output);
  return kExitOk;
}

// ---- sample / validate -----------------------------------------------------

struct SampleArgs {
  std::optional<int64_t> population;
  std::string report;
  std::string files;
  std::string output = "validation";
  double confidence = 0.95;
  double margin = 0.05;
  uint64_t seed = 0;
};

int Sample(const SampleArgs& a, std::ostream& out, std::ostream& err) {
  if (a.population) {
    out << SampleSize(*a.population, a.confidence, a.margin) << "\n";
    return kExitOk;
  }
  std::vector<std::string> ml_files;
  if (!a.report.empty()) {
    const DetectionReport r = ReportFromJson(json::parse(ReadFile(a.report)));
    for (const FileReport& f : r.files) {
      if (f.ml) ml_files.push_back(f.path);
    }
  } else if (!a.files.empty()) {
    std::istringstream in(ReadFile(a.files));
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) ml_files.push_back(line);
    }
  } else {
    err << "error: give a population, --report or --files\n";
    return kExitError;
  }
  if (ml_files.empty()) {
    err << "error: no ML files to sample\n";
    return kExitError;
  }
  const ValidationPackage pkg =
      GenerateValidationPackage(ml_files, a.confidence, a.margin, a.seed);
  WriteValidationPackage(pkg, a.output);
  out << fmt::format("sampled {} of {} ML file(s) into {}\n", pkg.files.size(),
                     ml_files.size(), a.output);
  return kExitOk;
}

json ScoreJson(const Score& s) {
  auto opt = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  return {{"tp", s.tp},
          {"fp", s.fp},
          {"fn", s.fn},
          {"precision", opt(s.precision)},
          {"recall", opt(s.recall)}};
}

struct ValidateArgs {
  std::vector<std::string> sheets;
  std::string report;
  std::string output;
};

int Validate(const ValidateArgs& a, std::ostream& out, std::ostream&) {
  std::vector<ValidationSheet> sheets;
  for (const std::string& p : a.sheets) {
    sheets.push_back(ParseSheet(ReadFile(p), fs::path(p).stem().string()));
  }
  json doc;
  json raters = json::array();
  for (const ValidationSheet& s : sheets) raters.push_back(s.rater);
  doc["raters"] = raters;
  json kappas = json::array();
  for (size_t i = 0; i < sheets.size(); ++i) {
    for (size_t j = i + 1; j < sheets.size(); ++j) {
      const KappaResult k = CohenKappa(sheets[i], sheets[j]);
      kappas.push_back({{"a", sheets[i].rater},
                        {"b", sheets[j].rater},
                        {"kappa", k.kappa},
                        {"observed", k.observed},
                        {"expected", k.expected},
                        {"degenerate", k.degenerate}});
    }
  }
  doc["kappa"] = kappas;
  const MajorityResult m = MajorityVote(sheets);
  json ties = json::array();
  for (const auto& [f, k] : m.ties) {
    ties.push_back({{"file", m.truth.files[f]}, {"kind", m.truth.kinds[k]}});
  }
  doc["ties"] = ties;
  doc["precision_recall"] = nullptr;
  if (!a.report.empty()) {
    const DetectionReport r = ReportFromJson(json::parse(ReadFile(a.report)));
    const PrecisionRecallResult pr = PrecisionRecall(r, m.truth);
    json per_kind = json::object();
    for (const auto& [kind, s] : pr.per_kind) per_kind[kind] = ScoreJson(s);
    doc["precision_recall"] = {{"overall", ScoreJson(pr.overall)},
                               {"per_kind", per_kind}};
  }
  if (a.output.empty()) {
    out << Dump(doc);
  } else {
    const fs::path dir = a.output;
    WriteFile(dir / "validation.json", Dump(doc));
    WriteFile(dir / "ground_truth.csv", SheetToCsv(m.truth));
    out << fmt::format("wrote {}\n", (dir / "validation.json").string());
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Detects ML-specific code smells and mines their lifecycle.",
               "mlsmells"};
  app.require_subcommand(1);

  DetectArgs detect;
  CLI::App* d = app.add_subcommand("detect", "Detect smells in files or "
                                              "directories; writes report.json");
  d->add_option("paths", detect.paths, "Python files or directories")
      ->required();
  d->add_option("-o,--output", detect.output, "Output directory");
  d->add_option("--config", detect.config, "Detector config file");
  d->add_option("--project", detect.project, "Project name in the report");
  d->add_option("-j,--workers", detect.workers, "Parallelism (0: all cores)");
  d->add_flag("--fail-on-smell", detect.fail_on_smell,
              "Exit 1 when any smell is found");

  MiningArgs mine;
  CLI::App* m = app.add_subcommand("mine", "Extract commits.csv per project");
  m->add_option("repo", mine.repo, "Repository (instead of --manifest)");
  m->add_option("--manifest", mine.manifest, "CSV with name,path columns");
  m->add_option("-o,--output", mine.output, "Output directory");
  m->add_option("--project", mine.project, "Project name for a single repo");
  m->add_option("--rename-threshold", mine.rename_threshold,
                "git rename similarity, percent")
      ->check(CLI::Range(0, 100));
  m->add_option("--release-pattern", mine.release_pattern,
                "Regex selecting release tags");
  m->add_flag("--force", mine.force, "Ignore completion markers");

  MiningArgs life;
  CLI::App* l = app.add_subcommand(
      "lifecycle",
      "Track smell lifecycles; writes lifecycle.csv, traces.json, report.json");
  l->add_option("repo", life.repo, "Repository (instead of --manifest)");
  l->add_option("--manifest", life.manifest, "CSV with name,path columns");
  l->add_option("-o,--output", life.output, "Output directory");
  l->add_option("--project", life.project, "Project name for a single repo");
  l->add_option("--config", life.config, "Detector config file");
  l->add_option("--rename-threshold", life.rename_threshold,
                "git rename similarity, percent")
      ->check(CLI::Range(0, 100));
  l->add_option("--similarity", life.similarity,
                "Snippet similarity for matching instances")
      ->check(CLI::Range(0.0, 1.0));
  l->add_option("--release-pattern", life.release_pattern,
                "Regex selecting release tags");
  l->add_option("-j,--workers", life.workers, "Parallelism (0: all cores)");
  l->add_flag("--force", life.force, "Ignore completion markers");

  AnalyzeArgs analyze;
  CLI::App* an = app.add_subcommand("analyze", "Run the study analytics");
  an->add_option("artifacts", analyze.artifacts,
                 "Directory with one subdirectory per project");
  an->add_option("catalog", analyze.catalog, "Project catalog CSV");
  an->add_option("-o,--output", analyze.output, "Output directory");
  an->add_option("--config", analyze.config, "Detector config file");
  an->add_option("--alpha", analyze.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0));
  an->add_flag("--holm", analyze.holm, "Holm-Bonferroni correction for H0");
  an->add_flag("--kruskal-wallis", analyze.kruskal_wallis,
               "Kruskal-Wallis instead of Friedman for H1");
  an->add_option("--sample", analyze.sample,
                 "Print the sample size for a population and exit");

  SampleArgs sample;
  CLI::App* s = app.add_subcommand(
      "sample", "Sample size, or a validation package from ML files");
  s->add_option("population", sample.population, "Population size");
  s->add_option("--report", sample.report, "report.json to sample from");
  s->add_option("--files", sample.files, "File list to sample from");
  s->add_option("-o,--output", sample.output, "Package directory");
  s->add_option("--confidence", sample.confidence, "Confidence level");
  s->add_option("--margin", sample.margin, "Margin of error");
  s->add_option("--seed", sample.seed, "Sampling seed");

  ValidateArgs validate;
  CLI::App* v = app.add_subcommand(
      "validate", "Agreement, majority vote and precision/recall");
  v->add_option("sheets", validate.sheets, "Filled-in sheet CSVs")
      ->required();
  v->add_option("--report", validate.report, "report.json to score");
  v->add_option("-o,--output", validate.output, "Output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (d->parsed()) return Detect(detect, out, err);
    if (m->parsed()) {
      return ForEachProject(
          mine, kMinedMarker,
          [&](const std::string&, const fs::path& repo, const fs::path& dir) {
            MineOne(mine, repo, dir);
          },
          out, err);
    }
    if (l->parsed()) {
      const DetectorConfig config = LoadConfig(life.config);
      DetectionCache cache(DetectionCache::DirFromEnvironment());
      return ForEachProject(
          life, kLifecycleMarker,
          [&](const std::string& name, const fs::path& repo,
              const fs::path& dir) {
            LifecycleOne(life, name, repo, dir, config, cache, err);
          },
          out, err);
    }
    if (an->parsed()) return Analyze(analyze, out, err);
    if (s->parsed()) return Sample(sample, out, err);
    if (v->parsed()) return Validate(validate, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace mlsmells
