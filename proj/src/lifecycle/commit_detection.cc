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

#include "mlsmells/lifecycle/commit_detection.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fmt/core.h"
#include "json.hpp"
#include "mlsmells/pysource/source_file.h"
#include "mlsmells/util/errors.h"
#include "mlsmells/util/git.h"
#include "mlsmells/util/parallel.h"

namespace mlsmells {
namespace {

using nlohmann::json;

json ToJson(const BlobResult& r) {
  json instances = json::array();
  for (const SmellInstance& i : r.instances) {
    instances.push_back({{"kind", i.kind}, {"line", i.line},
                         {"snippet", i.snippet}});
  }
  json error = nullptr;
  if (r.parse_error) {
    error = {{"line", r.parse_error->line},
             {"message", r.parse_error->message}};
  }
  return {{"ml", r.ml},
          {"loc", r.loc},
          {"parse_error", error},
          {"instances", instances},
          {"diagnostics", r.diagnostics}};
}

BlobResult FromJson(const json& j) {
  BlobResult r;
  r.ml = j.at("ml").get<bool>();
  r.loc = j.at("loc").get<int>();
  if (!j.at("parse_error").is_null()) {
    r.parse_error = pysource::SyntaxError{
        j["parse_error"].at("line").get<int>(),
        j["parse_error"].at("message").get<std::string>()};
  }
  for (const json& i : j.at("instances")) {
    SmellInstance s;
    s.kind = i.at("kind").get<std::string>();
    s.line = i.at("line").get<int>();
    s.snippet = i.at("snippet").get<std::string>();
    r.instances.push_back(std::move(s));
  }
  r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  return r;
}

// Reads blobs through one `git cat-file --batch` call.
std::map<std::string, std::string> ReadBlobs(
    const std::filesystem::path& repo, const std::vector<std::string>& shas) {
  std::string input;
  for (const std::string& s : shas) input += s + '\n';
  const std::string out = Git(repo, {"cat-file", "--batch"}, input);
  std::map<std::string, std::string> blobs;
  size_t pos = 0;
  while (pos < out.size()) {
    const size_t nl = out.find('\n', pos);
    if (nl == std::string::npos) break;
    const std::string header = out.substr(pos, nl - pos);
    pos = nl + 1;
    std::istringstream hs(header);
    std::string sha, type;
    size_t size = 0;
    hs >> sha >> type;
    if (type == "missing") continue;
    if (!(hs >> size) || pos + size > out.size()) {
      throw RepoError("unexpected git cat-file output");
    }
    blobs.emplace(sha, out.substr(pos, size));
    pos += size + 1;
  }
  return blobs;
}

BlobResult Analyze(const std::string& path, const std::string& content,
                   const DetectorConfig& config) {
  pysource::SourceFile file{path, content, pysource::CountLoc(content)};
  AnalyzedFile a = AnalyzeSource(file, config);
  BlobResult r;
  r.ml = a.ml;
  r.loc = a.loc;
  r.parse_error = a.parse_error;
  r.instances = std::move(a.instances);
  for (SmellInstance& i : r.instances) {
    i.file.clear();
    i.commit.clear();
  }
  r.diagnostics = std::move(a.diagnostics);
  return r;
}

}  // namespace

DetectionCache::DetectionCache(std::filesystem::path dir)
    : dir_(std::move(dir)) {}

std::filesystem::path DetectionCache::DirFromEnvironment() {
  const char* dir = std::getenv("MLSMELLS_CACHE_DIR");
  return dir == nullptr ? std::filesystem::path()
                        : std::filesystem::path(dir);
}

std::filesystem::path DetectionCache::PathFor(const std::string& blob,
                                              const std::string& rules) const {
  return dir_ / rules / blob.substr(0, 2) / (blob + ".json");
}

std::optional<BlobResult> DetectionCache::Find(const std::string& blob,
                                               const std::string& rules) {
  {
    std::lock_guard lock(mu_);
    auto it = memory_.find({blob, rules});
    if (it != memory_.end()) {
      ++hits_;
      return it->second;
    }
  }
  if (!dir_.empty()) {
    std::ifstream in(PathFor(blob, rules), std::ios::binary);
    if (in) {
      try {
        BlobResult r = FromJson(json::parse(in));
        std::lock_guard lock(mu_);
        memory_.emplace(std::make_pair(blob, rules), r);
        ++hits_;
        return r;
      } catch (const std::exception&) {
        // A torn or stale entry is recomputed and overwritten.
      }
    }
  }
  ++misses_;
  return std::nullopt;
}

void DetectionCache::Store(const std::string& blob, const std::string& rules,
                           const BlobResult& result) {
  {
    std::lock_guard lock(mu_);
    memory_.insert_or_assign({blob, rules}, result);
  }
  if (dir_.empty()) return;
  const std::filesystem::path path = PathFor(blob, rules);
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  // Write then rename so readers never see a partial entry.
  const std::filesystem::path tmp = path.string() + fmt::format(
      ".tmp{}", std::hash<std::thread::id>()(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out << ToJson(result).dump();
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

std::vector<std::pair<std::string, std::string>> ListPythonBlobs(
    const std::filesystem::path& repo, const std::string& sha) {
  const std::string out =
      Git(repo, {"ls-tree", "-r", "-z", "--full-tree", sha});
  std::vector<std::pair<std::string, std::string>> files;
  size_t pos = 0;
  while (pos < out.size()) {
    size_t end = out.find('\0', pos);
    if (end == std::string::npos) end = out.size();
    const std::string_view entry =
        std::string_view(out).substr(pos, end - pos);
    pos = end + 1;
    // "<mode> <type> <object>\t<path>"
    const size_t tab = entry.find('\t');
    if (tab == std::string_view::npos) continue;
    const std::string_view meta = entry.substr(0, tab);
    const std::string_view path = entry.substr(tab + 1);
    if (!meta.starts_with("100") || !path.ends_with(".py")) continue;
    const size_t last_space = meta.rfind(' ');
    files.emplace_back(std::string(path),
                       std::string(meta.substr(last_space + 1)));
  }
  return files;
}

namespace {

// Cached results for `files` ((path, blob) pairs); misses are read in one
// batch and analyzed in parallel. Unreadable blobs stay empty.
std::vector<std::optional<BlobResult>> AnalyzeBlobs(
    const std::filesystem::path& repo,
    const std::vector<std::pair<std::string, std::string>>& files,
    const DetectorConfig& config, const std::string& rules,
    DetectionCache& cache, int workers) {
  std::vector<std::optional<BlobResult>> results(files.size());
  std::vector<std::string> wanted;
  for (size_t i = 0; i < files.size(); ++i) {
    results[i] = cache.Find(files[i].second, rules);
    if (!results[i]) wanted.push_back(files[i].second);
  }
  std::map<std::string, std::string> blobs;
  if (!wanted.empty()) blobs = ReadBlobs(repo, wanted);
  ParallelFor(files.size(), workers, [&](size_t i) {
    if (results[i]) return;
    auto it = blobs.find(files[i].second);
    if (it == blobs.end()) return;
    results[i] = Analyze(files[i].first, it->second, config);
    cache.Store(files[i].second, rules, *results[i]);
  });
  return results;
}

}  // namespace

std::vector<CommitDetection> DetectCommits(
    const std::filesystem::path& repo, const History& history,
    const DetectorConfig& config, const CommitDetectionOptions& options) {
  DetectionCache local;
  DetectionCache& cache = options.cache ? *options.cache : local;
  const std::string rules = config.RuleSetHash();
  const int workers =
      options.workers > 0 ? options.workers : DefaultParallelism();

  FileIdentityTracker ids;
  std::vector<CommitDetection> out;
  out.reserve(history.commits.size());
  for (size_t c = 0; c < history.commits.size(); ++c) {
    const CommitRecord& commit = history.commits[c];
    const FileIdentityTracker::Step step =
        ids.ApplyCommit(commit.sha, history.changes[c]);
    CommitDetection d;
    d.sha = commit.sha;
    d.ordinal = commit.ordinal;
    d.deleted_files.insert(step.deleted.begin(), step.deleted.end());

    std::vector<std::pair<std::string, std::string>> files;
    std::vector<std::optional<BlobResult>> results;
    try {
      files = ListPythonBlobs(repo, commit.sha);
      results = AnalyzeBlobs(repo, files, config, rules, cache, workers);
    } catch (const Error& e) {
      d.analyzable = false;
      d.diagnostics.push_back(
          fmt::format("{}: commit not analyzable: {}", commit.sha, e.what()));
      out.push_back(std::move(d));
      continue;
    }

    for (size_t i = 0; i < files.size(); ++i) {
      const std::string& path = files[i].first;
      const std::string id = ids.IdOf(path);
      if (id.empty()) {
        d.diagnostics.push_back(
            fmt::format("{}: {}: file has no identity", commit.sha, path));
        continue;
      }
      if (!results[i]) {
        d.unanalyzable_files.insert(id);
        d.diagnostics.push_back(
            fmt::format("{}: {}: blob unreadable", commit.sha, path));
        continue;
      }
      const BlobResult& r = *results[i];
      d.loc += r.loc;
      if (r.parse_error) {
        d.unanalyzable_files.insert(id);
        d.diagnostics.push_back(fmt::format("{}: {}:{}: syntax error: {}",
                                            commit.sha, path,
                                            r.parse_error->line,
                                            r.parse_error->message));
        continue;
      }
      if (r.ml) ++d.ml_files;
      for (const std::string& diag : r.diagnostics) {
        d.diagnostics.push_back(fmt::format("{}: {}", commit.sha, diag));
      }
      for (const SmellInstance& s : r.instances) {
        d.instances.push_back({s.kind, id, path, s.line, s.snippet});
      }
    }
    std::sort(d.instances.begin(), d.instances.end(),
              [](const TrackedInstance& a, const TrackedInstance& b) {
                return std::tie(a.file_id, a.line, a.kind) <
                       std::tie(b.file_id, b.line, b.kind);
              });
    out.push_back(std::move(d));
  }
  return out;
}

DetectionReport DetectCommitSnapshot(const std::filesystem::path& repo,
                                     const std::string& sha,
                                     const DetectorConfig& config,
                                     const std::string& project,
                                     const CommitDetectionOptions& options) {
  DetectionCache local;
  DetectionCache& cache = options.cache ? *options.cache : local;
  const int workers =
      options.workers > 0 ? options.workers : DefaultParallelism();
  const auto files = ListPythonBlobs(repo, sha);
  const auto results =
      AnalyzeBlobs(repo, files, config, config.RuleSetHash(), cache, workers);
  std::vector<FileReport> reports;
  std::vector<std::string> diagnostics;
  for (size_t i = 0; i < files.size(); ++i) {
    const std::string& path = files[i].first;
    if (!results[i]) {
      diagnostics.push_back(fmt::format("{}: blob unreadable", path));
      continue;
    }
    FileReport f;
    f.path = path;
    f.ml = results[i]->ml;
    f.loc = results[i]->loc;
    f.parse_error = results[i]->parse_error;
    f.instances = results[i]->instances;
    for (SmellInstance& s : f.instances) {
      s.file = path;
      s.commit = sha;
    }
    for (const std::string& d : results[i]->diagnostics) {
      diagnostics.push_back(fmt::format("{}: {}", path, d));
    }
    reports.push_back(std::move(f));
  }
  return BuildReport(project, sha, std::move(reports), std::move(diagnostics));
}

}  // namespace mlsmells
