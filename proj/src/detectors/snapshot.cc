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

#include "mlsmells/detectors/snapshot.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fmt/core.h"
#include "mlsmells/util/errors.h"
#include "mlsmells/util/parallel.h"

namespace mlsmells {

namespace fs = std::filesystem;

int DetectionReport::TotalInstances() const {
  int total = 0;
  for (const auto& [kind, n] : counts) total += n;
  return total;
}

FileReport ToFileReport(AnalyzedFile analyzed, const std::string& commit) {
  FileReport f;
  f.path = std::move(analyzed.path);
  f.ml = analyzed.ml;
  f.loc = analyzed.loc;
  f.parse_error = std::move(analyzed.parse_error);
  f.instances = std::move(analyzed.instances);
  for (auto& inst : f.instances) {
    inst.file = f.path;
    inst.commit = commit;
  }
  return f;
}

DetectionReport BuildReport(std::string project, std::string commit,
                            std::vector<FileReport> files,
                            std::vector<std::string> diagnostics) {
  DetectionReport r;
  r.project = std::move(project);
  r.commit = std::move(commit);
  std::sort(files.begin(), files.end(),
            [](const FileReport& a, const FileReport& b) {
              return a.path < b.path;
            });
  for (const SmellKind& k : Catalog()) r.counts[k.id] = 0;
  for (const FileReport& f : files) {
    r.total_loc += f.loc;
    if (f.ml) ++r.ml_files;
    for (const SmellInstance& inst : f.instances) ++r.counts[inst.kind];
  }
  r.files = std::move(files);
  r.diagnostics = std::move(diagnostics);
  return r;
}

DetectionReport DetectSnapshot(const fs::path& checkout,
                               const DetectorConfig& config,
                               const std::string& project,
                               const std::string& commit, int workers) {
  std::error_code ec;
  if (!fs::is_directory(checkout, ec)) {
    throw IoError("not a directory: " + checkout.string());
  }
  std::vector<std::string> paths;
  for (auto it = fs::recursive_directory_iterator(
           checkout, fs::directory_options::skip_permission_denied, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) break;
    if (it->is_directory() && it->path().filename() == ".git") {
      it.disable_recursion_pending();
      continue;
    }
    if (it->is_regular_file() && it->path().extension() == ".py") {
      paths.push_back(fs::relative(it->path(), checkout).generic_string());
    }
  }
  std::sort(paths.begin(), paths.end());

  std::vector<std::optional<FileReport>> slots(paths.size());
  std::vector<std::vector<std::string>> errors(paths.size());
  ParallelFor(paths.size(), workers > 0 ? workers : DefaultParallelism(),
              [&](size_t i) {
                std::ifstream in(checkout / paths[i], std::ios::binary);
                std::ostringstream ss;
                if (!in || !(ss << in.rdbuf())) {
                  errors[i].push_back(fmt::format("{}: unreadable file", paths[i]));
                  return;
                }
                try {
                  AnalyzedFile a = AnalyzeSource(
                      pysource::MakeSourceFile(paths[i], ss.str()), config);
                  errors[i] = a.diagnostics;
                  slots[i] = ToFileReport(std::move(a), commit);
                } catch (const std::exception& e) {
                  errors[i].push_back(fmt::format("{}: {}", paths[i], e.what()));
                }
              });
  std::vector<FileReport> files;
  std::vector<std::string> diagnostics;
  for (size_t i = 0; i < paths.size(); ++i) {
    diagnostics.insert(diagnostics.end(), errors[i].begin(), errors[i].end());
    if (slots[i]) {
      if (slots[i]->parse_error) {
        diagnostics.push_back(fmt::format("{}:{}: syntax error: {}", paths[i],
                                          slots[i]->parse_error->line,
                                          slots[i]->parse_error->message));
      }
      files.push_back(std::move(*slots[i]));
    }
  }
  return BuildReport(project, commit, std::move(files),
                     std::move(diagnostics));
}

nlohmann::json ReportToJson(const DetectionReport& r) {
  using nlohmann::json;
  json files = json::array();
  for (const FileReport& f : r.files) {
    json instances = json::array();
    for (const SmellInstance& inst : f.instances) {
      instances.push_back(
          {{"kind", inst.kind}, {"line", inst.line}, {"snippet", inst.snippet}});
    }
    json parse_error = nullptr;
    if (f.parse_error) {
      parse_error = {{"line", f.parse_error->line},
                     {"message", f.parse_error->message}};
    }
    files.push_back({{"path", f.path},
                     {"ml", f.ml},
                     {"loc", f.loc},
                     {"parse_error", parse_error},
                     {"instances", instances}});
  }
  json counts = json::object();
  for (const auto& [kind, n] : r.counts) counts[kind] = n;
  return {{"project", r.project},
          {"commit", r.commit},
          {"ml_files", r.ml_files},
          {"total_loc", r.total_loc},
          {"total_instances", r.TotalInstances()},
          {"counts", counts},
          {"files", files},
          {"diagnostics", r.diagnostics}};
}

DetectionReport ReportFromJson(const nlohmann::json& doc) {
  try {
    std::vector<FileReport> files;
    const std::string commit = doc.at("commit").get<std::string>();
    for (const auto& jf : doc.at("files")) {
      FileReport f;
      f.path = jf.at("path").get<std::string>();
      f.ml = jf.at("ml").get<bool>();
      f.loc = jf.at("loc").get<int>();
      if (!jf.at("parse_error").is_null()) {
        f.parse_error = pysource::SyntaxError{
            jf["parse_error"].at("line").get<int>(),
            jf["parse_error"].at("message").get<std::string>()};
      }
      for (const auto& ji : jf.at("instances")) {
        f.instances.push_back({ji.at("kind").get<std::string>(), f.path,
                               ji.at("line").get<int>(),
                               ji.at("snippet").get<std::string>(), commit});
      }
      files.push_back(std::move(f));
    }
    return BuildReport(doc.at("project").get<std::string>(), commit,
                       std::move(files),
                       doc.at("diagnostics").get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(fmt::format("malformed report: {}", e.what()));
  }
}

}  // namespace mlsmells
