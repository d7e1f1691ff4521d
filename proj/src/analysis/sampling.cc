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

#include "mlsmells/analysis/sampling.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "fmt/core.h"
#include "mlsmells/analysis/agreement.h"
#include "mlsmells/analysis/stats.h"
#include "mlsmells/detectors/catalog.h"
#include "mlsmells/util/errors.h"

namespace mlsmells {
namespace {

// Guards against n0 / (1 + ...) landing a hair above an integer.
constexpr double kRoundingSlack = 1e-9;

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

}  // namespace

int64_t SampleSize(int64_t population, double confidence, double margin) {
  if (population < 1) throw DomainError("population must be at least 1");
  if (!(margin > 0 && margin < 1)) {
    throw DomainError(fmt::format("margin {} outside (0, 1)", margin));
  }
  const double z = NormalQuantileTwoSided(confidence);
  const double n0 = z * z * 0.25 / (margin * margin);
  const double n = n0 / (1 + (n0 - 1) / static_cast<double>(population));
  return std::min<int64_t>(population,
                           static_cast<int64_t>(std::ceil(n - kRoundingSlack)));
}

SizeGrouping AssignSizeGroups(std::vector<ProjectRecord>& projects) {
  if (projects.size() < 3) {
    throw DomainError("size grouping needs at least 3 projects");
  }
  std::vector<double> loc;
  for (const ProjectRecord& p : projects) loc.push_back(double(p.loc));
  SizeGrouping g;
  g.p30 = Quantile(loc, 0.30);
  g.p60 = Quantile(loc, 0.60);
  g.degenerate = g.p30 == g.p60;
  for (ProjectRecord& p : projects) {
    const double v = static_cast<double>(p.loc);
    if (v < g.p30) {
      p.size_group = SizeGroup::kSmall;
      ++g.small;
    } else if (v < g.p60 || (g.degenerate && v == g.p30)) {
      p.size_group = SizeGroup::kMedium;
      ++g.medium;
    } else {
      p.size_group = SizeGroup::kLarge;
      ++g.large;
    }
  }
  return g;
}

std::vector<size_t> SampleIndices(size_t n, size_t count, uint64_t seed) {
  count = std::min(count, n);
  std::mt19937_64 rng(seed);
  auto below = [&](uint64_t bound) {
    // Largest multiple of bound that fits, to avoid modulo bias.
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do {
      v = rng();
    } while (v >= limit);
    return v % bound;
  };
  std::vector<size_t> pool(n);
  for (size_t i = 0; i < n; ++i) pool[i] = i;
  // Partial Fisher-Yates.
  for (size_t i = 0; i < count; ++i) {
    const size_t j = i + static_cast<size_t>(below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

ValidationPackage GenerateValidationPackage(
    const std::vector<std::string>& ml_files, double confidence, double margin,
    uint64_t seed) {
  std::vector<std::string> files = ml_files;
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  ValidationPackage p;
  if (!files.empty()) {
    const auto n = static_cast<size_t>(
        SampleSize(static_cast<int64_t>(files.size()), confidence, margin));
    for (size_t i : SampleIndices(files.size(), n, seed)) {
      p.files.push_back(files[i]);
    }
  }
  std::vector<std::string> kinds;
  std::string readme = fmt::format(
      "# Validation package\n\n"
      "{} of {} ML files were sampled (confidence {}, margin {}, seed {}).\n"
      "For every file in sheet.csv answer Yes or No for each smell kind:\n"
      "does the file contain at least one instance of it?\n\n"
      "## Smell kinds\n\n",
      p.files.size(), files.size(), confidence, margin, seed);
  for (const SmellKind& k : Catalog()) {
    kinds.push_back(k.id);
    readme += fmt::format("- `{}` ({}, {}): {}\n", k.id, k.name,
                          StageName(k.stage), k.definition);
  }
  p.readme = std::move(readme);
  p.sheet_csv = SheetToCsv(EmptySheet(p.files, kinds), /*blank=*/true);
  return p;
}

void WriteValidationPackage(const ValidationPackage& package,
                            const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::string list;
  for (const std::string& f : package.files) list += f + '\n';
  WriteText(dir / "files.txt", list);
  WriteText(dir / "README.md", package.readme);
  WriteText(dir / "sheet.csv", package.sheet_csv);
}

}  // namespace mlsmells
