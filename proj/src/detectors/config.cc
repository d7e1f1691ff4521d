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

#include "mlsmells/detectors/config.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "fmt/core.h"
#include "mlsmells/util/errors.h"

namespace mlsmells {
namespace {

using ListRef = std::pair<std::string_view, NameSet DetectorConfig::*>;
using RoleListRef = std::pair<std::string_view, NameSet pysource::RoleRules::*>;

constexpr ListRef kLists[] = {
    {"iteration_methods", &DetectorConfig::iteration_methods},
    {"nan_constants", &DetectorConfig::nan_constants},
    {"read_csv_functions", &DetectorConfig::read_csv_functions},
    {"dtype_keywords", &DetectorConfig::dtype_keywords},
    {"merge_how_keywords", &DetectorConfig::merge_how_keywords},
    {"merge_on_keywords", &DetectorConfig::merge_on_keywords},
    {"inplace_methods", &DetectorConfig::inplace_methods},
    {"matmul_functions", &DetectorConfig::matmul_functions},
    {"backward_methods", &DetectorConfig::backward_methods},
    {"clear_grad_methods", &DetectorConfig::clear_grad_methods},
    {"memory_free_calls", &DetectorConfig::memory_free_calls},
    {"deterministic_calls", &DetectorConfig::deterministic_calls},
    {"random_prefixes", &DetectorConfig::random_prefixes},
    {"seed_calls", &DetectorConfig::seed_calls},
};

constexpr RoleListRef kRoleLists[] = {
    {"dataframe_constructors", &pysource::RoleRules::dataframe_constructors},
    {"series_constructors", &pysource::RoleRules::series_constructors},
    {"ndarray_constructors", &pysource::RoleRules::ndarray_constructors},
    {"tensor_constructors", &pysource::RoleRules::tensor_constructors},
    {"optimizer_modules", &pysource::RoleRules::optimizer_modules},
    {"model_constructors", &pysource::RoleRules::model_constructors},
    {"model_modules", &pysource::RoleRules::model_modules},
    {"model_bases", &pysource::RoleRules::model_bases},
    {"estimators", &pysource::RoleRules::estimators},
    {"dataframe_methods", &pysource::RoleRules::dataframe_methods},
    {"tensor_methods", &pysource::RoleRules::tensor_methods},
    {"model_methods", &pysource::RoleRules::model_methods},
};

NameSet* FindList(DetectorConfig& c, std::string_view key) {
  for (const auto& [name, member] : kLists) {
    if (name == key) return &(c.*member);
  }
  for (const auto& [name, member] : kRoleLists) {
    if (name == key) return &(c.roles.*member);
  }
  return nullptr;
}

std::string_view Trim(std::string_view s) {
  const auto ws = " \t\r";
  const size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::vector<std::string> SplitItems(std::string_view s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t comma = s.find(',', start);
    if (comma == std::string_view::npos) comma = s.size();
    std::string_view item = Trim(s.substr(start, comma - start));
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

void CheckKind(std::string_view kind, int line) {
  if (FindKind(kind) == nullptr) {
    throw FormatError(
        fmt::format("config line {}: unknown smell kind '{}'", line, kind));
  }
}

// FNV-1a; only needs to be stable across runs and platforms.
uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

DetectorConfig DetectorConfig::Defaults() {
  DetectorConfig c;
  c.roles = pysource::RoleRules::Defaults();
  c.iteration_methods = {"iterrows", "itertuples"};
  c.nan_constants = {"numpy.nan", "numpy.NaN", "numpy.NAN"};
  c.read_csv_functions = {"pandas.read_csv", "pandas.read_table"};
  c.dtype_keywords = {"dtype", "usecols"};
  c.merge_how_keywords = {"how"};
  c.merge_on_keywords = {"on", "left_on", "right_on", "left_index",
                         "right_index"};
  c.inplace_methods = {"dropna",      "fillna",      "drop",
                       "sort_values", "reset_index", "drop_duplicates",
                       "replace"};
  c.matmul_functions = {"numpy.dot"};
  c.backward_methods = {"backward"};
  c.clear_grad_methods = {"zero_grad"};
  c.memory_free_calls = {"clear_session", "empty_cache"};
  c.deterministic_calls = {"use_deterministic_algorithms"};
  c.random_prefixes = {"random.", "numpy.random.", "torch.rand"};
  // Seeded generator constructors count as controlling randomness.
  c.seed_calls = {"random.seed", "numpy.random.seed", "torch.manual_seed",
                  "torch.random.manual_seed", "numpy.random.default_rng",
                  "numpy.random.RandomState",
                  "torch.cuda.manual_seed", "torch.cuda.manual_seed_all",
                  "tensorflow.random.set_seed", "tensorflow.set_random_seed"};
  return c;
}

Stage DetectorConfig::StageOf(const SmellKind& kind) const {
  auto it = stage_overrides.find(kind.id);
  return it == stage_overrides.end() ? kind.stage : it->second;
}

std::string DetectorConfig::RuleSetHash() const {
  std::ostringstream canon;
  canon << "rules-v1\n";
  auto dump = [&](std::string_view key, const NameSet& set) {
    canon << key << '=';
    for (const auto& item : set) canon << item << ',';
    canon << '\n';
  };
  dump("disabled", disabled);
  for (const auto& [name, member] : kLists) dump(name, this->*member);
  for (const auto& [name, member] : kRoleLists) dump(name, roles.*member);
  return fmt::format("{:016x}", Fnv1a(canon.str()));
}

DetectorConfig ParseDetectorConfig(std::string_view text) {
  DetectorConfig c = DetectorConfig::Defaults();
  int line_no = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError(fmt::format("config line {}: expected 'key = value'",
                                    line_no));
    }
    std::string_view key = line.substr(0, eq);
    const bool extend = !key.empty() && key.back() == '+';
    if (extend) key.remove_suffix(1);
    key = Trim(key);
    const std::string_view value = Trim(line.substr(eq + 1));
    const std::vector<std::string> items = SplitItems(value);

    if (key == "disable" || key == "enable") {
      for (const auto& kind : items) {
        CheckKind(kind, line_no);
        if (key == "disable") {
          c.disabled.insert(kind);
        } else {
          c.disabled.erase(kind);
        }
      }
    } else if (key.starts_with("stage.")) {
      const std::string_view kind = key.substr(6);
      CheckKind(kind, line_no);
      auto stage = ParseStage(value);
      if (!stage) {
        throw FormatError(fmt::format("config line {}: unknown stage '{}'",
                                      line_no, value));
      }
      c.stage_overrides[std::string(kind)] = *stage;
    } else if (key.starts_with("terms.")) {
      const std::string_view kind = key.substr(6);
      CheckKind(kind, line_no);
      auto& terms = c.terms[std::string(kind)];
      if (!extend) terms.clear();
      terms.insert(terms.end(), items.begin(), items.end());
    } else if (NameSet* list = FindList(c, key)) {
      if (!extend) list->clear();
      list->insert(items.begin(), items.end());
    } else {
      throw FormatError(
          fmt::format("config line {}: unknown key '{}'", line_no, key));
    }
  }
  return c;
}

DetectorConfig LoadDetectorConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseDetectorConfig(ss.str());
}

std::vector<std::string> ConfigListKeys() {
  std::vector<std::string> keys;
  for (const auto& [name, member] : kLists) keys.emplace_back(name);
  for (const auto& [name, member] : kRoleLists) keys.emplace_back(name);
  return keys;
}

}  // namespace mlsmells
