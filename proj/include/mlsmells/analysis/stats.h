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

#ifndef MLSMELLS_ANALYSIS_STATS_H_
#define MLSMELLS_ANALYSIS_STATS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mlsmells {

inline constexpr double kDefaultAlpha = 0.05;

enum class Alternative { kTwoSided, kLess, kGreater };

struct StatResult {
  std::string test;
  double statistic = 0;
  double p_value = 1;
  // Cliff's delta of the first sample against the second, when defined.
  std::optional<double> effect_size;
  double alpha = kDefaultAlpha;
  bool significant = false;
  // "exact", "normal" or "chi-square".
  std::string method;
  int n = 0;
  // Set when the input carries no signal (all differences zero, ...).
  bool degenerate = false;
  // Friedman only: exact permutation p-value for small designs.
  std::optional<double> exact_p_value;
};

// Largest design evaluated by enumeration.
inline constexpr int kSignedRankExactMax = 12;
inline constexpr int kRankSumExactMax = 12;
inline constexpr int kFriedmanExactBlocks = 8;

// Paired samples; zero differences are dropped. Exact null distribution for
// at most 12 non-zero pairs, normal approximation with continuity and tie
// correction above. Throws DomainError on mismatched or empty input.
StatResult WilcoxonSignedRank(const std::vector<double>& x,
                              const std::vector<double>& y,
                              Alternative alternative = Alternative::kTwoSided,
                              double alpha = kDefaultAlpha);

// Independent samples (Mann-Whitney U of `a`). Exact when |a| + |b| <= 12,
// normal approximation with tie correction otherwise.
StatResult WilcoxonRankSum(const std::vector<double>& a,
                           const std::vector<double>& b,
                           Alternative alternative = Alternative::kTwoSided,
                           double alpha = kDefaultAlpha);

// `blocks[i][j]` is treatment j in block i. Requires k >= 3 treatments,
// n >= 2 blocks and equal block lengths. The p-value comes from the
// chi-square distribution with k - 1 degrees of freedom; for k = 3 and
// n <= 8 the exact permutation p-value is reported alongside.
StatResult Friedman(const std::vector<std::vector<double>>& blocks,
                    double alpha = kDefaultAlpha);

// Independent groups, tie-corrected H with a chi-square p-value.
StatResult KruskalWallis(const std::vector<std::vector<double>>& groups,
                         double alpha = kDefaultAlpha);

double CliffsDelta(const std::vector<double>& a, const std::vector<double>& b);
// negligible / small / medium / large at 0.147 / 0.33 / 0.474.
std::string_view CliffsMagnitude(double delta);

// Holm-Bonferroni adjusted p-values, in input order.
std::vector<double> HolmAdjust(const std::vector<double>& p_values);

// Average ranks (1-based) with ties sharing the mean rank.
std::vector<double> AverageRanks(const std::vector<double>& values);

// Linear interpolation between order statistics (R type 7).
double Quantile(std::vector<double> values, double p);

// Two-sided standard normal quantile, e.g. 1.959964 for 0.95.
double NormalQuantileTwoSided(double confidence);

}  // namespace mlsmells

#endif  // MLSMELLS_ANALYSIS_STATS_H_
