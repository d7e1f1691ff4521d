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

#include "mlsmells/analysis/stats.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "boost/math/distributions/chi_squared.hpp"
#include "boost/math/distributions/normal.hpp"
#include "fmt/core.h"
#include "mlsmells/util/errors.h"

namespace mlsmells {
namespace {

// Tolerance for comparing statistics computed from doubled integer ranks.
constexpr double kEps = 1e-9;

double NormalSf(double z) {
  return boost::math::cdf(boost::math::complement(boost::math::normal(), z));
}

// Normal tail with a first-order Edgeworth term for excess kurtosis
// `gamma2` (fourth cumulant over variance squared).
double EdgeworthSf(double z, double gamma2) {
  const double phi = boost::math::pdf(boost::math::normal(), z);
  const double p = NormalSf(z) + phi * gamma2 / 24 * (z * z * z - 3 * z);
  return std::clamp(p, 0.0, 1.0);
}

double ChiSquareSf(double x, double df) {
  if (x <= 0) return 1.0;
  return boost::math::cdf(
      boost::math::complement(boost::math::chi_squared(df), x));
}

// Sum over tie groups of (t^3 - t).
double TieTerm(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0;
  for (size_t i = 0; i < values.size();) {
    size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    const double t = static_cast<double>(j - i);
    sum += t * t * t - t;
    i = j;
  }
  return sum;
}

// p-value from the lower and upper tail probabilities.
double Tails(double lower, double upper, Alternative alt) {
  switch (alt) {
    case Alternative::kLess:
      return std::min(1.0, lower);
    case Alternative::kGreater:
      return std::min(1.0, upper);
    case Alternative::kTwoSided:
      break;
  }
  return std::min(1.0, 2 * std::min(lower, upper));
}

void Finish(StatResult& r) {
  r.p_value = std::clamp(r.p_value, 0.0, 1.0);
  r.significant = r.p_value < r.alpha;
}

}  // namespace

std::vector<double> AverageRanks(const std::vector<double>& values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2;
    for (size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

StatResult WilcoxonSignedRank(const std::vector<double>& x,
                              const std::vector<double>& y,
                              Alternative alternative, double alpha) {
  if (x.size() != y.size() || x.empty()) {
    throw DomainError("signed-rank test needs paired samples of equal size");
  }
  StatResult r;
  r.test = "wilcoxon-signed-rank";
  r.alpha = alpha;
  r.effect_size = CliffsDelta(x, y);
  std::vector<double> diffs;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] != y[i]) diffs.push_back(x[i] - y[i]);
  }
  const int n = static_cast<int>(diffs.size());
  r.n = n;
  if (n == 0) {
    r.degenerate = true;
    r.method = "exact";
    r.p_value = 1;
    Finish(r);
    return r;
  }
  std::vector<double> abs_diffs;
  for (double d : diffs) abs_diffs.push_back(std::fabs(d));
  const std::vector<double> ranks = AverageRanks(abs_diffs);
  double w_plus = 0;
  for (int i = 0; i < n; ++i) {
    if (diffs[i] > 0) w_plus += ranks[i];
  }
  r.statistic = w_plus;

  if (n <= kSignedRankExactMax) {
    r.method = "exact";
    // Doubled ranks are integers, so tail comparisons are exact.
    std::vector<long> doubled;
    for (double rank : ranks) doubled.push_back(std::lround(2 * rank));
    const long observed = std::lround(2 * w_plus);
    long lower = 0, upper = 0;
    const long total = 1L << n;
    for (long mask = 0; mask < total; ++mask) {
      long w = 0;
      for (int i = 0; i < n; ++i) {
        if (mask & (1L << i)) w += doubled[i];
      }
      if (w <= observed) ++lower;
      if (w >= observed) ++upper;
    }
    r.p_value = Tails(static_cast<double>(lower) / total,
                      static_cast<double>(upper) / total, alternative);
  } else {
    r.method = "normal";
    const double nn = n;
    const double mean = nn * (nn + 1) / 4;
    const double var =
        nn * (nn + 1) * (2 * nn + 1) / 24 - TieTerm(abs_diffs) / 48;
    const double sd = std::sqrt(var);
    // W+ is a sum of independent rank * Bernoulli(1/2) terms, each with
    // fourth cumulant -rank^4 / 8.
    double k4 = 0;
    for (double rank : ranks) k4 -= rank * rank * rank * rank / 8;
    const double gamma2 = k4 / (var * var);
    const double upper = EdgeworthSf((w_plus - mean - 0.5) / sd, gamma2);
    const double lower = EdgeworthSf((mean - w_plus - 0.5) / sd, gamma2);
    r.p_value = Tails(lower, upper, alternative);
  }
  Finish(r);
  return r;
}

StatResult WilcoxonRankSum(const std::vector<double>& a,
                           const std::vector<double>& b,
                           Alternative alternative, double alpha) {
  if (a.empty() || b.empty()) {
    throw DomainError("rank-sum test needs two non-empty samples");
  }
  StatResult r;
  r.test = "wilcoxon-rank-sum";
  r.alpha = alpha;
  r.effect_size = CliffsDelta(a, b);
  const size_t n1 = a.size();
  const size_t n2 = b.size();
  const size_t total = n1 + n2;
  r.n = static_cast<int>(total);
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> ranks = AverageRanks(pooled);
  double r1 = 0;
  for (size_t i = 0; i < n1; ++i) r1 += ranks[i];
  const double shift = static_cast<double>(n1) * (n1 + 1) / 2;
  const double u = r1 - shift;
  r.statistic = u;
  if (TieTerm(pooled) == std::pow(double(total), 3) - double(total)) {
    r.degenerate = true;  // a single tie group: no ordering information
  }

  if (total <= static_cast<size_t>(kRankSumExactMax)) {
    r.method = "exact";
    std::vector<long> doubled;
    for (double rank : ranks) doubled.push_back(std::lround(2 * rank));
    const long observed = std::lround(2 * r1);
    long lower = 0, upper = 0, count = 0;
    // Every subset of size n1 of the pooled ranks.
    std::vector<bool> pick(total, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(n1), true);
    do {
      long s = 0;
      for (size_t i = 0; i < total; ++i) {
        if (pick[i]) s += doubled[i];
      }
      if (s <= observed) ++lower;
      if (s >= observed) ++upper;
      ++count;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    r.p_value = Tails(static_cast<double>(lower) / count,
                      static_cast<double>(upper) / count, alternative);
  } else {
    r.method = "normal";
    const double nn = static_cast<double>(total);
    const double mean = static_cast<double>(n1 * n2) / 2;
    const double var = static_cast<double>(n1 * n2) / 12 *
                       ((nn + 1) - TieTerm(pooled) / (nn * (nn - 1)));
    if (var <= 0) {
      r.p_value = 1;
    } else {
      const double sd = std::sqrt(var);
      const double upper = NormalSf((u - mean - 0.5) / sd);
      const double lower = NormalSf((mean - u - 0.5) / sd);
      r.p_value = Tails(lower, upper, alternative);
    }
  }
  Finish(r);
  return r;
}

StatResult Friedman(const std::vector<std::vector<double>>& blocks,
                    double alpha) {
  const size_t n = blocks.size();
  if (n < 2) throw DomainError("Friedman test needs at least 2 blocks");
  const size_t k = blocks[0].size();
  if (k < 3) {
    throw DomainError(
        "Friedman test needs at least 3 treatments; use the signed-rank test "
        "for 2");
  }
  for (const auto& b : blocks) {
    if (b.size() != k) {
      throw DomainError("Friedman test needs blocks of equal length");
    }
  }
  StatResult r;
  r.test = "friedman";
  r.alpha = alpha;
  r.n = static_cast<int>(n);
  std::vector<std::vector<double>> ranks;
  double ties = 0;
  for (const auto& b : blocks) {
    ranks.push_back(AverageRanks(b));
    ties += TieTerm(b);
  }
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  auto statistic = [&](const std::vector<std::vector<double>>& rk) {
    double sum_sq = 0;
    for (size_t j = 0; j < k; ++j) {
      double rj = 0;
      for (size_t i = 0; i < n; ++i) rj += rk[i][j];
      sum_sq += rj * rj;
    }
    const double chi = 12.0 / (nn * kk * (kk + 1)) * sum_sq -
                       3.0 * nn * (kk + 1);
    const double correction = 1.0 - ties / (nn * (kk * kk * kk - kk));
    return correction <= 0 ? 0.0 : chi / correction;
  };
  r.statistic = statistic(ranks);
  if (ties == nn * (kk * kk * kk - kk)) r.degenerate = true;
  r.method = "chi-square";
  r.p_value = r.degenerate ? 1.0 : ChiSquareSf(r.statistic, kk - 1);

  if (k == 3 && n <= static_cast<size_t>(kFriedmanExactBlocks)) {
    // Every block independently permuted: 6^n equally likely rank tables.
    static constexpr int kPerm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    long total = 1;
    for (size_t i = 0; i < n; ++i) total *= 6;
    long at_least = 0;
    std::vector<std::vector<double>> table(n, std::vector<double>(3));
    for (long code = 0; code < total; ++code) {
      long c = code;
      for (size_t i = 0; i < n; ++i, c /= 6) {
        for (int j = 0; j < 3; ++j) table[i][j] = ranks[i][kPerm[c % 6][j]];
      }
      if (statistic(table) >= r.statistic - kEps) ++at_least;
    }
    r.exact_p_value = static_cast<double>(at_least) / total;
  }
  Finish(r);
  return r;
}

StatResult KruskalWallis(const std::vector<std::vector<double>>& groups,
                         double alpha) {
  if (groups.size() < 2) {
    throw DomainError("Kruskal-Wallis test needs at least 2 groups");
  }
  std::vector<double> pooled;
  for (const auto& g : groups) {
    if (g.empty()) throw DomainError("Kruskal-Wallis group is empty");
    pooled.insert(pooled.end(), g.begin(), g.end());
  }
  StatResult r;
  r.test = "kruskal-wallis";
  r.alpha = alpha;
  r.method = "chi-square";
  const double nn = static_cast<double>(pooled.size());
  r.n = static_cast<int>(pooled.size());
  const std::vector<double> ranks = AverageRanks(pooled);
  double h = 0;
  size_t offset = 0;
  for (const auto& g : groups) {
    double sum = 0;
    for (size_t i = 0; i < g.size(); ++i) sum += ranks[offset + i];
    offset += g.size();
    h += sum * sum / static_cast<double>(g.size());
  }
  h = 12.0 / (nn * (nn + 1)) * h - 3 * (nn + 1);
  const double correction = 1 - TieTerm(pooled) / (nn * nn * nn - nn);
  if (correction <= 0) {
    r.degenerate = true;
    r.p_value = 1;
  } else {
    r.statistic = h / correction;
    r.p_value = ChiSquareSf(r.statistic, static_cast<double>(groups.size() - 1));
  }
  Finish(r);
  return r;
}

double CliffsDelta(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) {
    throw DomainError("Cliff's delta needs two non-empty samples");
  }
  // Merge-count over sorted b: O((|a| + |b|) log |b|).
  std::vector<double> sorted = b;
  std::sort(sorted.begin(), sorted.end());
  long greater = 0, less = 0;
  for (double v : a) {
    greater += std::lower_bound(sorted.begin(), sorted.end(), v) -
               sorted.begin();
    less += sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), v);
  }
  return static_cast<double>(greater - less) /
         (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

std::string_view CliffsMagnitude(double delta) {
  const double d = std::fabs(delta);
  if (d < 0.147) return "negligible";
  if (d < 0.33) return "small";
  if (d < 0.474) return "medium";
  return "large";
}

std::vector<double> HolmAdjust(const std::vector<double>& p) {
  const size_t m = p.size();
  std::vector<size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return p[a] < p[b]; });
  std::vector<double> out(m);
  double running = 0;
  for (size_t i = 0; i < m; ++i) {
    const double adjusted = std::min(1.0, p[order[i]] * static_cast<double>(m - i));
    running = std::max(running, adjusted);
    out[order[i]] = running;
  }
  return out;
}

double Quantile(std::vector<double> values, double p) {
  if (values.empty()) throw DomainError("quantile of an empty sample");
  if (p < 0 || p > 1) throw DomainError("quantile probability outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1) * p;
  const size_t lo = static_cast<size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

double NormalQuantileTwoSided(double confidence) {
  if (!(confidence > 0 && confidence < 1)) {
    throw DomainError(fmt::format("confidence {} outside (0, 1)", confidence));
  }
  return boost::math::quantile(boost::math::normal(),
                               1 - (1 - confidence) / 2);
}

}  // namespace mlsmells
