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

#include "testing/stat_oracles.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace mlsmells::testing {
namespace {

// Equality tolerance for statistics that are sums of half-integers.
constexpr double kTol = 1e-9;

}  // namespace

double TailProbabilities::two_sided() const {
  return std::min(1.0, 2 * std::min(lower, upper));
}

std::vector<double> CountingRanks(const std::vector<double>& values) {
  std::vector<double> ranks;
  for (double v : values) {
    double smaller = 0, equal = 0;
    for (double w : values) {
      smaller += w < v;
      equal += w == v;
    }
    ranks.push_back(1 + smaller + (equal - 1) / 2);
  }
  return ranks;
}

TailProbabilities SignedRankOracle(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  std::vector<double> d, mag;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] != y[i]) {
      d.push_back(x[i] - y[i]);
      mag.push_back(std::fabs(x[i] - y[i]));
    }
  }
  const std::vector<double> r = CountingRanks(mag);
  double observed = 0;
  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 0) observed += r[i];
  }
  const uint64_t total = uint64_t{1} << d.size();
  double lower = 0, upper = 0;
  for (uint64_t m = 0; m < total; ++m) {
    double w = 0;
    for (size_t i = 0; i < d.size(); ++i) {
      if ((m >> i) & 1) w += r[i];
    }
    lower += w <= observed + kTol;
    upper += w >= observed - kTol;
  }
  return {lower / total, upper / total};
}

TailProbabilities RankSumOracle(const std::vector<double>& a,
                                const std::vector<double>& b) {
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> r = CountingRanks(pooled);
  double observed = 0;
  for (size_t i = 0; i < a.size(); ++i) observed += r[i];
  const size_t n = pooled.size();
  double lower = 0, upper = 0, count = 0;
  for (uint64_t m = 0; m < (uint64_t{1} << n); ++m) {
    if (static_cast<size_t>(__builtin_popcountll(m)) != a.size()) continue;
    double s = 0;
    for (size_t i = 0; i < n; ++i) {
      if ((m >> i) & 1) s += r[i];
    }
    lower += s <= observed + kTol;
    upper += s >= observed - kTol;
    ++count;
  }
  return {lower / count, upper / count};
}

double RankSumMonteCarlo(const std::vector<double>& a,
                         const std::vector<double>& b, int rounds,
                         uint64_t seed) {
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> r = CountingRanks(pooled);
  const double n1 = static_cast<double>(a.size());
  const double mean = n1 * (static_cast<double>(pooled.size()) + 1) / 2;
  double observed = 0;
  for (size_t i = 0; i < a.size(); ++i) observed += r[i];
  const double dev = std::fabs(observed - mean);
  std::mt19937_64 rng(seed);
  std::vector<double> shuffled = r;
  double extreme = 0;
  for (int k = 0; k < rounds; ++k) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += shuffled[i];
    extreme += std::fabs(s - mean) >= dev - kTol;
  }
  return extreme / rounds;
}

double FriedmanOracle(const std::vector<std::vector<double>>& blocks) {
  const double n = static_cast<double>(blocks.size());
  const size_t k = blocks[0].size();
  const double kk = static_cast<double>(k);
  std::vector<double> sums(k, 0);
  for (const auto& b : blocks) {
    const std::vector<double> r = CountingRanks(b);
    for (size_t j = 0; j < k; ++j) sums[j] += r[j];
  }
  // Equivalent form: 12 / (n k (k + 1)) * sum (R_j - n (k + 1) / 2)^2.
  double ss = 0;
  for (double s : sums) ss += (s - n * (kk + 1) / 2) * (s - n * (kk + 1) / 2);
  return 12.0 / (n * kk * (kk + 1)) * ss;
}

double CliffsDeltaOracle(const std::vector<double>& a,
                         const std::vector<double>& b) {
  double more = 0, less = 0;
  for (double x : a) {
    for (double y : b) {
      more += x > y;
      less += x < y;
    }
  }
  return (more - less) / (static_cast<double>(a.size()) * b.size());
}

double KappaFromTable(double yy, double yn, double ny, double nn) {
  const double total = yy + yn + ny + nn;
  const double po = (yy + nn) / total;
  const double pe = ((yy + yn) * (yy + ny) + (ny + nn) * (yn + nn)) /
                    (total * total);
  return (po - pe) / (1 - pe);
}

}  // namespace mlsmells::testing
