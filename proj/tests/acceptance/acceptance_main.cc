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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only
// when every criterion passes. Every check compares library output against
// an oracle computed here or in tests/testing.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fmt/core.h"
#include "mlsmells/analysis/agreement.h"
#include "mlsmells/analysis/sampling.h"
#include "mlsmells/analysis/segmentation.h"
#include "mlsmells/analysis/stats.h"
#include "mlsmells/cli/cli.h"
#include "mlsmells/detectors/detector.h"
#include "mlsmells/histminer/history.h"
#include "mlsmells/lifecycle/commit_detection.h"
#include "mlsmells/lifecycle/survival.h"
#include "mlsmells/lifecycle/tracker.h"
#include "testing/fixtures.h"
#include "testing/lifecycle_scenario.h"
#include "testing/pipeline_fixture.h"
#include "testing/stat_oracles.h"
#include "testing/synthetic_repo.h"

namespace mlsmells {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failures; the first few are kept for the report line.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  Outcome Done(std::string detail) const {
    if (failures_ == 0) return {true, std::move(detail)};
    return {false, fmt::format("{} failure(s): {}", failures_, notes_)};
  }

 private:
  int failures_ = 0;
  std::string notes_;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. Sampling arithmetic.
Outcome SamplingArithmetic() {
  Checker c;
  double slowest_ms = 0;
  for (auto [n, want] : std::vector<std::pair<int64_t, int64_t>>{
           {167, 117}, {169, 118}, {224, 142}}) {
    const auto start = Clock::now();
    const int64_t got = SampleSize(n, 0.95, 0.05);
    const double ms = Seconds(start) * 1000;
    slowest_ms = std::max(slowest_ms, ms);
    c.Expect(got == want, fmt::format("{} -> {} (want {})", n, got, want));
    c.Expect(ms < 1, fmt::format("{} took {:.3f} ms", n, ms));
  }
  return c.Done(fmt::format(
      "167->117, 169->118, 224->142; slowest call {:.4f} ms", slowest_ms));
}

int LineContaining(const std::string& src, const std::string& needle) {
  std::istringstream in(src);
  int n = 0;
  for (std::string line; std::getline(in, line);) {
    ++n;
    if (line.find(needle) != std::string::npos) return n;
  }
  return -1;
}

// 2. Listing 1 round trip.
Outcome ListingRoundTrip() {
  Checker c;
  const auto start = Clock::now();
  const std::string smelly =
      testing::ReadFixture("listing1/project_smelly/run_bertology.py");
  const int backward = LineContaining(smelly, ".backward()");
  const AnalyzedFile before = AnalyzeSource(
      pysource::MakeSourceFile("run_bertology.py", smelly),
      DetectorConfig::Defaults());
  c.Expect(before.instances.size() == 1,
           fmt::format("{} instances before the fix", before.instances.size()));
  if (!before.instances.empty()) {
    c.Expect(before.instances[0].kind == "gradients-not-cleared",
             "wrong kind " + before.instances[0].kind);
    c.Expect(before.instances[0].line == backward,
             fmt::format("anchored at line {}, backward() is on line {}",
                         before.instances[0].line, backward));
  }
  // Insert optimizer.zero_grad() right before backward(), same indentation.
  std::istringstream in(smelly);
  std::string fixed;
  int n = 0;
  for (std::string line; std::getline(in, line);) {
    if (++n == backward) {
      fixed += line.substr(0, line.find_first_not_of(' ')) +
               "optimizer.zero_grad()\n";
    }
    fixed += line + "\n";
  }
  const AnalyzedFile after = AnalyzeSource(
      pysource::MakeSourceFile("run_bertology.py", fixed),
      DetectorConfig::Defaults());
  c.Expect(after.instances.empty(),
           fmt::format("{} instances after the fix", after.instances.size()));
  const double s = Seconds(start);
  c.Expect(s < 1, fmt::format("took {:.3f} s", s));
  return c.Done(fmt::format(
      "1 gradients-not-cleared at backward() line {}, 0 after zero_grad(); "
      "{:.3f} s",
      backward, s));
}

// 3. Detector fixture suite; expected lines come from "# expect:" comments.
Outcome FixtureSuite() {
  Checker c;
  const auto start = Clock::now();
  static const std::regex kExpect(R"(#\s*expect:\s*(.*)$)");
  static const std::regex kItem(R"([a-z-]+)");
  std::map<std::string, std::array<int, 5>> score;  // tp fp fn pos neg
  for (const SmellKind& k : Catalog()) score[k.id] = {};
  for (const auto& dir : fs::directory_iterator(testing::FixturePath("smells"))) {
    const std::string kind = dir.path().filename().string();
    for (const auto& file : fs::directory_iterator(dir.path())) {
      const std::string src = testing::ReadFile(file.path());
      std::set<std::pair<std::string, int>> want, have;
      std::istringstream in(src);
      int line = 0;
      for (std::string text; std::getline(in, text);) {
        ++line;
        std::smatch m;
        if (!std::regex_search(text, m, kExpect)) continue;
        const std::string list = m[1];
        for (auto it = std::sregex_iterator(list.begin(), list.end(), kItem);
             it != std::sregex_iterator(); ++it) {
          want.emplace(it->str(), line);
        }
      }
      const bool positive = file.path().stem().string().starts_with("pos");
      ++score[kind][positive ? 3 : 4];
      const AnalyzedFile got = AnalyzeSource(
          pysource::MakeSourceFile(file.path().string(), src),
          DetectorConfig::Defaults());
      for (const SmellInstance& i : got.instances) have.emplace(i.kind, i.line);
      for (const auto& kl : have) ++score[kl.first][want.contains(kl) ? 0 : 1];
      for (const auto& kl : want) {
        if (!have.contains(kl)) ++score[kl.first][2];
      }
    }
  }
  int files = 0;
  for (const auto& [kind, s] : score) {
    files += s[3] + s[4];
    c.Expect(s[3] >= 3 && s[4] >= 2,
             fmt::format("{}: {} positive / {} negative files", kind, s[3],
                         s[4]));
    c.Expect(s[1] == 0 && s[2] == 0 && s[0] > 0,
             fmt::format("{}: tp {} fp {} fn {}", kind, s[0], s[1], s[2]));
  }
  const double secs = Seconds(start);
  c.Expect(secs < 10, fmt::format("took {:.2f} s", secs));
  return c.Done(fmt::format(
      "{} kinds, {} files, precision = recall = 1.0 for every kind; {:.2f} s",
      score.size(), files, secs));
}

// 4. Lifecycle oracle on 20 scripted repositories.
Outcome LifecycleOracle() {
  Checker c;
  const auto start = Clock::now();
  int errors = 0, rows = 0, censored = 0;
  for (int i = 0; i < 20; ++i) {
    const testing::TempDir tmp;
    testing::RepoBuilder repo(tmp.path());
    const int commits = 10 + i * 40 / 19;
    const auto scenario =
        testing::BuildLifecycleScenario(repo, 1000 + i, commits);
    const History h = WalkHistory(tmp.path());
    const Lifecycle lc =
        FindTransitions(h, DetectCommits(tmp.path(), h,
                                         DetectorConfig::Defaults()));
    const CensoringResult cr =
        ApplyCensoring(lc.records, h.commits.back().timestamp);
    std::multiset<testing::ExpectedRow> got;
    for (const LifecycleRecord& r : cr.records) {
      got.insert({r.kind, r.introducing_sha, r.removing_sha,
                  std::string(RemovalModeName(r.removal_mode)),
                  r.lifespan_commits});
    }
    const auto want = testing::ExpectedLifecycleRows(scenario, repo);
    std::multiset<testing::ExpectedRow> expected(want.begin(), want.end());
    std::vector<testing::ExpectedRow> diff;
    std::set_symmetric_difference(got.begin(), got.end(), expected.begin(),
                                  expected.end(), std::back_inserter(diff));
    errors += static_cast<int>(diff.size());
    rows += static_cast<int>(want.size());
    for (const auto& r : want) censored += r.removal_mode == "censored";
    c.Expect(diff.empty(), fmt::format("repo {} ({} commits): {} mismatched "
                                       "rows",
                                       i, commits, diff.size()));
  }
  const double secs = Seconds(start);
  c.Expect(secs < 120, fmt::format("took {:.1f} s", secs));
  return c.Done(fmt::format(
      "20 repos (10-50 commits), {} records incl. {} censored, {} errors; "
      "{:.1f} s",
      rows, censored, errors, secs));
}

// 5. Statistics against exhaustive oracles.
Outcome Statistics() {
  Checker c;
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> value(0, 9);
  auto sample = [&](size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = value(rng);
    return v;
  };
  double worst_p = 0;
  int exact_cases = 0;
  for (int n = 1; n <= 10; ++n) {
    for (int t = 0; t < 30; ++t) {
      const auto x = sample(n), y = sample(n);
      const StatResult r = WilcoxonSignedRank(x, y);
      if (!r.degenerate) {
        c.Expect(r.method == "exact", "signed-rank left the exact path");
        worst_p = std::max(worst_p, std::fabs(r.p_value -
                                              testing::SignedRankOracle(x, y)
                                                  .two_sided()));
        ++exact_cases;
      }
      // Sizes stay inside the exact region (|a| + |b| <= 12).
      const size_t na = 1 + t % n;
      const auto a = sample(na), b = sample(1 + (n + t) % (12 - na));
      const StatResult u = WilcoxonRankSum(a, b);
      c.Expect(u.method == "exact", "rank-sum left the exact path");
      worst_p = std::max(worst_p,
                         std::fabs(u.p_value -
                                   testing::RankSumOracle(a, b).two_sided()));
      ++exact_cases;
    }
  }
  c.Expect(worst_p <= 1e-9, fmt::format("exact p off by {:.3g}", worst_p));
  double worst_f = 0;
  for (int t = 0; t < 100; ++t) {
    const size_t k = 3 + t % 4, n = 2 + t % 9;
    std::vector<std::vector<double>> blocks(n);
    for (auto& b : blocks) {
      for (size_t j = 0; j < k; ++j) b.push_back(static_cast<double>(j));
      std::shuffle(b.begin(), b.end(), rng);
    }
    worst_f = std::max(worst_f, std::fabs(Friedman(blocks).statistic -
                                          testing::FriedmanOracle(blocks)));
  }
  c.Expect(worst_f <= 1e-9, fmt::format("Friedman off by {:.3g}", worst_f));
  c.Expect(CliffsDelta({1, 2, 3}, {2, 3, 4}) == -5.0 / 9,
           "delta([1,2,3],[2,3,4]) != -5/9");
  int delta_mismatch = 0;
  for (int t = 0; t < 100; ++t) {
    const auto a = sample(1 + t % 12), b = sample(1 + t % 7);
    delta_mismatch += CliffsDelta(a, b) != testing::CliffsDeltaOracle(a, b);
  }
  c.Expect(delta_mismatch == 0,
           fmt::format("{} Cliff's delta mismatches", delta_mismatch));
  const double secs = Seconds(start);
  c.Expect(secs < 60, fmt::format("took {:.1f} s", secs));
  return c.Done(fmt::format(
      "{} exact rank tests max |dp| {:.1g}; Friedman max |dchi2| {:.1g}; "
      "100 Cliff's delta cases exact; {:.2f} s",
      exact_cases, worst_p, worst_f, secs));
}

ValidationSheet Column(const std::vector<bool>& cells) {
  std::vector<std::string> files;
  for (size_t i = 0; i < cells.size(); ++i) files.push_back(fmt::format("f{}", i));
  ValidationSheet s = EmptySheet(files, {"chain-indexing"});
  for (size_t i = 0; i < cells.size(); ++i) s.cells[i][0] = cells[i];
  return s;
}

// 6. Cohen's kappa and majority vote.
Outcome Agreement() {
  Checker c;
  const ValidationSheet mixed = Column({true, false, false, true, true});
  c.Expect(CohenKappa(mixed, mixed).kappa == 1.0, "identical sheets != 1");
  std::vector<bool> a, b;
  auto add = [&](int n, bool x, bool y) {
    for (int i = 0; i < n; ++i) {
      a.push_back(x);
      b.push_back(y);
    }
  };
  add(45, true, true);
  add(5, true, false);
  add(5, false, true);
  add(15, false, false);
  const double kappa = CohenKappa(Column(a), Column(b)).kappa;
  const double hand = testing::KappaFromTable(45, 5, 5, 15);
  c.Expect(std::fabs(kappa - hand) <= 1e-12,
           fmt::format("kappa {} vs hand {}", kappa, hand));
  int tie_checks = 0;
  for (bool x : {false, true}) {
    for (bool y : {false, true}) {
      const MajorityResult m = MajorityVote({Column({x}), Column({y})});
      const bool split = x != y;
      c.Expect(m.truth.cells[0][0] == (x && y),
               fmt::format("majority of {}/{}", x, y));
      c.Expect(m.ties.size() == (split ? 1u : 0u),
               fmt::format("tie flag for {}/{}", x, y));
      ++tie_checks;
    }
  }
  return c.Done(fmt::format(
      "identical -> 1.0; 45/5/5/15 table -> {:.12f} (hand {:.12f}); {} "
      "two-rater splits",
      kappa, hand, tie_checks));
}

// 7. Segmentation of a 100-commit timeline with a release tag.
Outcome Segmentation() {
  Checker c;
  const testing::TempDir tmp;
  testing::RepoBuilder repo(tmp.path());
  std::mt19937 rng(7);
  int64_t t = 1577836800;
  for (int i = 0; i < 100; ++i) {
    repo.Write("m.py", fmt::format("x = {}\n", i));
    t += 3600 * (1 + static_cast<int>(rng() % (24 * 9)));
    repo.Commit(fmt::format("c{}", i), t);
  }
  repo.Tag("v1.0", 64, true);
  HistoryOptions opts;
  const History h = WalkHistory(tmp.path(), opts);
  const std::vector<SegmentLabel> labels = SegmentHistory(h.commits);
  c.Expect(h.commits.size() == 100, "history size");
  c.Expect(labels.size() == h.commits.size(), "one label per commit");
  const int64_t day = 86400;
  std::array<std::map<int, int>, 3> axes;
  for (size_t i = 0; i < labels.size(); ++i) {
    const CommitRecord& r = h.commits[i];
    // Oracle: count the bucket bounds each quantity exceeds.
    auto bucket = [](double v, std::initializer_list<double> bounds) {
      int k = 0;
      for (double b : bounds) k += v > b;
      return k;
    };
    const int dev = bucket(static_cast<double>(r.timestamp - h.commits[0].timestamp),
                           {7.0 * day, 30.0 * day, 365.0 * day});
    const int act = bucket(100.0 * (static_cast<double>(i) + 0.5) / 100,
                           {10, 20, 50});
    int rel = 3;
    if (i <= 64) {
      rel = bucket(static_cast<double>(h.commits[64].timestamp - r.timestamp),
                   {1.0 * day, 7.0 * day, 30.0 * day});
    }
    c.Expect(static_cast<int>(labels[i].development_time) == dev,
             fmt::format("commit {} development time", i));
    c.Expect(static_cast<int>(labels[i].activity_level) == act,
             fmt::format("commit {} activity", i));
    c.Expect(static_cast<int>(labels[i].release_distance) == rel,
             fmt::format("commit {} release distance", i));
    ++axes[0][static_cast<int>(labels[i].development_time)];
    ++axes[1][static_cast<int>(labels[i].activity_level)];
    ++axes[2][static_cast<int>(labels[i].release_distance)];
  }
  std::string sizes;
  for (const auto& axis : axes) {
    int total = 0;
    for (const auto& [bucket, n] : axis) total += n;
    c.Expect(total == 100, "axis does not partition the commits");
    sizes += fmt::format("{}{}", sizes.empty() ? "" : ", ", axis.size());
  }
  c.Expect(h.commits[64].is_release, "release tag not detected");
  return c.Done(fmt::format(
      "100 commits labelled once per axis; buckets used per axis: {}", sizes));
}

std::map<std::string, std::string> Tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      files[fs::relative(e.path(), root).generic_string()] =
          testing::ReadFile(e.path());
    }
  }
  return files;
}

// 8. Determinism of mine -> lifecycle -> analyze on the bundled fixture.
Outcome Determinism() {
  Checker c;
  const auto start = Clock::now();
  std::vector<std::map<std::string, std::string>> runs;
  for (int run = 0; run < 2; ++run) {
    const testing::TempDir tmp;
    const fs::path root = testing::MaterializePipelineFixture(tmp.path());
    const std::string manifest = (root / "manifest.csv").string();
    const std::string art = (root / "out/artifacts").string();
    std::ostringstream out, err;
    c.Expect(RunCli({"mine", "--manifest", manifest, "-o", art}, out, err) ==
                 kExitOk,
             "mine failed");
    c.Expect(RunCli({"lifecycle", "--manifest", manifest, "-o", art}, out,
                    err) == kExitOk,
             "lifecycle failed");
    c.Expect(RunCli({"analyze", art, (root / "catalog.csv").string(), "-o",
                     (root / "out/results").string()},
                    out, err) == kExitOk,
             "analyze failed: " + err.str());
    runs.push_back(Tree(root / "out"));
  }
  c.Expect(runs[0] == runs[1], "output trees differ");
  c.Expect(runs[0].contains("results/analysis.json"), "no analysis.json");
  size_t bytes = 0;
  for (const auto& [path, content] : runs[0]) bytes += content.size();
  const double secs = Seconds(start);
  c.Expect(secs < 300, fmt::format("took {:.1f} s", secs));
  return c.Done(fmt::format(
      "2 runs, {} files / {} bytes byte-identical; {:.1f} s for both",
      runs[0].size(), bytes, secs));
}

}  // namespace
}  // namespace mlsmells

int main() {
  using mlsmells::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>>
      criteria = {
          {"sampling arithmetic", mlsmells::SamplingArithmetic},
          {"Listing 1 round trip", mlsmells::ListingRoundTrip},
          {"detector fixture suite", mlsmells::FixtureSuite},
          {"lifecycle oracle", mlsmells::LifecycleOracle},
          {"statistics vs exhaustive oracles", mlsmells::Statistics},
          {"Cohen's kappa and majority vote", mlsmells::Agreement},
          {"segmentation partitions", mlsmells::Segmentation},
          {"end-to-end determinism", mlsmells::Determinism},
      };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << fmt::format("{} criterion {}: {}: {}\n",
                             o.pass ? "PASS" : "FAIL", i + 1,
                             criteria[i].first, o.detail)
              << std::flush;
  }
  std::cout << fmt::format("{}/{} criteria passed\n",
                           criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
