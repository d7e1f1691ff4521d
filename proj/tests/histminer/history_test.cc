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

#include "mlsmells/histminer/history.h"

#include <algorithm>
#include <random>

#include "fmt/core.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "mlsmells/util/errors.h"
#include "testing/fixtures.h"
#include "testing/synthetic_repo.h"

namespace mlsmells {
namespace {

using ::mlsmells::testing::RepoBuilder;
using ::mlsmells::testing::TempDir;
using ::testing::ElementsAre;
using ::testing::IsEmpty;

std::vector<int> Totals(const History& h) {
  std::vector<int> out;
  for (const auto& c : h.commits) out.push_back(c.files_total);
  return out;
}

TEST(WalkHistoryTest, ThreeCommitsAddingOneFileEach) {
  TempDir tmp;
  RepoBuilder repo(tmp.path());
  repo.Write("a.py", "a = 1\n").Commit("one");
  repo.Write("b.py", "b = 1\n").Commit("two");
  repo.Write("c.py", "c = 1\n").Commit("three");
  const History h = WalkHistory(tmp.path());
  ASSERT_EQ(h.commits.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(h.commits[i].ordinal, i);
    EXPECT_EQ(h.commits[i].files_added, 1);
    EXPECT_EQ(h.commits[i].files_removed, 0);
    EXPECT_EQ(h.commits[i].sha, repo.Sha(i));
    EXPECT_EQ(h.commits[i].timestamp, repo.TimestampAt(i));
  }
  EXPECT_THAT(Totals(h), ElementsAre(1, 2, 3));
  EXPECT_THAT(h.commits[0].parents, IsEmpty());
  EXPECT_THAT(h.commits[1].parents, ElementsAre(repo.Sha(0)));
  EXPECT_EQ(h.commits[1].message, "two");
}

TEST(WalkHistoryTest, EditOnlyCommitCountsNothing) {
  TempDir tmp;
  RepoBuilder repo(tmp.path());
  repo.Write("a.py", "a = 1\n").Commit("one");
  repo.Write("a.py", "a = 2\n").Commit("edit");
  const History h = WalkHistory(tmp.path());
  ASSERT_EQ(h.commits.size(), 2u);
  EXPECT_EQ(h.commits[1].files_added, 0);
  EXPECT_EQ(h.commits[1].files_removed, 0);
  EXPECT_EQ(h.commits[1].files_total, 1);
  EXPECT_THAT(h.changes[1], ElementsAre(FileChange{'M', "a.py", ""}));
}

TEST(WalkHistoryTest, EmptyAndMultilineMessages) {
  TempDir tmp;
  RepoBuilder repo(tmp.path());
  repo.Write("a.py", "a = 1\n").Commit("");
  repo.Write("b.py", "b = 1\n").Commit("subject\n\nbody, with \"quotes\"\n");
  const History h = WalkHistory(tmp.path());
  EXPECT_EQ(h.commits[0].message, "");
  EXPECT_EQ(h.commits[1].message, "subject\n\nbody, with \"quotes\"");
}

TEST(WalkHistoryTest, MissingOrEmptyRepository) {
  TempDir tmp;
  EXPECT_THROW(WalkHistory(tmp / "nope"), RepoError);
  EXPECT_THROW(WalkHistory(tmp.path()), RepoError);
  RepoBuilder repo(tmp / "empty");
  EXPECT_THROW(WalkHistory(tmp / "empty"), RepoError);
}

TEST(WalkHistoryTest, FollowsFirstParentOnly) {
  TempDir tmp;
  RepoBuilder repo(tmp.path());
  repo.Write("a.py", "a\n").Commit("root");
  repo.Checkout("side");
  repo.Write("s1.py", "s1\n").Commit("side 1");
  repo.Write("s2.py", "s2\n").Commit("side 2");
  repo.Checkout("main");
  repo.Write("m.py", "m\n").Commit("main 1");
  const int merge = repo.Merge("side", "merge side");
  const History h = WalkHistory(tmp.path());
  ASSERT_EQ(h.commits.size(), 3u);
  EXPECT_EQ(h.commits[2].sha, repo.Sha(merge));
  EXPECT_EQ(h.commits[2].parents.size(), 2u);
  // The merge diff is taken against the first parent.
  EXPECT_EQ(h.commits[2].files_added, 2);
  EXPECT_EQ(h.commits[2].files_total, 4);
}

TEST(WalkHistoryTest, ClockSkewTolerated) {
  TempDir tmp;
  RepoBuilder repo(tmp.path());
  repo.Write("a.py", "a\n").Commit("late", 1700000000);
  repo.Write("b.py", "b\n").Commit("early", 1600000000);
  const History h = WalkHistory(tmp.path());
  EXPECT_EQ(h.commits[0].timestamp, 1700000000);
  EXPECT_EQ(h.commits[1].timestamp, 1600000000);
  EXPECT_EQ(h.commits[1].ordinal, 1);
}

// Random add/delete/rename/edit scripts; the accounting identity and the
// builder's trees are the oracle.
TEST(WalkHistoryTest, AccountingIdentityOnRandomHistories) {
  for (int seed = 0; seed < 8; ++seed) {
    TempDir tmp;
    RepoBuilder repo(tmp.path());
    std::mt19937 rng(seed);
    int next_file = 0;
    for (int c = 0; c < 15; ++c) {
      const int op = c == 0 ? 0 : static_cast<int>(rng() % 4);
      std::vector<std::string> paths;
      for (const auto& [p, _] : repo.tree()) paths.push_back(p);
      if (op == 0 || paths.empty()) {
        const int n = next_file++;
        repo.Write(fmt::format("f{}.py", n),
                   fmt::format("value_{} = {}\n# padding line\n", n, n));
      } else {
        const std::string& p = paths[rng() % paths.size()];
        if (op == 1) {
          repo.Remove(p);
        } else if (op == 2) {
          repo.Rename(p, fmt::format("r{}_{}", c, p));
        } else {
          repo.Write(p, repo.tree().at(p) + "x = 1\n");
        }
      }
      repo.Commit(fmt::format("c{}", c));
    }
    const History h = WalkHistory(tmp.path());
    ASSERT_EQ(h.commits.size(), 15u);
    int sum = 0;
    for (size_t i = 0; i < h.commits.size(); ++i) {
      sum += h.commits[i].files_added - h.commits[i].files_removed;
      EXPECT_EQ(h.commits[i].files_total,
                static_cast<int>(repo.TreeAt(static_cast<int>(i)).size()))
          << "seed " << seed << " commit " << i;
    }
    EXPECT_EQ(sum, h.commits.back().files_total);
  }
}

TEST(WalkHistoryTest, DeterministicSerialization) {
  TempDir tmp;
  RepoBuilder repo(tmp.path());
  repo.Write("a.py", "a\n").Commit("one, \"two\"\nthree");
  repo.Write("b.py", "b\n").Commit("four");
  repo.Tag("v1", 1);
  const std::string first = CommitsToCsv(WalkHistory(tmp.path()).commits);
  const std::string second = CommitsToCsv(WalkHistory(tmp.path()).commits);
  EXPECT_EQ(first, second);
}

TEST(DetectReleasesTest, Examples) {
  TempDir tmp;
  RepoBuilder repo(tmp.path());
  repo.Write("a.py", "a\n").Commit("A");
  repo.Write("b.py", "b\n").Commit("B");
  repo.Write("c.py", "c\n").Commit("C");
  EXPECT_THAT(DetectReleases(tmp.path()), IsEmpty());

  repo.Tag("v1.0", 1).Tag("stable", 1, /*annotated=*/true);
  repo.Tag("nightly", 2, /*annotated=*/true);
  EXPECT_EQ(DetectReleases(tmp.path()),
            (std::set<std::string>{repo.Sha(1), repo.Sha(2)}));
  EXPECT_EQ(DetectReleases(tmp.path(), "^v[0-9]"),
            std::set<std::string>{repo.Sha(1)});
  EXPECT_EQ(DetectReleases(tmp.path(), "^nightly$"),
            std::set<std::string>{repo.Sha(2)});
  EXPECT_THROW(DetectReleases(tmp.path(), "("), FormatError);

  const History h = WalkHistory(tmp.path());
  EXPECT_FALSE(h.commits[0].is_release);
  EXPECT_TRUE(h.commits[1].is_release);
  EXPECT_TRUE(h.commits[2].is_release);
}

TEST(FileIdentityTest, RenameKeepsId) {
  TempDir tmp;
  RepoBuilder repo(tmp.path());
  repo.Write("a.py", "import torch\nx = torch.zeros(3)\n").Commit("c1");
  repo.Rename("a.py", "b.py").Commit("c2");
  const FileIdentityMap ids = TrackFileIdentity(WalkHistory(tmp.path()));
  ASSERT_EQ(ids.size(), 1u);
  EXPECT_THAT(ids.at("f1"), ElementsAre(FileAlias{repo.Sha(0), "a.py"},
                                        FileAlias{repo.Sha(1), "b.py"}));
}

TEST(FileIdentityTest, DeleteAndUnrelatedAddGetTwoIds) {
  TempDir tmp;
  RepoBuilder repo(tmp.path());
  repo.Write("a.py", "import torch\nx = torch.zeros(3)\n").Commit("c1");
  repo.Remove("a.py")
      .Write("b.py", "def unrelated():\n    return [i for i in range(9)]\n")
      .Commit("c2");
  const FileIdentityMap ids = TrackFileIdentity(WalkHistory(tmp.path()));
  EXPECT_EQ(ids.size(), 2u);
  EXPECT_THAT(ids.at("f1"), ElementsAre(FileAlias{repo.Sha(0), "a.py"}));
  EXPECT_THAT(ids.at("f2"), ElementsAre(FileAlias{repo.Sha(1), "b.py"}));
}

TEST(FileIdentityTest, EditInPlaceKeepsOneAlias) {
  TempDir tmp;
  RepoBuilder repo(tmp.path());
  repo.Write("a.py", "a = 1\n").Commit("c1");
  repo.Write("a.py", "a = 2\n").Commit("c2");
  const FileIdentityMap ids = TrackFileIdentity(WalkHistory(tmp.path()));
  ASSERT_EQ(ids.size(), 1u);
  EXPECT_EQ(ids.at("f1").size(), 1u);
}

TEST(FileIdentityTest, RenameOntoFreedPathNeverMerges) {
  FileIdentityTracker t;
  t.ApplyCommit("c1", {{'A', "a.py", ""}, {'A', "b.py", ""}});
  // b.py is replaced by a.py's content while a new a.py appears.
  const auto step =
      t.ApplyCommit("c2", {{'D', "b.py", ""}, {'R', "b.py", "a.py"},
                           {'A', "a.py", ""}});
  EXPECT_THAT(step.deleted, ElementsAre("f2"));
  EXPECT_EQ(t.IdOf("b.py"), "f1");
  EXPECT_EQ(t.IdOf("a.py"), "f3");
  // At any commit an id has one live path.
  std::set<std::string> seen;
  for (const auto& [path, id] : t.live()) EXPECT_TRUE(seen.insert(id).second);
}

TEST(FileIdentityTest, PrefixStable) {
  TempDir tmp;
  RepoBuilder repo(tmp.path());
  repo.Write("a.py", "alpha = 1\nbeta = 2\ngamma = 3\n").Commit("c1");
  repo.Write("b.py", "delta = 4\nepsilon = 5\n").Commit("c2");
  repo.Rename("a.py", "pkg/a.py").Commit("c3");
  const FileIdentityMap before = TrackFileIdentity(WalkHistory(tmp.path()));
  repo.Write("c.py", "zeta = 6\n").Remove("b.py").Commit("c4");
  repo.Rename("pkg/a.py", "a2.py").Commit("c5");
  const FileIdentityMap after = TrackFileIdentity(WalkHistory(tmp.path()));
  for (const auto& [id, aliases] : before) {
    ASSERT_TRUE(after.contains(id));
    const auto& longer = after.at(id);
    ASSERT_GE(longer.size(), aliases.size());
    EXPECT_TRUE(std::equal(aliases.begin(), aliases.end(), longer.begin()));
  }
  EXPECT_EQ(TrackFileIdentity(WalkHistory(tmp.path())), after);
}

TEST(TimestampTest, FormatAndParse) {
  EXPECT_EQ(FormatTimestamp(0), "1970-01-01T00:00:00Z");
  EXPECT_EQ(FormatTimestamp(1577836800), "2020-01-01T00:00:00Z");
  EXPECT_EQ(ParseTimestamp("2020-01-01T00:00:00Z"), 1577836800);
  for (int64_t t : {int64_t{1}, int64_t{951782400}, int64_t{1700000123}}) {
    EXPECT_EQ(ParseTimestamp(FormatTimestamp(t)), t);
  }
  EXPECT_THROW(ParseTimestamp("2020-01-01 00:00:00"), FormatError);
}

TEST(CommitsCsvTest, RoundTripAndColumns) {
  CommitRecord a{"aaa", {}, 1577836800, "fix, \"quoted\"\nline two\t\\", 1, 1,
                 0, 0, true};
  CommitRecord b{"bbb", {"aaa", "ccc"}, 1577923200, "", 1, 0, 0, 1, false};
  const std::string csv = CommitsToCsv({a, b});
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "sha,parents,timestamp,ordinal,files_total,files_added,"
            "files_removed,is_release,message");
  EXPECT_NE(csv.find("bbb,aaa ccc,2020-01-02T00:00:00Z,1,1,0,0,false,\"\"\"\"\"\""),
            std::string::npos);
  // The JSON-escaped message keeps each record on one physical line.
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_THAT(CommitsFromCsv(csv), ElementsAre(a, b));
  EXPECT_THROW(CommitsFromCsv("sha\nx\n"), FormatError);
}

}  // namespace
}  // namespace mlsmells
