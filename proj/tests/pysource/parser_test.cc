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

#include "mlsmells/pysource/parser.h"

#include <algorithm>
#include <string>
#include <vector>

#include "fmt/core.h"
#include "gtest/gtest.h"
#include "mlsmells/util/process.h"
#include "testing/fixtures.h"
#include "testing/program_gen.h"

namespace mlsmells::pysource {
namespace {

using testing::MustParse;

std::vector<NodeId> OfKind(const SyntaxTree& tree, NodeKind kind) {
  std::vector<NodeId> out;
  for (size_t i = 0; i < tree.size(); ++i) {
    if (tree.kind(static_cast<NodeId>(i)) == kind) {
      out.push_back(static_cast<NodeId>(i));
    }
  }
  return out;
}

TEST(ParseSourceTest, MinimalProgram) {
  SyntaxTree tree = MustParse("x = 1\n");
  auto stmts = tree.children(tree.root());
  ASSERT_EQ(stmts.size(), 1u);
  EXPECT_EQ(tree.kind(stmts[0]), NodeKind::kAssign);
  EXPECT_EQ(tree.node(stmts[0]).span.line, 1);
}

TEST(ParseSourceTest, MalformedDef) {
  auto result = ParseSource("def f(:");
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(result.error().line, 1);
  EXPECT_FALSE(result.error().message.empty());
}

TEST(ParseSourceTest, ErrorLineIsReported) {
  auto result = ParseSource("x = 1\ny = (\nz = ]\n");
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(result.error().line, 3);
}

TEST(ParseSourceTest, BadIndentation) {
  EXPECT_FALSE(ParseSource("if x:\n    a = 1\n  b = 2\n").ok());
  EXPECT_FALSE(ParseSource("    x = 1\n").ok());
}

TEST(ParseSourceTest, ListingOneLoopEnclosesBackward) {
  SyntaxTree tree = MustParse(testing::ReadFixture("listing1/body_fixed.py"));
  NodeId call = testing::FindNode(tree, NodeKind::kCall, "loss.backward()");
  ASSERT_NE(call, kNoNode);
  EXPECT_EQ(tree.node(call).span.line, 11);
  NodeId loop = kNoNode;
  for (NodeId p = tree.parent(call); p != kNoNode; p = tree.parent(p)) {
    if (IsLoop(tree, p)) {
      loop = p;
      break;
    }
  }
  ASSERT_NE(loop, kNoNode);
  EXPECT_EQ(tree.kind(loop), NodeKind::kFor);
  EXPECT_EQ(tree.node(loop).span.line, 1);
}

TEST(ParseSourceTest, CoversCommonSyntax) {
  const char* src =
      "@dec(1)\n"
      "async def f(a, /, b: int = 2, *args, c, **kw) -> None:\n"
      "    async with x as (p, q), y:\n"
      "        await g(*a, **k)\n"
      "    return [i async for i in h() if i]\n"
      "class K(Base, metaclass=M):\n"
      "    z: int = 3\n"
      "    def m(self):\n"
      "        yield from self.it\n"
      "try:\n"
      "    pass\n"
      "except (A, B) as e:\n"
      "    raise C from e\n"
      "else:\n"
      "    del a[1:2, ::3]\n"
      "finally:\n"
      "    global gg\n"
      "if (n := 10) > 5 and not q or r is not None:\n"
      "    s = f'{a!r:>{w}}' b'x' if t else {**d, 'k': v}\n"
      "elif x in y:\n"
      "    lam = lambda *a, k=1: (a, k)\n"
      "while 1 < x <= 3:\n"
      "    x @= m; x **= 2\n"
      "    break\n"
      "else:\n"
      "    assert x, 'msg'\n"
      "from .. import (a as b,\n"
      "    c)\n"
      "t = 1, 2\n"
      "u = {1, 2}, {k: v for k, v in w.items()}, (x for x in y)\n"
      "v = 0x1F + 1_000 + 1e-3j + ...\n";
  auto result = ParseSource(src);
  ASSERT_TRUE(result.ok()) << result.error().line << ": "
                           << result.error().message;
}

TEST(ParseSourceTest, LineContinuationAndBrackets) {
  SyntaxTree tree = MustParse("x = 1 + \\\n    2\ny = [\n  1,\n  2,\n]\n");
  auto stmts = tree.children(tree.root());
  ASSERT_EQ(stmts.size(), 2u);
  EXPECT_EQ(tree.node(stmts[1]).span.line, 3);
  EXPECT_EQ(tree.node(stmts[1]).span.end_line, 6);
}

// Structural checks that hold for every node of every tree.
void CheckSpans(const SyntaxTree& tree) {
  const std::string_view src = tree.source();
  for (size_t i = 0; i < tree.size(); ++i) {
    const auto id = static_cast<NodeId>(i);
    const Span& s = tree.node(id).span;
    ASSERT_LE(s.begin, s.end);
    ASSERT_LE(s.end, src.size());
    ASSERT_GE(s.line, 1);
    ASSERT_LE(s.line, s.end_line);
    // Line numbers agree with the byte offsets.
    const int line = 1 + static_cast<int>(std::count(
                             src.begin(), src.begin() + s.begin, '\n'));
    ASSERT_EQ(s.line, line) << NodeKindName(tree.kind(id));
    // The node's text sits on its recorded first line.
    const std::string_view text = tree.Text(id);
    ASSERT_EQ(text, src.substr(s.begin, s.end - s.begin));
    if (!text.empty() && tree.kind(id) != NodeKind::kModule) {
      const std::string_view first = text.substr(0, text.find('\n'));
      ASSERT_NE(tree.Line(s.line).find(first), std::string_view::npos);
    }
    for (NodeId c : tree.children(id)) {
      ASSERT_EQ(tree.parent(c), id);
      const Span& cs = tree.node(c).span;
      ASSERT_GE(cs.begin, s.begin) << NodeKindName(tree.kind(c));
      ASSERT_LE(cs.end, s.end) << NodeKindName(tree.kind(c));
    }
  }
}

TEST(ParsePropertyTest, DeterministicAndNested) {
  for (uint32_t seed = 1; seed <= 300; ++seed) {
    const std::string program = testing::RandomProgram(seed);
    auto a = ParseSource(program);
    ASSERT_TRUE(a.ok()) << "seed " << seed << " line " << a.error().line
                        << ": " << a.error().message << "\n"
                        << program;
    auto b = ParseSource(program);
    ASSERT_TRUE(b.ok());
    ASSERT_TRUE(*a == *b) << "seed " << seed;
    CheckSpans(*a);
  }
}

TEST(ParsePropertyTest, FixtureSpansNest) {
  for (const char* f : {"listing1/body_fixed.py", "listing1/body_smelly.py"}) {
    CheckSpans(MustParse(testing::ReadFixture(f)));
  }
}

// CPython's own parser is the oracle for expression positions.
constexpr char kAstDump[] = R"(
import ast, sys
src = open(sys.argv[1], 'rb').read()
for node in ast.walk(ast.parse(src)):
    k = type(node).__name__
    if k in ('Name', 'Call', 'Attribute', 'Subscript'):
        print(k, node.lineno, node.col_offset, node.end_lineno,
              node.end_col_offset)
)";

std::vector<std::string> OracleSpans(const std::string& program) {
  testing::TempDir dir;
  testing::WriteFile(dir / "dump.py", kAstDump);
  testing::WriteFile(dir / "prog.py", program);
  ProcessResult r = RunProcess(
      {"python3", (dir / "dump.py").string(), (dir / "prog.py").string()});
  EXPECT_EQ(r.exit_code, 0) << r.err;
  std::vector<std::string> out;
  size_t start = 0;
  while (start < r.out.size()) {
    size_t nl = r.out.find('\n', start);
    if (nl == std::string::npos) nl = r.out.size();
    if (nl > start) out.push_back(r.out.substr(start, nl - start));
    start = nl + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> OurSpans(const SyntaxTree& tree) {
  std::vector<std::string> out;
  for (NodeKind k : {NodeKind::kName, NodeKind::kCall, NodeKind::kAttribute,
                     NodeKind::kSubscript}) {
    for (NodeId id : OfKind(tree, k)) {
      const Span& s = tree.node(id).span;
      out.push_back(fmt::format("{} {} {} {} {}", NodeKindName(k), s.line,
                                s.col, s.end_line, s.end_col));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(ParseOracleTest, MatchesCPythonPositions) {
  std::string corpus;
  for (uint32_t seed = 1000; seed < 1040; ++seed) {
    corpus += testing::RandomProgram(seed, 6);
  }
  corpus += testing::ReadFixture("listing1/body_fixed.py");
  SyntaxTree tree = MustParse(corpus);
  EXPECT_EQ(OurSpans(tree), OracleSpans(corpus));
}

}  // namespace
}  // namespace mlsmells::pysource
