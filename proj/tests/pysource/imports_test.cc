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

#include "mlsmells/pysource/imports.h"

#include "gtest/gtest.h"
#include "testing/fixtures.h"

namespace mlsmells::pysource {
namespace {

using testing::MustParse;

ImportTable Imports(std::string_view src) {
  return ResolveImports(MustParse(src));
}

TEST(ResolveImportsTest, AliasForm) {
  ImportTable t = Imports("import pandas as pd\n");
  EXPECT_EQ(t.aliases.at("pd"), "pandas");
  EXPECT_TRUE(t.roots.contains("pandas"));
}

TEST(ResolveImportsTest, FromImportForm) {
  ImportTable t = Imports("from torch import optim\n");
  EXPECT_EQ(t.aliases.at("optim"), "torch.optim");
  EXPECT_TRUE(t.roots.contains("torch"));
}

TEST(ResolveImportsTest, FromImportWithAlias) {
  ImportTable t = Imports("import torch.nn.functional as F\n");
  EXPECT_EQ(t.aliases.at("F"), "torch.nn.functional");
}

TEST(ResolveImportsTest, PlainDottedImportBindsHead) {
  ImportTable t = Imports("import torch.nn\n");
  EXPECT_EQ(t.aliases.at("torch"), "torch");
  EXPECT_EQ(t.Resolve("torch.nn.Linear"), "torch.nn.Linear");
}

TEST(ResolveImportsTest, StarImportRecordsOnlyRoot) {
  ImportTable t = Imports("from numpy import *\n");
  EXPECT_TRUE(t.aliases.empty());
  EXPECT_EQ(t.roots, (std::set<std::string, std::less<>>{"numpy"}));
}

TEST(ResolveImportsTest, RelativeImportHasNoRoot) {
  ImportTable t = Imports("from .utils import load\n");
  EXPECT_TRUE(t.roots.empty());
  EXPECT_EQ(t.aliases.at("load"), ".utils.load");
}

TEST(ResolveImportsTest, RootsAreLowercase) {
  ImportTable t = Imports("import PIL.Image\n");
  EXPECT_TRUE(t.roots.contains("pil"));
}

TEST(ResolveImportsTest, NestedImportsAreSeen) {
  ImportTable t = Imports("def f():\n    import tensorflow as tf\n");
  EXPECT_EQ(t.aliases.at("tf"), "tensorflow");
}

TEST(ResolveImportsTest, EmptyFile) { EXPECT_TRUE(Imports("").empty()); }

TEST(ResolveTest, UnknownHeadMapsToItself) {
  ImportTable t = Imports("import pandas as pd\n");
  EXPECT_EQ(t.Resolve("pd.read_csv"), "pandas.read_csv");
  EXPECT_EQ(t.Resolve("foo.bar"), "foo.bar");
}

TEST(ClassifyMlFileTest, Examples) {
  EXPECT_TRUE(ClassifyMlFile(Imports("import pandas as pd\n")));
  EXPECT_FALSE(ClassifyMlFile(Imports("import numpy as np\n")));
  EXPECT_FALSE(ClassifyMlFile(ImportTable{}));
  EXPECT_TRUE(ClassifyMlFile(Imports("from theano import tensor\n")));
  EXPECT_TRUE(ClassifyMlFile(Imports("import tensorflow.keras\n")));
}

TEST(ClassifyMlFileTest, MonotoneUnderAddedImports) {
  const char* lines[] = {"import os\n",          "import numpy as np\n",
                         "import torch\n",        "from sklearn import svm\n",
                         "import pandas as pd\n", "from . import x\n"};
  // Every prefix-ordered growth of the import list.
  for (int mask = 0; mask < 64; ++mask) {
    std::string src;
    bool was_ml = false;
    for (int i = 0; i < 6; ++i) {
      if ((mask & (1 << i)) == 0) continue;
      src += lines[i];
      const bool is_ml = ClassifyMlFile(Imports(src));
      EXPECT_FALSE(was_ml && !is_ml) << src;
      was_ml = is_ml;
    }
  }
}

TEST(QualifiedNameTest, ResolvesAttributeChain) {
  SyntaxTree tree = MustParse("import numpy as np\nnp.random.seed(0)\n");
  NodeId fn = testing::FindNode(tree, NodeKind::kAttribute, "np.random.seed");
  ASSERT_NE(fn, kNoNode);
  EXPECT_EQ(QualifiedName(tree, fn, ResolveImports(tree)),
            "numpy.random.seed");
  NodeId call = testing::FindNode(tree, NodeKind::kCall, "np.random.seed(0)");
  EXPECT_EQ(DottedName(tree, call), "");
}

}  // namespace
}  // namespace mlsmells::pysource
