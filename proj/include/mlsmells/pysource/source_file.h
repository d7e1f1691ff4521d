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

#ifndef MLSMELLS_PYSOURCE_SOURCE_FILE_H_
#define MLSMELLS_PYSOURCE_SOURCE_FILE_H_

#include <string>
#include <string_view>

namespace mlsmells::pysource {

// A Python file as seen by the analyzers. `path` is repo-relative and
// normalized; `loc` is filled by MakeSourceFile.
struct SourceFile {
  std::string path;
  std::string content;
  int loc = 0;
};

// Collapses "." and ".." segments and duplicate separators. Leading ".."
// segments that cannot be resolved are dropped.
std::string NormalizePath(std::string_view path);

// Number of physical lines that are neither blank nor comment-only.
// Non-blank lines inside multi-line string literals count as code, even when
// they start with `#`.
int CountLoc(std::string_view content);

// Total physical lines; a trailing newline does not start a new line.
int CountLines(std::string_view content);

SourceFile MakeSourceFile(std::string_view path, std::string content);

}  // namespace mlsmells::pysource

#endif  // MLSMELLS_PYSOURCE_SOURCE_FILE_H_
