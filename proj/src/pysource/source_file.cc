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

#include "mlsmells/pysource/source_file.h"

#include <vector>

namespace mlsmells::pysource {

std::string NormalizePath(std::string_view path) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (start <= path.size()) {
    size_t slash = path.find('/', start);
    if (slash == std::string_view::npos) slash = path.size();
    std::string_view seg = path.substr(start, slash - start);
    start = slash + 1;
    if (seg.empty() || seg == ".") continue;
    if (seg == "..") {
      if (!out.empty()) out.pop_back();
      continue;
    }
    out.push_back(seg);
  }
  std::string joined;
  for (size_t i = 0; i < out.size(); ++i) {
    if (i > 0) joined.push_back('/');
    joined.append(out[i]);
  }
  return joined;
}

int CountLines(std::string_view content) {
  if (content.empty()) return 0;
  int lines = 0;
  for (char c : content) lines += (c == '\n');
  if (content.back() != '\n') ++lines;
  return lines;
}

int CountLoc(std::string_view content) {
  // String state survives line breaks only for triple-quoted literals; a
  // single-quoted literal is closed (or broken) at the end of its line unless
  // the newline is escaped.
  char quote = 0;
  bool triple = false;
  bool line_has_code = false;
  int loc = 0;
  size_t i = 0;
  const size_t n = content.size();
  auto end_line = [&] {
    if (line_has_code) ++loc;
    line_has_code = false;
  };
  while (i < n) {
    const char c = content[i];
    if (c == '\n') {
      end_line();
      if (quote != 0 && !triple) quote = 0;
      ++i;
      continue;
    }
    if (quote != 0) {
      if (c != ' ' && c != '\t' && c != '\r' && c != '\f') line_has_code = true;
      if (c == '\\' && i + 1 < n) {
        // An escaped newline still ends the physical line.
        if (content[i + 1] == '\n') {
          ++i;
          continue;
        }
        i += 2;
        continue;
      }
      if (c == quote) {
        if (!triple) {
          quote = 0;
        } else if (i + 2 < n && content[i + 1] == quote &&
                   content[i + 2] == quote) {
          quote = 0;
          i += 3;
          continue;
        }
      }
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < n && content[i] != '\n') ++i;
      continue;
    }
    if (c == '"' || c == '\'') {
      line_has_code = true;
      quote = c;
      if (i + 2 < n && content[i + 1] == c && content[i + 2] == c) {
        triple = true;
        i += 3;
      } else {
        triple = false;
        ++i;
      }
      continue;
    }
    if (c != ' ' && c != '\t' && c != '\r' && c != '\f') line_has_code = true;
    ++i;
  }
  end_line();
  return loc;
}

SourceFile MakeSourceFile(std::string_view path, std::string content) {
  SourceFile f;
  f.path = NormalizePath(path);
  f.loc = CountLoc(content);
  f.content = std::move(content);
  return f;
}

}  // namespace mlsmells::pysource
