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

#ifndef MLSMELLS_PYSOURCE_PARSER_H_
#define MLSMELLS_PYSOURCE_PARSER_H_

#include <string_view>

#include "mlsmells/pysource/source_file.h"
#include "mlsmells/pysource/syntax_error.h"
#include "mlsmells/pysource/syntax_tree.h"

namespace mlsmells::pysource {

// Parses Python 3.8+ source (without the 3.10 `match` statement). The result
// is a pure function of the input bytes.
SyntaxResult<SyntaxTree> ParseSource(std::string_view content);

inline SyntaxResult<SyntaxTree> ParseSource(const SourceFile& file) {
  return ParseSource(file.content);
}

}  // namespace mlsmells::pysource

#endif  // MLSMELLS_PYSOURCE_PARSER_H_
