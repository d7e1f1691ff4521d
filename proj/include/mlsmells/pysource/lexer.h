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

#ifndef MLSMELLS_PYSOURCE_LEXER_H_
#define MLSMELLS_PYSOURCE_LEXER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mlsmells/pysource/syntax_error.h"

namespace mlsmells::pysource {

enum class TokenKind : uint8_t {
  kName,
  kNumber,
  kString,
  kOp,
  kNewline,
  kIndent,
  kDedent,
  kEndMarker,
};

// Positions are byte offsets into the source; lines are 1-based and columns
// 0-based byte columns.
struct Token {
  TokenKind kind;
  std::string_view text;
  uint32_t begin = 0;
  uint32_t end = 0;
  int line = 0;
  int col = 0;
  int end_line = 0;
  int end_col = 0;

  bool Is(TokenKind k, std::string_view t) const {
    return kind == k && text == t;
  }
  bool IsOp(std::string_view t) const { return Is(TokenKind::kOp, t); }
  bool IsKeyword(std::string_view t) const { return Is(TokenKind::kName, t); }
};

bool IsKeyword(std::string_view word);

// Tokenizes Python 3 source with the INDENT/DEDENT/NEWLINE structure of the
// reference tokenizer. Comments and blank lines produce no tokens. The
// returned views point into `source`, which must outlive them.
SyntaxResult<std::vector<Token>> Tokenize(std::string_view source);

}  // namespace mlsmells::pysource

#endif  // MLSMELLS_PYSOURCE_LEXER_H_
